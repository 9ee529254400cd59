// Samples a Poisson scene of random polygons, thins and discretizes it, and
// round-trips it through the scene file format.

use membrane_perc::geom::Rect;
use membrane_perc::scene::{
    discretize, read_scene, sample_poisson_scene, thin_scene, write_scene, RadialLaw, ShapeDistribution, VertexLaw,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let window = Rect::square(20.0);
    let shapes = ShapeDistribution::RandomPolygon {
        vertices: VertexLaw::Uniform { lo: 3, hi: 8 },
        radial: RadialLaw::Uniform { lo: 0.3, hi: 1.2 },
    };
    let scene = sample_poisson_scene(window, 5.0, 0.4, &shapes, 11)?;
    println!("sampled {} holes on {:?}", scene.holes.len(), scene.padded_window());

    let thick = thin_scene(&scene, 0.5);
    println!("{} holes have inscribed radius >= 0.5", thick.holes.len());

    let disks = sample_poisson_scene(window, 5.0, 0.4, &ShapeDistribution::FixedDisk(1.0), 11)?;
    let octagons = discretize(&disks, 8)?;
    assert_eq!(octagons.holes.len(), disks.holes.len());

    let path = std::env::temp_dir().join(format!("membrane-perc-scene-{}.json", std::process::id()));
    write_scene(&scene, &path)?;
    let back = read_scene(&path)?;
    std::fs::remove_file(&path)?;
    assert_eq!(back, scene);
    println!("scene file round trip is exact");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
