// Defect closure: three squares that coalesce over two generations, then a
// Poisson scene closed until it covers its core window.

use membrane_perc::closure::{closure_run, fixed_point, next_generation, DefectSet};
use membrane_perc::geom::{ConvexPolygon, Rect};
use membrane_perc::scene::{sample_poisson_scene, ShapeDistribution};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // two bars forming an L; their hull then reaches a small square
    let holes = vec![
        ConvexPolygon::rect(0.0, 0.0, 1.0, 3.0),
        ConvexPolygon::rect(0.0, 0.0, 3.0, 1.0),
        ConvexPolygon::rect(1.9, 1.9, 2.4, 2.4),
    ];
    let g0 = DefectSet::from_polygons(holes);
    let g1 = next_generation(&g0);
    let g2 = next_generation(&g1);
    println!("defects per generation: {} {} {}", g0.len(), g1.len(), g2.len());
    let last = fixed_point(g0);
    println!("fixed point at generation {} with {} defect(s)", last.generation, last.len());

    let core = Rect::square(20.0);
    let scene = sample_poisson_scene(core, 5.0, 0.3, &ShapeDistribution::FixedDisk(1.0), 7)?;
    let (report, defects) = closure_run(&scene, 60, &core);
    match report.covering_generation {
        Some(k) => println!("core covered at generation {k} ({} defects left)", defects.len()),
        None => println!("not covered; fixed point {:?}", report.fixed_point_generation),
    }
    print!("{}", report.to_csv(scene.seed, scene.lambda));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
