// Grows a convex set from a unit disk by absorbing the disks it meets, with
// and without the ring, color and angle restrictions.

use membrane_perc::geom::{Point, Rect};
use membrane_perc::growth::{grow_run, ring_event_probability, ColorFilter, GrowthConfig};
use membrane_perc::mc::with_origin_disk;
use membrane_perc::scene::{sample_poisson_scene, ShapeDistribution};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let window = Rect::new(-25.0, 25.0, -25.0, 25.0);
    let base = sample_poisson_scene(window, 3.0, 3.0, &ShapeDistribution::FixedDisk(1.0), 4)?;
    let (scene, origin) = with_origin_disk(&base);
    assert_eq!(scene.hole(origin).map(|h| h.center), Some(Point::ORIGIN));

    for (name, cfg) in [
        ("full", GrowthConfig::full(20)),
        ("ring", GrowthConfig::ring(20)),
        ("restricted", GrowthConfig::restricted(20, ColorFilter::Green)),
    ] {
        let t = grow_run(&scene, origin, &cfg)?;
        let reach = t.last().inradius_about(Point::ORIGIN);
        println!(
            "{name:>10}: {} steps, inradius {reach:.2}, C(k+1) inside G(k) through k=20: {}",
            t.steps.len() - 1,
            t.contains_through(20)
        );
    }
    for k in [1, 5, 20, 100] {
        println!("every ring sector filled at k={k}, λ=3: {:.4}", ring_event_probability(3.0, k));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
