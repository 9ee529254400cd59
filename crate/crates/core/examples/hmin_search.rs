// Minimal tension-supporting enlargement of a hole system: the merge
// heuristic against exhaustive search on a small instance.

use membrane_perc::geom::{ConvexPolygon, Point};
use membrane_perc::lifting::{default_pinwheel, h_min_approx, h_min_oracle, system_area, system_contains};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pinwheel = default_pinwheel();
    let approx = h_min_approx(&pinwheel)?;
    let oracle = h_min_oracle(&pinwheel)?;
    println!(
        "pinwheel: approx {} hole(s) area {:.4}; oracle {} hole(s) area {:.4} after {} candidates",
        approx.len(),
        system_area(&approx),
        oracle.system.len(),
        oracle.area,
        oracle.candidates_checked
    );
    assert!(system_contains(&approx, &oracle.system));

    let separated = vec![
        ConvexPolygon::rect(0.0, 0.0, 1.0, 1.0),
        ConvexPolygon::regular(Point::new(4.0, 0.5), 0.7, 3, 0.3),
    ];
    let same = h_min_approx(&separated)?;
    println!("separated holes are already minimal: {}", same == separated);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
