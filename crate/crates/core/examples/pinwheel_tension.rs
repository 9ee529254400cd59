// Three pairwise separable triangles arranged as a pinwheel cannot be lifted
// to a convex surface; their hull can.

use membrane_perc::geom::hull_of_polygons;
use membrane_perc::lifting::{default_pinwheel, lifting_feasible, verify_certificate_exact, Tension};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let blades = default_pinwheel();
    match lifting_feasible(&blades)? {
        Tension::Infeasible(cert) => {
            println!(
                "pinwheel: INFEASIBLE, support {:?}, {} multipliers, exact {}",
                cert.support,
                cert.multipliers.len(),
                cert.is_exact()
            );
            assert!(verify_certificate_exact(&blades, &cert));
        }
        Tension::Feasible(_) => return Err("the pinwheel should not support tension".into()),
    }

    let merged = vec![hull_of_polygons(&blades)];
    let verdict = lifting_feasible(&merged)?;
    println!("merged hull: {}", if verdict.is_feasible() { "FEASIBLE" } else { "INFEASIBLE" });
    assert!(verdict.is_feasible());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
