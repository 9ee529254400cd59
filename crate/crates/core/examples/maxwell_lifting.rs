// Lifts a set of disjoint convex holes, projects the upper envelope to a cell
// partition and reads the tension of its 1-skeleton off the plane gradients.

use membrane_perc::geom::{ConvexPolygon, Point, Rect};
use membrane_perc::lifting::{envelope_subdivision, lifting_feasible, stresses_from_lifting, Tension};
use membrane_perc::stress::{equilibrium_residual, spider_web_lp};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let window = Rect::square(20.0);
    let holes = vec![
        ConvexPolygon::regular(Point::new(5.0, 5.0), 1.5, 5, 0.2),
        ConvexPolygon::regular(Point::new(14.0, 6.0), 1.0, 3, 0.0),
        ConvexPolygon::rect(8.0, 12.0, 11.0, 14.0),
        ConvexPolygon::regular(Point::new(15.5, 15.0), 1.2, 6, 0.4),
        ConvexPolygon::regular(Point::new(4.0, 15.0), 0.8, 4, 0.1),
    ];
    let Tension::Feasible(lifting) = lifting_feasible(&holes)? else {
        return Err("disjoint holes in general position should lift".into());
    };
    println!("lifting found, min margin {:.3}, exact {}", lifting.min_margin, lifting.exact);

    let sub = envelope_subdivision(&lifting, &window)?;
    let cell_area: f64 = sub.cells.iter().map(|(_, c)| c.area()).sum();
    println!("{} cells, total area {cell_area:.6} of {}", sub.cells.len(), window.area());

    let stress = stresses_from_lifting(&lifting, &sub)?;
    let res = equilibrium_residual(&sub.framework, &stress)?;
    println!(
        "{} edges, relative equilibrium residual {:.2e}",
        stress.len(),
        res.relative(&sub.framework, &stress)
    );
    println!("spider web LP: feasible = {}", spider_web_lp(&sub.framework)?.is_feasible());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
