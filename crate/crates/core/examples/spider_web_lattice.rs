// Diluted triangular lattices with a pinned boundary: which ones still carry
// an all-positive equilibrium tension, and the Hooke energy of a stretched bond.

use membrane_perc::geom::Point;
use membrane_perc::stress::{hooke_energy, is_spider_web, triangular_lattice, Framework, HookeNetwork};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    for p in [0.5, 0.7, 0.85, 1.0] {
        let webs = (0..20u64)
            .map(|s| Ok(is_spider_web(&triangular_lattice(n, p, s)?)?))
            .collect::<Result<Vec<bool>, Box<dyn std::error::Error>>>()?;
        println!("p = {p}: {}/20 lattices support tension", webs.iter().filter(|&&w| w).count());
    }

    let bond = Framework::new(vec![Point::ORIGIN, Point::new(1.0, 0.0)], vec![(0, 1)], &[0])?;
    let net = HookeNetwork::new(bond, vec![1.0], vec![1.0], vec![true])?;
    let e = hooke_energy(&net, &[Point::ORIGIN, Point::new(2.0, 0.0)])?;
    println!("one bond stretched from 1 to 2: energy {e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
