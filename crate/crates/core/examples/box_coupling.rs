// Box openness on a small grid and the site percolation it is coupled to.

use membrane_perc::growth::{
    box_coupling_run, centroid_of, cone_occupancy, largest_cluster_points, site_percolation, spans_vertically,
    BoxConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let bcfg = BoxConfig::new(2, 2)?;
    println!("box side {} target radius {}", bcfg.side(), bcfg.k1());
    let grid = box_coupling_run(3.0, &bcfg, 3, 2, 21)?;
    println!(
        "{}/{} boxes open, largest cluster {}, corner violations {}",
        grid.open_count(),
        grid.nx * grid.ny,
        grid.largest_cluster,
        grid.corner_violations
    );
    print!("{}", grid.to_csv());

    let n = 128;
    let sites = site_percolation(n, n, 0.8, 5);
    let cluster = largest_cluster_points(&sites, n, n);
    let cones = cone_occupancy(&cluster, centroid_of(&cluster));
    println!(
        "site percolation p=0.8: spans {}, largest cluster {} sites, cones {:?}",
        spans_vertically(&sites, n, n),
        cluster.len(),
        cones
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
