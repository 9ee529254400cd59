// A small seeded sweep of the covering generation over λ.

use membrane_perc::mc::{aggregates_to_csv, run_sweep, summarize, SweepConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = SweepConfig::closure(vec![0.3, 0.6, 1.0], 15.0, 8, 40, 2024);
    cfg.coupled = true;
    let table = run_sweep(&cfg)?;
    print!("{}", table.to_csv());
    print!("{}", aggregates_to_csv(&summarize(&table)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
