//! Ranks the five framed techniques by simulated throughput and delay at
//! high load and reports whether TDMA comes first in both.
//!
//!     cargo run --release --example conclusion_ranking [g]

use macbench::analytic::GridRange;
use macbench::sweep::{reproduce_conclusion, SweepSpec};

fn main() -> macbench::Result<()> {
    let g: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.8);
    let spec = SweepSpec { g_grid: GridRange::new(g, g, 1.0)?, ..SweepSpec::default() };
    print!("{}", reproduce_conclusion(&spec)?);
    Ok(())
}
