//! Queueing delay of TDMA and FDMA with ten stations, simulated and closed
//! form.
//!
//!     cargo run --release --example tdma_fdma_delay

use macbench::analytic::{fdma_delay, tdma_delay, AnalyticParams, RateBasis};
use macbench::protocols::{simulate, SimConfig};
use macbench::Technique;

fn main() -> macbench::Result<()> {
    let p = AnalyticParams::default();
    println!("{:>4} {:>9} {:>9} {:>9} {:>9}", "q", "tdma sim", "tdma eq", "fdma sim", "fdma eq");
    for q in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let tdma = simulate(&SimConfig::new(Technique::Tdma, q))?;
        let fdma = simulate(&SimConfig::new(Technique::Fdma, q))?;
        println!(
            "{q:>4} {:>9.2} {:>9.2} {:>9.2} {:>9.2}",
            tdma.mean_delay,
            tdma_delay(q, &p, RateBasis::CycleLength)?,
            fdma.mean_delay,
            fdma_delay(q, &p, RateBasis::CycleLength)?
        );
    }
    Ok(())
}
