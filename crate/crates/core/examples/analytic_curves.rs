//! Closed-form throughput and delay curves for every technique.
//!
//!     cargo run --example analytic_curves

use macbench::analytic::{generate_curve, AnalyticParams, GridRange};
use macbench::{Relation, Technique};

fn main() -> macbench::Result<()> {
    let params = AnalyticParams { retrans_window: 5.0, ..Default::default() };
    let grid = GridRange::new(0.0, 2.0, 0.25)?;
    for t in [Technique::PureAloha, Technique::SlottedAloha, Technique::Csma1p] {
        let curve = generate_curve(t, Relation::ThroughputVsLoad, grid, &params)?;
        let row: Vec<String> = curve.points.iter().map(|p| format!("{:.4}", p.y)).collect();
        println!("{:<14} S(G) = {}", t.name(), row.join(" "));
    }

    // Queueing delay of the collision-free schedules grows without bound as
    // the load term approaches 1; the last grid point is skipped.
    let grid = GridRange::new(0.0, 1.0, 0.2)?;
    for t in [Technique::Tdma, Technique::Fdma] {
        let curve = generate_curve(t, Relation::DelayVsThroughput, grid, &params)?;
        let row: Vec<String> = curve.points.iter().map(|p| format!("{:.2}", p.y)).collect();
        println!("{:<14} D(q) = {}   skipped {:?}", t.name(), row.join(" "), curve.skipped);
    }
    Ok(())
}
