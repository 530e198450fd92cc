//! A replicated load sweep with confidence intervals and the worst
//! deviation from the closed form.
//!
//!     cargo run --release --example load_sweep

use macbench::analytic::GridRange;
use macbench::sweep::{max_relative_error, run_sweep, Column, SweepSpec};
use macbench::Technique;

fn main() -> macbench::Result<()> {
    let spec = SweepSpec {
        techniques: vec![Technique::PureAloha, Technique::SlottedAloha],
        g_grid: GridRange::new(0.25, 2.0, 0.25)?,
        replications: 5,
        ..SweepSpec::default()
    };
    let table = run_sweep(&spec)?;
    for r in &table.rows {
        println!(
            "{:<14} g={:<5} S={:.4} [{:.4}, {:.4}] closed form {:.4}",
            r.technique.name(),
            r.g,
            r.s_sim_mean,
            r.s_sim_ci95_lo,
            r.s_sim_ci95_hi,
            r.s_analytic.unwrap_or(f64::NAN)
        );
    }
    let (err, at) = max_relative_error(&table, Column::Throughput)?;
    let row = &table.rows[at];
    println!("worst relative throughput error {err:.4} ({} at g={})", row.technique.name(), row.g);
    Ok(())
}
