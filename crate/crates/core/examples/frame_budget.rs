//! Per-frame delay budgets and the resulting throughput ranking for a
//! 250 kbit/s radio with 127-byte frames.
//!
//!     cargo run --example frame_budget

use macbench::frame_timing::{frame_delay, rank_techniques, FrameTiming};
use macbench::Technique;

fn main() -> macbench::Result<()> {
    let ft = FrameTiming::default();
    for t in Technique::FRAMED {
        let b = frame_delay(t, &ft)?;
        let parts: Vec<String> = b.components.iter().map(|(n, v)| format!("{n}={:.1}us", v * 1e6)).collect();
        println!("{:<14} {:>8.1}us  {}", t.name(), b.total * 1e6, parts.join(" "));
    }
    println!();
    for (i, r) in rank_techniques(&ft)?.iter().enumerate() {
        println!("{}. {:<14} {:>9.0} bit/s", i + 1, r.technique.name(), r.throughput_bps);
    }

    // Heavy synchronization overhead pushes the slot-based schemes down.
    let heavy = FrameTiming { n_sync_bits: 4000.0, ..ft };
    let order: Vec<&str> = rank_techniques(&heavy)?.iter().map(|r| r.technique.name()).collect();
    println!("\nwith 4000 sync bits: {}", order.join(" > "));
    Ok(())
}
