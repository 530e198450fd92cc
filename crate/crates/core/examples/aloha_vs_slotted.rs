//! Simulated pure and slotted ALOHA against their closed forms.
//!
//!     cargo run --release --example aloha_vs_slotted

use macbench::analytic::{aloha_throughput, slotted_aloha_throughput, OfferedLoad};
use macbench::protocols::{simulate, SimConfig};
use macbench::Technique;

fn main() -> macbench::Result<()> {
    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "G", "pure sim", "pure eq", "slot sim", "slot eq");
    for g in [0.1, 0.25, 0.5, 1.0, 1.5, 2.0] {
        let load = OfferedLoad::new(g)?;
        let pure = simulate(&SimConfig::new(Technique::PureAloha, g))?;
        let slotted = simulate(&SimConfig::new(Technique::SlottedAloha, g))?;
        println!(
            "{g:>5} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            pure.throughput_s,
            aloha_throughput(load).get(),
            slotted.throughput_s,
            slotted_aloha_throughput(load).get()
        );
    }
    Ok(())
}
