//! 1-persistent CSMA against its closed form, and what the RTS/CTS
//! handshake buys CSMA/CA.
//!
//!     cargo run --release --example csma_rts_cts

use macbench::analytic::{csma_throughput, OfferedLoad};
use macbench::protocols::{simulate, SimConfig};
use macbench::Technique;

fn main() -> macbench::Result<()> {
    let a = 0.01;
    for g in [0.5, 1.0, 2.0, 5.0] {
        let sim = simulate(&SimConfig { norm_prop_delay_a: a, ..SimConfig::new(Technique::Csma1p, g) })?;
        let eq = csma_throughput(OfferedLoad::new(g)?, a)?.get();
        println!("csma-1p G={g:<4} S sim {:.4}  closed form {eq:.4}", sim.throughput_s);
    }

    println!();
    for rts in [false, true] {
        let c = SimConfig { rts_cts_enabled: rts, ..SimConfig::new(Technique::CsmaCa, 1.0) };
        let m = simulate(&c)?;
        println!(
            "csma-ca rts={rts:<5} S={:.4} delay={:.2} collisions={} (rts {}) collided time {:.2}%",
            m.throughput_s,
            m.mean_delay,
            m.collided,
            m.rts_collided,
            100.0 * m.collided_time_fraction()
        );
    }
    Ok(())
}
