//! Protocol state machines for the six access techniques, all driven by the
//! shared event loop in [`crate::des`].

pub mod config;
pub mod contention;
pub mod metrics;
pub mod scheduled;

pub use config::{RetransmitDelay, SimConfig};
pub use metrics::{Metrics, RunStatus};

use crate::des::{drive, Kernel, RunOutput};
use crate::error::Result;
use crate::technique::Technique;

use contention::ContentionSim;
use metrics::Collector;
use scheduled::ScheduledSim;

/// Validates `config` and runs it to completion. The trace is recorded only
/// when `trace` is set.
pub fn execute(config: &SimConfig, trace: bool) -> Result<RunOutput> {
    config.validate()?;
    let collector = Collector::new(config.stop_packets, config.warmup_outcomes());
    let (status, end, kernel_trace, collector) = if config.technique.is_scheduled() {
        let mut sim = ScheduledSim::new(config)?;
        let mut k = Kernel::new(collector, trace);
        let (status, end) = drive(&mut sim, &mut k, config.horizon)?;
        (status, end, k.trace, k.collector)
    } else {
        let mut sim = ContentionSim::new(config);
        let mut k = Kernel::new(collector, trace);
        let (status, end) = drive(&mut sim, &mut k, config.horizon)?;
        (status, end, k.trace, k.collector)
    };
    let metrics = collector.finish(config.technique, config.offered_load_g, config.seed, status, end);
    Ok(RunOutput { metrics, trace: kernel_trace })
}

/// Runs `config` without recording a trace.
pub fn simulate(config: &SimConfig) -> Result<Metrics> {
    execute(config, false).map(|o| o.metrics)
}

fn simulate_as(technique: Technique, config: &SimConfig) -> Result<Metrics> {
    simulate(&SimConfig { technique, ..config.clone() })
}

pub fn simulate_pure_aloha(config: &SimConfig) -> Result<Metrics> {
    simulate_as(Technique::PureAloha, config)
}

pub fn simulate_slotted_aloha(config: &SimConfig) -> Result<Metrics> {
    simulate_as(Technique::SlottedAloha, config)
}

pub fn simulate_csma_1p(config: &SimConfig) -> Result<Metrics> {
    simulate_as(Technique::Csma1p, config)
}

pub fn simulate_csma_ca(config: &SimConfig) -> Result<Metrics> {
    simulate_as(Technique::CsmaCa, config)
}

pub fn simulate_tdma(config: &SimConfig) -> Result<Metrics> {
    simulate_as(Technique::Tdma, config)
}

pub fn simulate_fdma(config: &SimConfig) -> Result<Metrics> {
    simulate_as(Technique::Fdma, config)
}
