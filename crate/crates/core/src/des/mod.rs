//! Discrete-event simulation core.
//!
//! A run is strictly single-threaded: events are processed in `(time, seq)`
//! order from one [`EventQueue`], so `(config, seed)` fully determines the
//! trace. Independent runs can execute in parallel.

pub mod channel;
pub mod queue;
pub mod rng;
pub mod trace;

pub use channel::{Channel, Outcome, Transmission, TxId};
pub use queue::{Event, EventKind, EventQueue, SimTime};
pub use rng::{next_poisson_arrival, RandomStream};
pub use trace::{Trace, TraceRecord};

use crate::error::Result;
use crate::protocols::metrics::{Collector, Metrics, RunStatus};
use crate::protocols::{self, SimConfig};

/// State shared between the event loop and a protocol state machine.
pub struct Kernel<P> {
    pub queue: EventQueue<P>,
    pub trace: Trace,
    pub collector: Collector,
}

impl<P> Kernel<P> {
    pub fn new(collector: Collector, trace: bool) -> Self {
        Self { queue: EventQueue::new(), trace: Trace::new(trace), collector }
    }

    pub fn now(&self) -> f64 {
        self.queue.now()
    }
}

/// A protocol state machine driven by the event loop.
pub trait Process {
    type Payload;

    fn init(&mut self, kernel: &mut Kernel<Self::Payload>) -> Result<()>;

    fn handle(&mut self, event: Event<Self::Payload>, kernel: &mut Kernel<Self::Payload>) -> Result<()>;
}

/// Processes events until the collector's outcome budget is met, the
/// horizon is passed, or the queue drains. Returns the status and the
/// virtual time at which the run ended.
pub fn drive<Pr: Process>(
    process: &mut Pr,
    kernel: &mut Kernel<Pr::Payload>,
    horizon: Option<f64>,
) -> Result<(RunStatus, f64)> {
    if kernel.collector.done() {
        return Ok((RunStatus::Completed, 0.0));
    }
    process.init(kernel)?;
    loop {
        if kernel.collector.done() {
            return Ok((RunStatus::Completed, kernel.now()));
        }
        let Some(next) = kernel.queue.peek_time() else {
            return Ok((RunStatus::Starved, kernel.now()));
        };
        if let Some(h) = horizon {
            if next > h {
                return Ok((RunStatus::HorizonReached, h));
            }
        }
        let event = kernel.queue.pop().expect("peeked");
        process.handle(event, kernel)?;
    }
}

/// Output of [`run`]: final metrics plus the event trace (empty unless
/// requested).
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub metrics: Metrics,
    pub trace: Trace,
}

/// Runs one simulation of `config.technique`, recording every event.
pub fn run(config: &SimConfig) -> Result<RunOutput> {
    protocols::execute(config, true)
}
