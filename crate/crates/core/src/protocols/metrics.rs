use serde::Serialize;

use crate::technique::Technique;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Batches used for the within-run delay confidence interval.
const DELAY_BATCHES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    /// The outcome budget was reached.
    Completed,
    HorizonReached,
    /// The event queue drained before the stop rule fired.
    Starved,
}

/// Measured results of one simulation run. Rates and delays are in packet
/// times and cover only the post-warm-up window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub technique: Technique,
    pub offered_load_g: f64,
    pub seed: u64,
    pub status: RunStatus,
    /// Transmissions started (RTS frames for CSMA/CA with RTS/CTS).
    pub attempted: u64,
    pub succeeded: u64,
    pub collided: u64,
    /// Subset of `collided` that were RTS frames.
    pub rts_collided: u64,
    /// Total airtime of collided frames over the whole run.
    pub collided_airtime: f64,
    pub sim_duration: f64,
    pub measured_duration: f64,
    /// Successful payload airtime over measured time.
    pub throughput_s: f64,
    /// Channel-access attempts (new plus retransmitted) per packet time.
    pub attempt_rate: f64,
    pub mean_delay: f64,
    pub delay_stddev: f64,
    /// 95% interval on the mean delay, from batch means.
    pub delay_ci95: (f64, f64),
    pub delay_samples: u64,
}

impl Metrics {
    /// Started but not yet resolved when the run stopped.
    pub fn in_flight(&self) -> u64 {
        self.attempted - self.succeeded - self.collided
    }

    pub fn delivery_ratio(&self) -> f64 {
        if self.attempted == 0 {
            0.0
        } else {
            self.succeeded as f64 / self.attempted as f64
        }
    }

    /// Fraction of the run spent on collided frames.
    pub fn collided_time_fraction(&self) -> f64 {
        if self.sim_duration > 0.0 {
            self.collided_airtime / self.sim_duration
        } else {
            0.0
        }
    }
}

/// Running counters shared by every simulator. The first
/// `warmup_outcomes` outcomes are excluded from rate and delay statistics.
#[derive(Debug, Clone)]
pub struct Collector {
    stop_packets: u64,
    warmup_outcomes: u64,
    outcomes: u64,
    attempted: u64,
    succeeded: u64,
    collided: u64,
    rts_collided: u64,
    collided_airtime: f64,
    measure_start: Option<f64>,
    post_access: u64,
    post_payload_time: f64,
    delays: Vec<f64>,
}

impl Collector {
    pub fn new(stop_packets: u64, warmup_outcomes: u64) -> Self {
        Self {
            stop_packets,
            warmup_outcomes,
            outcomes: 0,
            attempted: 0,
            succeeded: 0,
            collided: 0,
            rts_collided: 0,
            collided_airtime: 0.0,
            measure_start: (warmup_outcomes == 0).then_some(0.0),
            post_access: 0,
            post_payload_time: 0.0,
            delays: Vec::new(),
        }
    }

    pub fn done(&self) -> bool {
        self.outcomes >= self.stop_packets
    }

    pub fn measuring(&self) -> bool {
        self.measure_start.is_some()
    }

    /// A packet (new or retransmitted) entered channel access.
    pub fn record_access(&mut self) {
        if self.measuring() {
            self.post_access += 1;
        }
    }

    pub fn record_attempt(&mut self) {
        self.attempted += 1;
    }

    pub fn record_success(&mut self, now: f64, arrival: f64, payload_time: f64) {
        self.succeeded += 1;
        if self.measuring() {
            self.post_payload_time += payload_time;
            self.delays.push(now - arrival);
        }
        self.outcome(now);
    }

    pub fn record_collision(&mut self, now: f64, airtime: f64, rts: bool) {
        self.collided += 1;
        self.collided_airtime += airtime;
        if rts {
            self.rts_collided += 1;
        }
        self.outcome(now);
    }

    fn outcome(&mut self, now: f64) {
        self.outcomes += 1;
        if self.outcomes == self.warmup_outcomes {
            self.measure_start = Some(now);
        }
    }

    pub fn finish(self, technique: Technique, offered_load_g: f64, seed: u64, status: RunStatus, end: f64) -> Metrics {
        let measured_duration = self.measure_start.map_or(0.0, |s| (end - s).max(0.0));
        let per_time = |x: f64| if measured_duration > 0.0 { x / measured_duration } else { 0.0 };
        let (mean_delay, delay_stddev) = mean_std(&self.delays);
        Metrics {
            technique,
            offered_load_g,
            seed,
            status,
            attempted: self.attempted,
            succeeded: self.succeeded,
            collided: self.collided,
            rts_collided: self.rts_collided,
            collided_airtime: self.collided_airtime,
            sim_duration: end,
            measured_duration,
            throughput_s: per_time(self.post_payload_time),
            attempt_rate: per_time(self.post_access as f64),
            mean_delay,
            delay_stddev,
            delay_ci95: batch_means_ci(&self.delays),
            delay_samples: self.delays.len() as u64,
        }
    }
}

/// Sample mean and standard deviation (n-1 denominator). Zeros when empty.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Normal-approximation 95% interval `mean ± z·sd/sqrt(n)`; degenerate for n <= 1.
pub fn normal_ci95(xs: &[f64]) -> (f64, f64) {
    let (mean, sd) = mean_std(xs);
    let half = if xs.len() > 1 { Z95 * sd / (xs.len() as f64).sqrt() } else { 0.0 };
    (mean - half, mean + half)
}

/// Delays within a run are autocorrelated, so the interval is built from
/// the means of contiguous batches rather than from individual samples.
fn batch_means_ci(delays: &[f64]) -> (f64, f64) {
    if delays.len() < 2 * DELAY_BATCHES {
        return normal_ci95(delays);
    }
    let size = delays.len() / DELAY_BATCHES;
    let means: Vec<f64> = delays
        .chunks(size)
        .take(DELAY_BATCHES)
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect();
    let (_, sd) = mean_std(&means);
    let (mean, _) = mean_std(delays);
    let half = Z95 * sd / (DELAY_BATCHES as f64).sqrt();
    (mean - half, mean + half)
}
