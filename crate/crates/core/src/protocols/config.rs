use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::technique::Technique;

/// Delay before a collided packet re-enters channel access.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RetransmitDelay {
    /// Uniform on (0, K].
    Uniform,
    /// Exponential with mean K/2.
    Exponential,
}

/// Default retransmission window for the random-access simulators, in
/// packet times. Wide enough that rescheduled attempts are close to
/// independent of the collision that caused them.
pub const DEFAULT_RETRANS_WINDOW: f64 = 100.0;

/// Number of stations used by TDMA/FDMA when none is configured.
pub const DEFAULT_SCHEDULED_STATIONS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub technique: Technique,
    /// G. For the random-access techniques, the total attempt rate (new plus
    /// retransmitted) per packet time; for TDMA/FDMA, the total new-packet
    /// rate shared evenly by the stations.
    #[serde(alias = "offered_load")]
    pub offered_load_g: f64,
    #[serde(alias = "norm_prop_delay")]
    pub norm_prop_delay_a: f64,
    /// `None`: infinite population for the random-access techniques and
    /// [`DEFAULT_SCHEDULED_STATIONS`] for TDMA/FDMA. `Some(n)`: `n` stations
    /// with their own FIFO queues, whatever the technique.
    pub n_stations: Option<u32>,
    #[serde(alias = "retrans_window")]
    pub retrans_window_k: f64,
    pub retransmit_delay: RetransmitDelay,
    pub rts_cts_enabled: bool,
    pub backoff_window_slots: u32,
    /// Length of one CSMA/CA backoff slot, packet times.
    pub backoff_slot_time: f64,
    pub rts_time: f64,
    pub cts_time: f64,
    pub ack_time: f64,
    /// L: packet length in cycle units.
    pub pkt_len: f64,
    /// C: cycles per packet time. A packet occupies the full channel for L/C.
    pub cycle_len: f64,
    /// Stop after this many transmission outcomes (successes plus collisions).
    pub stop_packets: u64,
    /// Optional hard stop on virtual time.
    pub horizon: Option<f64>,
    pub seed: u64,
    pub warmup_fraction: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            technique: Technique::PureAloha,
            offered_load_g: 0.5,
            norm_prop_delay_a: 0.01,
            n_stations: None,
            retrans_window_k: DEFAULT_RETRANS_WINDOW,
            retransmit_delay: RetransmitDelay::Uniform,
            rts_cts_enabled: true,
            backoff_window_slots: 16,
            backoff_slot_time: 0.1,
            rts_time: 0.05,
            cts_time: 0.05,
            ack_time: 0.0,
            pkt_len: 1.0,
            cycle_len: 1.0,
            stop_packets: 100_000,
            horizon: None,
            seed: 42,
            warmup_fraction: 0.1,
        }
    }
}

impl SimConfig {
    pub fn new(technique: Technique, offered_load_g: f64) -> Self {
        Self { technique, offered_load_g, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |what: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain { what, value: v })
            }
        };
        positive("offered_load_g", self.offered_load_g)?;
        positive("retrans_window_k", self.retrans_window_k)?;
        positive("pkt_len", self.pkt_len)?;
        positive("cycle_len", self.cycle_len)?;
        if !(self.norm_prop_delay_a >= 0.0 && self.norm_prop_delay_a.is_finite()) {
            return Err(Error::Domain { what: "norm_prop_delay_a", value: self.norm_prop_delay_a });
        }
        if self.n_stations == Some(0) {
            return Err(Error::InvalidParameter("n_stations must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.warmup_fraction) {
            return Err(Error::Domain { what: "warmup_fraction", value: self.warmup_fraction });
        }
        if let Some(h) = self.horizon {
            if h.is_nan() || h < 0.0 {
                return Err(Error::Domain { what: "horizon", value: h });
            }
        }
        if self.technique == Technique::CsmaCa {
            if self.backoff_window_slots < 1 {
                return Err(Error::InvalidParameter("backoff_window_slots must be >= 1".into()));
            }
            positive("backoff_slot_time", self.backoff_slot_time)?;
            if self.rts_cts_enabled {
                positive("rts_time", self.rts_time)?;
            }
            for (what, v) in [("cts_time", self.cts_time), ("ack_time", self.ack_time)] {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(Error::Domain { what, value: v });
                }
            }
        }
        Ok(())
    }

    /// Non-fatal configuration concerns.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.stop_packets < 1_000 {
            w.push(format!(
                "stop_packets = {} is below 1000; statistics will be noisy",
                self.stop_packets
            ));
        }
        w
    }

    /// Airtime of one data packet, packet times.
    pub fn data_time(&self) -> f64 {
        self.pkt_len / self.cycle_len
    }

    pub fn stations(&self) -> Option<u32> {
        match (self.technique.is_scheduled(), self.n_stations) {
            (_, Some(n)) => Some(n),
            (true, None) => Some(DEFAULT_SCHEDULED_STATIONS),
            (false, None) => None,
        }
    }

    pub fn warmup_outcomes(&self) -> u64 {
        (self.warmup_fraction * self.stop_packets as f64).floor() as u64
    }
}
