//! Frame-level delay decompositions and the bytes-over-delay throughput rule.
//!
//! Each technique's per-frame delay is a sum of named components (seconds).
//! Bit counts are converted with the communication data rate `f_c`; the
//! remaining components are supplied directly.
//!
//! Turnaround time defaults to `T_data + T_ack` for every technique that uses
//! it; set `turnaround_time_override` for a fixed hardware constant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::technique::Technique;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FrameTiming {
    /// f_c, bits/second.
    pub data_rate: f64,
    pub n_overhead_bits: f64,
    pub n_ack_bits: f64,
    pub n_sync_bits: f64,
    pub n_data_bits: f64,
    pub guard_time: f64,
    pub turnaround_time_override: Option<f64>,
    pub ifs_override: Option<f64>,
    pub backoff_slots: f64,
    pub backoff_slot_time: f64,
    pub rts_time: f64,
    pub cts_time: f64,
    pub idle_time: f64,
    pub slot_boundary_wait: f64,
    pub queue_time: f64,
    /// x, bytes carried per frame.
    pub payload_bytes: f64,
}

impl Default for FrameTiming {
    /// A low-rate body-area radio: 250 kbit/s, 127-byte frames.
    fn default() -> Self {
        Self {
            data_rate: 250_000.0,
            n_overhead_bits: 56.0,
            n_ack_bits: 88.0,
            n_sync_bits: 40.0,
            n_data_bits: 127.0 * 8.0,
            guard_time: 5e-5,
            turnaround_time_override: None,
            ifs_override: None,
            backoff_slots: 8.0,
            backoff_slot_time: 3.2e-4,
            rts_time: 2.8e-4,
            cts_time: 2.8e-4,
            idle_time: 1e-4,
            slot_boundary_wait: 2e-4,
            queue_time: 5e-3,
            payload_bytes: 127.0,
        }
    }
}

impl FrameTiming {
    /// Every field zero except the rate and payload, which must be positive.
    pub fn zeroed(data_rate: f64, payload_bytes: f64) -> Self {
        Self {
            data_rate,
            n_overhead_bits: 0.0,
            n_ack_bits: 0.0,
            n_sync_bits: 0.0,
            n_data_bits: 0.0,
            guard_time: 0.0,
            turnaround_time_override: None,
            ifs_override: None,
            backoff_slots: 0.0,
            backoff_slot_time: 0.0,
            rts_time: 0.0,
            cts_time: 0.0,
            idle_time: 0.0,
            slot_boundary_wait: 0.0,
            queue_time: 0.0,
            payload_bytes,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.data_rate > 0.0 && self.data_rate.is_finite()) {
            return Err(Error::Domain { what: "data_rate", value: self.data_rate });
        }
        if !(self.payload_bytes > 0.0 && self.payload_bytes.is_finite()) {
            return Err(Error::Domain { what: "payload_bytes", value: self.payload_bytes });
        }
        let non_negative = [
            ("n_overhead_bits", self.n_overhead_bits),
            ("n_ack_bits", self.n_ack_bits),
            ("n_sync_bits", self.n_sync_bits),
            ("n_data_bits", self.n_data_bits),
            ("guard_time", self.guard_time),
            ("turnaround_time_override", self.turnaround_time_override.unwrap_or(0.0)),
            ("ifs_override", self.ifs_override.unwrap_or(0.0)),
            ("backoff_slots", self.backoff_slots),
            ("backoff_slot_time", self.backoff_slot_time),
            ("rts_time", self.rts_time),
            ("cts_time", self.cts_time),
            ("idle_time", self.idle_time),
            ("slot_boundary_wait", self.slot_boundary_wait),
            ("queue_time", self.queue_time),
        ];
        for (what, value) in non_negative {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::Domain { what, value });
            }
        }
        Ok(())
    }

    fn bits(&self, n: f64) -> f64 {
        n / self.data_rate
    }

    pub fn t_data(&self) -> f64 {
        self.bits(self.n_data_bits)
    }

    pub fn t_ack(&self) -> f64 {
        self.bits(self.n_ack_bits)
    }

    pub fn t_overhead(&self) -> f64 {
        self.bits(self.n_overhead_bits)
    }

    pub fn t_sync(&self) -> f64 {
        self.bits(self.n_sync_bits)
    }

    pub fn t_turnaround(&self) -> f64 {
        self.turnaround_time_override.unwrap_or_else(|| self.t_data() + self.t_ack())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelayBreakdown {
    pub technique: Technique,
    /// Component name and duration in seconds, in summation order.
    pub components: Vec<(&'static str, f64)>,
    pub total: f64,
}

impl DelayBreakdown {
    fn new(technique: Technique, components: Vec<(&'static str, f64)>) -> Self {
        let total = components.iter().map(|(_, v)| v).sum();
        Self { technique, components, total }
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

/// `T_bo + T_data + T_ta + T_ack + T_ifs + T_rts + T_cts`.
///
/// Without an acknowledgement (`n_ack_bits == 0`) both `T_ta` and `T_ack`
/// are zero, which leaves `T_ifs = T_data`.
pub fn csmaca_frame_delay(ft: &FrameTiming) -> Result<DelayBreakdown> {
    ft.validate()?;
    let t_data = ft.t_data();
    let (t_ack, t_ta) = if ft.n_ack_bits == 0.0 { (0.0, 0.0) } else { (ft.t_ack(), ft.t_turnaround()) };
    let t_ifs = match ft.ifs_override {
        Some(ifs) => ifs,
        None if t_data < t_ack => return Err(Error::NegativeInterFrameSpace { t_data, t_ack }),
        None => t_data - t_ack,
    };
    Ok(DelayBreakdown::new(
        Technique::CsmaCa,
        vec![
            ("T_bo", ft.backoff_slots * ft.backoff_slot_time),
            ("T_data", t_data),
            ("T_ta", t_ta),
            ("T_ack", t_ack),
            ("T_ifs", t_ifs),
            ("T_rts", ft.rts_time),
            ("T_cts", ft.cts_time),
        ],
    ))
}

/// `T_oh + T_ack + T_g + T_sync + T_ta`.
pub fn tdma_frame_delay(ft: &FrameTiming) -> Result<DelayBreakdown> {
    ft.validate()?;
    Ok(DelayBreakdown::new(
        Technique::Tdma,
        vec![
            ("T_oh", ft.t_overhead()),
            ("T_ack", ft.t_ack()),
            ("T_g", ft.guard_time),
            ("T_sync", ft.t_sync()),
            ("T_ta", ft.t_turnaround()),
        ],
    ))
}

/// `T_oh + T_ack + T_g + T_ta + T_data`.
pub fn fdma_frame_delay(ft: &FrameTiming) -> Result<DelayBreakdown> {
    ft.validate()?;
    Ok(DelayBreakdown::new(
        Technique::Fdma,
        vec![
            ("T_oh", ft.t_overhead()),
            ("T_ack", ft.t_ack()),
            ("T_g", ft.guard_time),
            ("T_ta", ft.t_turnaround()),
            ("T_data", ft.t_data()),
        ],
    ))
}

/// `T_data + T_que`. Retransmission delay is not part of this decomposition.
pub fn aloha_frame_delay(ft: &FrameTiming) -> Result<DelayBreakdown> {
    ft.validate()?;
    Ok(DelayBreakdown::new(Technique::PureAloha, vec![("T_data", ft.t_data()), ("T_que", ft.queue_time)]))
}

/// `T_ack + T_sync + T_ta + T_idle + T_bon`.
pub fn saloha_frame_delay(ft: &FrameTiming) -> Result<DelayBreakdown> {
    ft.validate()?;
    Ok(DelayBreakdown::new(
        Technique::SlottedAloha,
        vec![
            ("T_ack", ft.t_ack()),
            ("T_sync", ft.t_sync()),
            ("T_ta", ft.t_turnaround()),
            ("T_idle", ft.idle_time),
            ("T_bon", ft.slot_boundary_wait),
        ],
    ))
}

pub fn frame_delay(technique: Technique, ft: &FrameTiming) -> Result<DelayBreakdown> {
    match technique {
        Technique::CsmaCa | Technique::Csma1p => csmaca_frame_delay(ft),
        Technique::Tdma => tdma_frame_delay(ft),
        Technique::Fdma => fdma_frame_delay(ft),
        Technique::PureAloha => aloha_frame_delay(ft),
        Technique::SlottedAloha => saloha_frame_delay(ft),
    }
}

/// `8·x / D` in bits/second, with `x` in bytes and `D` in seconds.
pub fn throughput_from_delay(payload_bytes: f64, total_delay: f64) -> Result<f64> {
    if !(payload_bytes > 0.0 && payload_bytes.is_finite()) {
        return Err(Error::Domain { what: "payload_bytes", value: payload_bytes });
    }
    if total_delay == 0.0 {
        return Err(Error::ZeroDelay);
    }
    if !(total_delay > 0.0 && total_delay.is_finite()) {
        return Err(Error::Domain { what: "total_delay", value: total_delay });
    }
    Ok(8.0 * payload_bytes / total_delay)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedTechnique {
    pub technique: Technique,
    pub total_delay: f64,
    pub throughput_bps: f64,
}

/// All five decompositions on the same frame, highest throughput first.
/// Ties are broken alphabetically by technique name.
pub fn rank_techniques(ft: &FrameTiming) -> Result<Vec<RankedTechnique>> {
    let mut ranked = Technique::FRAMED
        .iter()
        .map(|&technique| {
            let total_delay = frame_delay(technique, ft)?.total;
            let throughput_bps = throughput_from_delay(ft.payload_bytes, total_delay)?;
            Ok(RankedTechnique { technique, total_delay, throughput_bps })
        })
        .collect::<Result<Vec<_>>>()?;
    // FRAMED is alphabetical and the sort is stable
    ranked.sort_by(|a, b| b.throughput_bps.total_cmp(&a.throughput_bps));
    Ok(ranked)
}
