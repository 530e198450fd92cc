//! Closed-form throughput and delay relations for the five access techniques.
//!
//! All delays are dimensionless multiples of one packet transmission time.
//! Throughputs of the random-access techniques are fractions of channel time
//! carrying successful traffic. The TDMA/FDMA "throughput vs. load" relations
//! are transfer-time-shaped (they grow without bound as the load term
//! approaches 1) and are returned unscaled.
//!
//! Several relations share a template:
//!
//! ```text
//! retransmission delay:  (e^(k·x) - 1)·((K-1)/2 + 2a + 1) + c + a
//! 1-persistent CSMA:     G(1+G+aG(1+G+aG/2))e^(-G(1+2a))
//!                        / (G(1+2a) - (1-e^(-aG)) + (1+aG)e^(-G(1+a)))
//! TDMA:                  L/r + q/(2(1-q))·N·L/r + N·L/(2r)
//! FDMA:                  N·L/r·(1 + q/(2(1-q)))
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::technique::{Relation, Technique};

/// Parameter set shared by the closed-form relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalyticParams {
    /// N
    pub n_nodes: u32,
    /// L, packets per message.
    pub pkt_len: f64,
    /// C, packets per cycle.
    pub cycle_len: f64,
    /// q, in [0, 1).
    pub queue_occ: f64,
    /// a, propagation delay over packet transmission time.
    pub norm_prop_delay: f64,
    /// K, retransmission randomization window in slots.
    pub retrans_window: f64,
}

impl Default for AnalyticParams {
    fn default() -> Self {
        Self {
            n_nodes: 10,
            pkt_len: 1.0,
            cycle_len: 1.0,
            queue_occ: 0.5,
            norm_prop_delay: 0.01,
            retrans_window: 1.0,
        }
    }
}

impl AnalyticParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_nodes < 1 {
            return Err(Error::InvalidParameter("n_nodes must be >= 1".into()));
        }
        check_positive("pkt_len", self.pkt_len)?;
        check_positive("cycle_len", self.cycle_len)?;
        if !(0.0..1.0).contains(&self.queue_occ) {
            return Err(Error::SaturatedQueue(self.queue_occ));
        }
        if !(self.norm_prop_delay >= 0.0 && self.norm_prop_delay.is_finite()) {
            return Err(Error::Domain { what: "norm_prop_delay", value: self.norm_prop_delay });
        }
        if !(self.retrans_window >= 1.0 && self.retrans_window.is_finite()) {
            return Err(Error::Domain { what: "retrans_window", value: self.retrans_window });
        }
        Ok(())
    }

    fn n(&self) -> f64 {
        f64::from(self.n_nodes)
    }

    /// (K-1)/2 + 2a + 1
    fn retrans_factor(&self) -> f64 {
        (self.retrans_window - 1.0) / 2.0 + 2.0 * self.norm_prop_delay + 1.0
    }
}

fn check_positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

/// G: attempts per packet transmission time.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct OfferedLoad(f64);

impl OfferedLoad {
    pub fn new(g: f64) -> Result<Self> {
        if g >= 0.0 && g.is_finite() {
            Ok(Self(g))
        } else {
            Err(Error::Domain { what: "offered load", value: g })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// S: fraction of channel time carrying successful traffic.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct NormalizedThroughput(f64);

impl NormalizedThroughput {
    pub fn new(s: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&s) {
            Ok(Self(s))
        } else {
            Err(Error::Domain { what: "normalized throughput", value: s })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Which rate parameter divides the TDMA/FDMA transfer terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateBasis {
    /// C
    CycleLength,
    /// a
    NormPropDelay,
}

impl RateBasis {
    fn value(self, params: &AnalyticParams) -> Result<f64> {
        let (what, r) = match self {
            RateBasis::CycleLength => ("cycle_len", params.cycle_len),
            RateBasis::NormPropDelay => ("norm_prop_delay", params.norm_prop_delay),
        };
        check_positive(what, r)?;
        Ok(r)
    }
}

/// Pure ALOHA: G·e^(-2G).
pub fn aloha_throughput(g: OfferedLoad) -> NormalizedThroughput {
    NormalizedThroughput(g.0 * (-2.0 * g.0).exp())
}

/// Slotted ALOHA: G·e^(-G).
pub fn slotted_aloha_throughput(g: OfferedLoad) -> NormalizedThroughput {
    NormalizedThroughput(g.0 * (-g.0).exp())
}

fn retransmission_delay(exponent: f64, params: &AnalyticParams, constant: f64) -> f64 {
    exponent.exp_m1() * params.retrans_factor() + constant + params.norm_prop_delay
}

pub fn aloha_delay_vs_throughput(s: NormalizedThroughput, params: &AnalyticParams) -> f64 {
    retransmission_delay(2.0 * s.0, params, 1.0)
}

pub fn aloha_delay_vs_load(g: OfferedLoad, params: &AnalyticParams) -> f64 {
    retransmission_delay(g.0, params, 1.0)
}

/// The extra 0.5 over the pure-ALOHA constant is the mean wait for the next
/// slot boundary.
pub fn saloha_delay_vs_throughput(s: NormalizedThroughput, params: &AnalyticParams) -> f64 {
    retransmission_delay(s.0, params, 1.5)
}

pub fn saloha_delay_vs_load(g: OfferedLoad, params: &AnalyticParams) -> f64 {
    retransmission_delay(g.0, params, 1.5)
}

pub fn csma_delay_vs_throughput(t: NormalizedThroughput, params: &AnalyticParams) -> f64 {
    retransmission_delay(2.0 * t.0, params, 1.0)
}

/// Unslotted 1-persistent CSMA kernel, shared by the throughput relation
/// (second argument `a`) and the as-printed delay relation (second argument `L`).
fn persistent_csma_kernel(g: f64, x: f64) -> f64 {
    if g == 0.0 {
        return 0.0;
    }
    let num = g * (1.0 + g + x * g * (1.0 + g + x * g / 2.0)) * (-g * (1.0 + 2.0 * x)).exp();
    // 1 - e^(-xg) written with exp_m1 to keep precision when x·g is tiny
    let den = g * (1.0 + 2.0 * x) + (-x * g).exp_m1() + (1.0 + x * g) * (-g * (1.0 + x)).exp();
    num / den
}

pub fn csma_throughput(g: OfferedLoad, a: f64) -> Result<NormalizedThroughput> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::Domain { what: "norm_prop_delay", value: a });
    }
    Ok(NormalizedThroughput(persistent_csma_kernel(g.0, a)))
}

/// The CSMA delay-vs-load relation as printed: the throughput kernel with
/// the packet count `L` in place of `a`. Curves built from it carry the
/// `as_printed` flag.
pub fn csma_delay_vs_load(g: OfferedLoad, pkt_len: f64) -> Result<f64> {
    if !(pkt_len >= 0.0 && pkt_len.is_finite()) {
        return Err(Error::Domain { what: "pkt_len", value: pkt_len });
    }
    Ok(persistent_csma_kernel(g.0, pkt_len))
}

/// q/(2(1-q)), finite only on [0, 1).
fn queueing_factor(load_term: f64) -> Result<f64> {
    if load_term.is_nan() || load_term < 0.0 {
        return Err(Error::Domain { what: "load term", value: load_term });
    }
    if load_term >= 1.0 {
        return Err(Error::SaturatedQueue(load_term));
    }
    Ok(load_term / (2.0 * (1.0 - load_term)))
}

/// L/r + q/(2(1-q))·N·L/r + N·L/(2r)
pub fn tdma_delay(load_term: f64, params: &AnalyticParams, rate: RateBasis) -> Result<f64> {
    let r = rate.value(params)?;
    let f = queueing_factor(load_term)?;
    let (n, l) = (params.n(), params.pkt_len);
    Ok(l / r + f * n * l / r + n * l / (2.0 * r))
}

/// The TDMA load relation, read with the same additive structure as the
/// delay relation and G as the load term.
pub fn tdma_throughput_vs_load(g: OfferedLoad, params: &AnalyticParams) -> Result<f64> {
    tdma_delay(g.0, params, RateBasis::CycleLength)
}

/// N·L/r·(1 + q/(2(1-q)))
pub fn fdma_delay(load_term: f64, params: &AnalyticParams, rate: RateBasis) -> Result<f64> {
    let r = rate.value(params)?;
    let f = queueing_factor(load_term)?;
    Ok(params.n() * params.pkt_len / r * (1.0 + f))
}

pub fn fdma_throughput_vs_load(g: OfferedLoad, params: &AnalyticParams) -> Result<f64> {
    fdma_delay(g.0, params, RateBasis::CycleLength)
}

/// Carried load of a collision-free schedule: every offered packet gets
/// through, so throughput equals G·L/C as long as that stays below 1.
pub fn collision_free_throughput(g: OfferedLoad, params: &AnalyticParams) -> Result<NormalizedThroughput> {
    let rho = g.0 * params.pkt_len / params.cycle_len;
    if rho >= 1.0 {
        return Err(Error::SaturatedQueue(rho));
    }
    Ok(NormalizedThroughput(rho))
}

/// Evaluates one relation of one technique at abscissa `x`.
///
/// Returns `(y, as_printed)`; `as_printed` marks the CSMA delay-vs-load
/// relation, whose second kernel argument is dimensionally suspect.
pub fn evaluate(
    technique: Technique,
    relation: Relation,
    x: f64,
    params: &AnalyticParams,
) -> Result<(f64, bool)> {
    use Relation::*;
    use Technique::*;

    let load = || OfferedLoad::new(x);
    let thr = || NormalizedThroughput::new(x);
    let y = match (technique, relation) {
        (PureAloha, ThroughputVsLoad) => aloha_throughput(load()?).get(),
        (PureAloha, DelayVsThroughput) => aloha_delay_vs_throughput(thr()?, params),
        (PureAloha, DelayVsLoad) => aloha_delay_vs_load(load()?, params),
        (SlottedAloha, ThroughputVsLoad) => slotted_aloha_throughput(load()?).get(),
        (SlottedAloha, DelayVsThroughput) => saloha_delay_vs_throughput(thr()?, params),
        (SlottedAloha, DelayVsLoad) => saloha_delay_vs_load(load()?, params),
        (Csma1p | CsmaCa, ThroughputVsLoad) => csma_throughput(load()?, params.norm_prop_delay)?.get(),
        (Csma1p | CsmaCa, DelayVsThroughput) => csma_delay_vs_throughput(thr()?, params),
        (Csma1p | CsmaCa, DelayVsLoad) => return Ok((csma_delay_vs_load(load()?, params.pkt_len)?, true)),
        (Tdma, DelayVsThroughput) => tdma_delay(x, params, RateBasis::CycleLength)?,
        (Tdma, ThroughputVsLoad) => tdma_throughput_vs_load(load()?, params)?,
        (Tdma, DelayVsLoad) => tdma_delay(x, params, RateBasis::NormPropDelay)?,
        (Fdma, DelayVsThroughput) => fdma_delay(x, params, RateBasis::CycleLength)?,
        (Fdma, ThroughputVsLoad) => fdma_throughput_vs_load(load()?, params)?,
        (Fdma, DelayVsLoad) => fdma_delay(x, params, RateBasis::NormPropDelay)?,
    };
    Ok((y, false))
}

/// Inclusive grid `lo, lo+step, ..., <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let r = Self { lo, hi, step };
        r.points()?;
        Ok(r)
    }

    /// Grid values computed as `lo + i·step` so that no error accumulates.
    pub fn points(&self) -> Result<Vec<f64>> {
        let Self { lo, hi, step } = *self;
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
            return Err(Error::EmptyRange { lo, hi, step });
        }
        // the epsilon keeps hi itself when (hi-lo)/step lands a hair below an integer
        let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|i| lo + i as f64 * step).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub technique: Technique,
    pub relation: Relation,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub technique: Technique,
    pub relation: Relation,
    pub points: Vec<CurvePoint>,
    /// Grid values dropped because they fell outside the relation's domain.
    pub skipped: Vec<f64>,
    pub as_printed: bool,
}

pub fn generate_curve(
    technique: Technique,
    relation: Relation,
    range: GridRange,
    params: &AnalyticParams,
) -> Result<Curve> {
    let xs = range.points()?;
    let mut points = Vec::with_capacity(xs.len());
    let mut skipped = Vec::new();
    let mut as_printed = false;
    for x in xs {
        match evaluate(technique, relation, x, params) {
            Ok((y, flag)) if y.is_finite() => {
                as_printed |= flag;
                points.push(CurvePoint { technique, relation, x, y });
            }
            Ok(_) | Err(Error::Domain { .. }) | Err(Error::SaturatedQueue(_)) => skipped.push(x),
            Err(e) => return Err(e),
        }
    }
    Ok(Curve { technique, relation, points, skipped, as_printed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: f64) -> OfferedLoad {
        OfferedLoad::new(x).unwrap()
    }

    fn s(x: f64) -> NormalizedThroughput {
        NormalizedThroughput::new(x).unwrap()
    }

    fn params(k: f64, a: f64) -> AnalyticParams {
        AnalyticParams { retrans_window: k, norm_prop_delay: a, ..Default::default() }
    }

    #[test]
    fn zero_load_constants() {
        let p = params(1.0, 0.0);
        assert_eq!(aloha_throughput(g(0.0)).get(), 0.0);
        assert_eq!(slotted_aloha_throughput(g(0.0)).get(), 0.0);
        assert_eq!(aloha_delay_vs_throughput(s(0.0), &p), 1.0);
        assert_eq!(aloha_delay_vs_load(g(0.0), &p), 1.0);
        assert_eq!(saloha_delay_vs_throughput(s(0.0), &p), 1.5);
        assert_eq!(saloha_delay_vs_load(g(0.0), &p), 1.5);
        assert_eq!(csma_delay_vs_throughput(s(0.0), &p), 1.0);
        assert_eq!(csma_throughput(g(0.0), 0.3).unwrap().get(), 0.0);
        assert_eq!(csma_delay_vs_load(g(0.0), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn csma_delay_vs_load_reduces_to_throughput_kernel() {
        let a0 = csma_throughput(g(1.0), 0.0).unwrap().get();
        assert_eq!(csma_delay_vs_load(g(1.0), 0.0).unwrap(), a0);
    }

    #[test]
    fn tdma_hand_values() {
        let p = AnalyticParams { n_nodes: 1, ..Default::default() };
        assert_eq!(tdma_delay(0.0, &p, RateBasis::CycleLength).unwrap(), 1.5);
        let p = AnalyticParams::default();
        assert_eq!(tdma_delay(0.5, &p, RateBasis::CycleLength).unwrap(), 11.0);
        assert_eq!(tdma_throughput_vs_load(g(0.5), &p).unwrap(), 11.0);
    }

    #[test]
    fn saturated_queue_is_rejected() {
        let p = AnalyticParams::default();
        assert_eq!(tdma_delay(1.0, &p, RateBasis::CycleLength), Err(Error::SaturatedQueue(1.0)));
        assert!(matches!(fdma_delay(1.5, &p, RateBasis::CycleLength), Err(Error::SaturatedQueue(_))));
        assert!(tdma_throughput_vs_load(g(1.0), &p).is_err());
    }

    #[test]
    fn zero_rate_is_rejected() {
        let p = params(1.0, 0.0);
        assert!(tdma_delay(0.1, &p, RateBasis::NormPropDelay).is_err());
    }

    #[test]
    fn fdma_exceeds_tdma_at_same_parameters() {
        let p = AnalyticParams::default();
        let f = fdma_delay(0.5, &p, RateBasis::CycleLength).unwrap();
        let t = tdma_delay(0.5, &p, RateBasis::CycleLength).unwrap();
        assert_eq!(f, 15.0);
        assert!(f > t);
        assert_eq!(f - t, 10.0 - 1.0 - 5.0);
    }

    #[test]
    fn params_validation() {
        assert!(AnalyticParams::default().validate().is_ok());
        let bad = AnalyticParams { queue_occ: 1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = AnalyticParams { retrans_window: 0.5, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = AnalyticParams { n_nodes: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(OfferedLoad::new(-0.1).is_err());
        assert!(NormalizedThroughput::new(1.1).is_err());
    }

    #[test]
    fn grid_includes_endpoints() {
        assert_eq!(GridRange::new(0.0, 2.0, 0.5).unwrap().points().unwrap().len(), 5);
        assert_eq!(GridRange::new(0.1, 2.0, 0.1).unwrap().points().unwrap().len(), 20);
        assert_eq!(GridRange::new(1.0, 1.0, 1.0).unwrap().points().unwrap(), vec![1.0]);
        assert!(GridRange::new(1.0, 0.0, 0.1).is_err());
        assert!(GridRange::new(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn curve_skips_out_of_domain_points() {
        let c = generate_curve(
            Technique::Tdma,
            Relation::DelayVsLoad,
            GridRange::new(0.0, 1.0, 0.25).unwrap(),
            &AnalyticParams::default(),
        )
        .unwrap();
        assert_eq!(c.points.len(), 4);
        assert_eq!(c.skipped, vec![1.0]);
        assert!(!c.as_printed);
    }

    #[test]
    fn csma_load_delay_curve_is_flagged() {
        let c = generate_curve(
            Technique::Csma1p,
            Relation::DelayVsLoad,
            GridRange::new(0.0, 1.0, 0.5).unwrap(),
            &AnalyticParams::default(),
        )
        .unwrap();
        assert!(c.as_printed);
    }
}
