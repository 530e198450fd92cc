//! Offered-load sweeps: replicated simulations joined with closed-form
//! predictions.

use std::fmt;

use rayon::prelude::*;

use crate::analytic::{self, AnalyticParams, GridRange, OfferedLoad, RateBasis};
use crate::des::rng::mix64;
use crate::error::{Error, Result};
use crate::protocols::metrics::{mean_std, normal_ci95};
use crate::protocols::{simulate, Metrics, SimConfig};
use crate::technique::Technique;

/// Floor on `|analytic|` in [`max_relative_error`], so rows whose analytic
/// value is zero are compared absolutely.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-3;

const REP_BITS: u32 = 24;
const GRID_BITS: u32 = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub techniques: Vec<Technique>,
    pub g_grid: GridRange,
    pub replications: u32,
    pub base_seed: u64,
    /// Only `n_nodes` and `queue_occ` are independent of the simulation;
    /// the rest is synchronized from `sim` by [`SweepSpec::column_params`].
    pub analytic_params: AnalyticParams,
    /// Base simulation settings. `technique`, `offered_load_g` and `seed`
    /// are overwritten per run.
    pub sim: SimConfig,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            techniques: Technique::FRAMED.to_vec(),
            g_grid: GridRange { lo: 0.1, hi: 0.8, step: 0.1 },
            replications: 5,
            base_seed: 42,
            analytic_params: AnalyticParams::default(),
            sim: SimConfig::default(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.techniques.is_empty() {
            return Err(Error::InvalidParameter("sweep needs at least one technique".into()));
        }
        if self.replications < 1 || self.replications >= 1 << REP_BITS {
            return Err(Error::InvalidParameter(format!(
                "replications must lie in [1, {}), got {}",
                1u64 << REP_BITS,
                self.replications
            )));
        }
        let n = self.g_grid.points()?.len() as u64;
        if n >= 1 << GRID_BITS {
            return Err(Error::InvalidParameter(format!("grid of {n} points is too large")));
        }
        for &t in &self.techniques {
            SimConfig { technique: t, ..self.sim.clone() }.validate()?;
        }
        self.column_params().validate()
    }

    /// Analytic parameters matching the simulated system: `a`, `K`, `L`, `C`
    /// and (for TDMA/FDMA) `N` come from the simulation settings.
    pub fn column_params(&self) -> AnalyticParams {
        AnalyticParams {
            n_nodes: self.sim.n_stations.unwrap_or(crate::protocols::config::DEFAULT_SCHEDULED_STATIONS),
            pkt_len: self.sim.pkt_len,
            cycle_len: self.sim.cycle_len,
            norm_prop_delay: self.sim.norm_prop_delay_a,
            retrans_window: self.sim.retrans_window_k,
            ..self.analytic_params
        }
    }

    /// Techniques in row order: by name, duplicates removed.
    pub fn ordered_techniques(&self) -> Vec<Technique> {
        let mut ts = self.techniques.clone();
        ts.sort_by_key(|t| t.name());
        ts.dedup();
        ts
    }
}

/// Seed for one replication: `base_seed` combined with the technique, the
/// grid index and the replication index. The three indices are packed into
/// disjoint bit fields and passed through SplitMix64 twice, so distinct
/// index triples always give distinct seeds for a fixed base.
pub fn derive_seed(base_seed: u64, technique: Technique, g_index: u64, replication: u64) -> u64 {
    debug_assert!(g_index < 1 << GRID_BITS && replication < 1 << REP_BITS);
    let key = (technique.index() << (GRID_BITS + REP_BITS)) | (g_index << REP_BITS) | replication;
    mix64(base_seed ^ mix64(key))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub technique: Technique,
    pub g: f64,
    /// `None` where the closed form is outside its domain (saturated queue).
    pub s_analytic: Option<f64>,
    pub s_sim_mean: f64,
    pub s_sim_ci95_lo: f64,
    pub s_sim_ci95_hi: f64,
    pub d_analytic: Option<f64>,
    pub d_sim_mean: f64,
    pub d_sim_ci95_lo: f64,
    pub d_sim_ci95_hi: f64,
    pub n_replications: u32,
    /// Summed over replications.
    pub collided: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// One line per (technique, g) whose simulation failed; those rows are
    /// absent from `rows`.
    pub diagnostics: Vec<String>,
}

impl SweepTable {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
}

/// Closed-form throughput and delay for one grid point.
pub fn analytic_columns(technique: Technique, g: f64, params: &AnalyticParams) -> (Option<f64>, Option<f64>) {
    let Ok(load) = OfferedLoad::new(g) else {
        return (None, None);
    };
    match technique {
        Technique::PureAloha => (
            Some(analytic::aloha_throughput(load).get()),
            Some(analytic::aloha_delay_vs_load(load, params)),
        ),
        Technique::SlottedAloha => (
            Some(analytic::slotted_aloha_throughput(load).get()),
            Some(analytic::saloha_delay_vs_load(load, params)),
        ),
        Technique::Csma1p | Technique::CsmaCa => match analytic::csma_throughput(load, params.norm_prop_delay) {
            Ok(s) => (Some(s.get()), Some(analytic::csma_delay_vs_throughput(s, params))),
            Err(_) => (None, None),
        },
        Technique::Tdma | Technique::Fdma => {
            let Ok(s) = analytic::collision_free_throughput(load, params) else {
                return (None, None);
            };
            let d = if technique == Technique::Tdma {
                analytic::tdma_delay(s.get(), params, RateBasis::CycleLength)
            } else {
                analytic::fdma_delay(s.get(), params, RateBasis::CycleLength)
            };
            (Some(s.get()), d.ok())
        }
    }
}

/// Runs every (technique, g, replication) in parallel and aggregates each
/// row over its replications. Results land in pre-assigned slots, so the
/// table does not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let grid: Vec<(usize, f64)> = spec.g_grid.points()?.into_iter().enumerate().collect();
    run_points(spec, &grid)
}

/// Runs the given `(grid index, g)` points. Seeds depend on the index, so a
/// subset of a grid reproduces the matching rows of the full sweep.
fn run_points(spec: &SweepSpec, grid: &[(usize, f64)]) -> Result<SweepTable> {
    let techniques = spec.ordered_techniques();
    let reps = u64::from(spec.replications);
    let params = spec.column_params();

    let jobs: Vec<(Technique, usize, u64)> = techniques
        .iter()
        .flat_map(|&t| (0..grid.len()).flat_map(move |gi| (0..reps).map(move |r| (t, gi, r))))
        .collect();
    let results: Vec<Result<Metrics>> = jobs
        .par_iter()
        .map(|&(t, gi, r)| {
            let cfg = SimConfig {
                technique: t,
                offered_load_g: grid[gi].1,
                seed: derive_seed(spec.base_seed, t, grid[gi].0 as u64, r),
                ..spec.sim.clone()
            };
            simulate(&cfg)
        })
        .collect();

    let mut table = SweepTable::default();
    for (row_idx, chunk) in results.chunks(reps as usize).enumerate() {
        let (t, gi, _) = jobs[row_idx * reps as usize];
        let g = grid[gi].1;
        let metrics: Result<Vec<&Metrics>> = chunk.iter().map(|r| r.as_ref().map_err(Clone::clone)).collect();
        let metrics = match metrics {
            Ok(m) => m,
            Err(e) => {
                table.diagnostics.push(format!("{t} at g={g}: {e}"));
                continue;
            }
        };
        let s: Vec<f64> = metrics.iter().map(|m| m.throughput_s).collect();
        let d: Vec<f64> = metrics.iter().map(|m| m.mean_delay).collect();
        let (s_lo, s_hi) = normal_ci95(&s);
        let (d_lo, d_hi) = normal_ci95(&d);
        let (s_analytic, d_analytic) = analytic_columns(t, g, &params);
        table.rows.push(SweepRow {
            technique: t,
            g,
            s_analytic,
            s_sim_mean: mean_std(&s).0,
            s_sim_ci95_lo: s_lo,
            s_sim_ci95_hi: s_hi,
            d_analytic,
            d_sim_mean: mean_std(&d).0,
            d_sim_ci95_lo: d_lo,
            d_sim_ci95_hi: d_hi,
            n_replications: spec.replications,
            collided: metrics.iter().map(|m| m.collided).sum(),
        });
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Throughput,
    Delay,
}

/// Largest `|sim - analytic| / max(|analytic|, 1e-3)` over rows that have
/// an analytic value, with the index of the row where it occurs.
pub fn max_relative_error(table: &SweepTable, column: Column) -> Result<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (i, row) in table.rows.iter().enumerate() {
        let (sim, analytic) = match column {
            Column::Throughput => (row.s_sim_mean, row.s_analytic),
            Column::Delay => (row.d_sim_mean, row.d_analytic),
        };
        let Some(a) = analytic else { continue };
        let err = (sim - a).abs() / a.abs().max(RELATIVE_ERROR_FLOOR);
        if best.is_none_or(|(b, _)| err > b) {
            best = Some((err, i));
        }
    }
    best.ok_or(Error::EmptyTable)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub technique: Technique,
    pub mean: f64,
    pub ci95: (f64, f64),
    pub collided: u64,
}

/// Simulated rankings of the five framed techniques at one load point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConclusionReport {
    pub g: f64,
    pub replications: u32,
    /// Highest throughput first.
    pub by_throughput: Vec<RankEntry>,
    /// Lowest mean delay first.
    pub by_delay: Vec<RankEntry>,
}

impl ConclusionReport {
    pub fn tdma_first_in_throughput(&self) -> bool {
        self.by_throughput.first().is_some_and(|e| e.technique == Technique::Tdma)
    }

    pub fn tdma_first_in_delay(&self) -> bool {
        self.by_delay.first().is_some_and(|e| e.technique == Technique::Tdma)
    }

    pub fn tdma_first_in_both(&self) -> bool {
        self.tdma_first_in_throughput() && self.tdma_first_in_delay()
    }
}

impl fmt::Display for ConclusionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ranking at g={} over {} replications", self.g, self.replications)?;
        writeln!(f, "by throughput (highest first):")?;
        for (i, e) in self.by_throughput.iter().enumerate() {
            writeln!(
                f,
                "  {}. {:<14} s={:.6} ci95=[{:.6}, {:.6}] collided={}",
                i + 1,
                e.technique.name(),
                e.mean,
                e.ci95.0,
                e.ci95.1,
                e.collided
            )?;
        }
        writeln!(f, "by mean delay (lowest first):")?;
        for (i, e) in self.by_delay.iter().enumerate() {
            writeln!(
                f,
                "  {}. {:<14} d={:.6} ci95=[{:.6}, {:.6}]",
                i + 1,
                e.technique.name(),
                e.mean,
                e.ci95.0,
                e.ci95.1
            )?;
        }
        let yes = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "tdma rank-1 in throughput: {}", yes(self.tdma_first_in_throughput()))?;
        writeln!(f, "tdma rank-1 in delay: {}", yes(self.tdma_first_in_delay()))?;
        writeln!(f, "tdma rank-1 in both: {}", yes(self.tdma_first_in_both()))
    }
}

/// Ranks the five framed techniques by simulated throughput and delay at
/// the highest grid point of `spec`. Nothing is asserted about the outcome.
pub fn reproduce_conclusion(spec: &SweepSpec) -> Result<ConclusionReport> {
    for t in Technique::FRAMED {
        if !spec.techniques.contains(&t) {
            return Err(Error::InvalidParameter(format!("ranking needs technique {t}")));
        }
    }
    spec.validate()?;
    let points = spec.g_grid.points()?;
    let last = points.len() - 1;
    let g = points[last];
    let framed = SweepSpec { techniques: Technique::FRAMED.to_vec(), ..spec.clone() };
    let table = run_points(&framed, &[(last, g)])?;
    if let Some(d) = table.diagnostics.first() {
        return Err(Error::InvalidParameter(format!("simulation failed: {d}")));
    }
    ranking_from_table(&table, g, spec.replications)
}

/// Builds the ranking from the rows of `table` at load `g`. Ties keep the
/// alphabetical order of technique names.
pub fn ranking_from_table(table: &SweepTable, g: f64, replications: u32) -> Result<ConclusionReport> {
    let entries = |col: Column| -> Vec<RankEntry> {
        table
            .rows
            .iter()
            .filter(|r| r.g == g && Technique::FRAMED.contains(&r.technique))
            .map(|r| match col {
                Column::Throughput => RankEntry {
                    technique: r.technique,
                    mean: r.s_sim_mean,
                    ci95: (r.s_sim_ci95_lo, r.s_sim_ci95_hi),
                    collided: r.collided,
                },
                Column::Delay => RankEntry {
                    technique: r.technique,
                    mean: r.d_sim_mean,
                    ci95: (r.d_sim_ci95_lo, r.d_sim_ci95_hi),
                    collided: r.collided,
                },
            })
            .collect()
    };
    let mut by_throughput = entries(Column::Throughput);
    let mut by_delay = entries(Column::Delay);
    if by_throughput.len() != Technique::FRAMED.len() {
        return Err(Error::EmptyTable);
    }
    by_throughput.sort_by(|a, b| b.mean.total_cmp(&a.mean).then(a.technique.name().cmp(b.technique.name())));
    by_delay.sort_by(|a, b| a.mean.total_cmp(&b.mean).then(a.technique.name().cmp(b.technique.name())));
    Ok(ConclusionReport { g, replications, by_throughput, by_delay })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> SweepSpec {
        SweepSpec {
            techniques: vec![Technique::Tdma, Technique::PureAloha],
            g_grid: GridRange { lo: 0.2, hi: 0.4, step: 0.2 },
            replications: 2,
            sim: SimConfig { stop_packets: 2_000, ..SimConfig::default() },
            ..SweepSpec::default()
        }
    }

    #[test]
    fn rows_sorted_by_technique_then_g() {
        let t = run_sweep(&small_spec()).unwrap();
        let keys: Vec<(&str, f64)> = t.rows.iter().map(|r| (r.technique.name(), r.g)).collect();
        assert_eq!(keys, vec![("pure-aloha", 0.2), ("pure-aloha", 0.4), ("tdma", 0.2), ("tdma", 0.4)]);
        for r in &t.rows {
            assert!(r.s_sim_ci95_lo <= r.s_sim_mean && r.s_sim_mean <= r.s_sim_ci95_hi);
            assert!(r.d_sim_ci95_lo <= r.d_sim_mean && r.d_sim_mean <= r.d_sim_ci95_hi);
        }
    }

    #[test]
    fn single_replication_degenerate_interval() {
        let spec = SweepSpec { replications: 1, ..small_spec() };
        for r in run_sweep(&spec).unwrap().rows {
            assert_eq!(r.s_sim_ci95_lo, r.s_sim_mean);
            assert_eq!(r.s_sim_ci95_hi, r.s_sim_mean);
        }
    }

    #[test]
    fn relative_error_zero_and_single_row() {
        let row = SweepRow {
            technique: Technique::PureAloha,
            g: 0.5,
            s_analytic: Some(0.2),
            s_sim_mean: 0.2,
            s_sim_ci95_lo: 0.2,
            s_sim_ci95_hi: 0.2,
            d_analytic: Some(0.0),
            d_sim_mean: 0.002,
            d_sim_ci95_lo: 0.002,
            d_sim_ci95_hi: 0.002,
            n_replications: 1,
            collided: 0,
        };
        let t = SweepTable { rows: vec![row], diagnostics: vec![] };
        assert_eq!(max_relative_error(&t, Column::Throughput).unwrap(), (0.0, 0));
        // zero analytic value: absolute error over the floor
        let (e, i) = max_relative_error(&t, Column::Delay).unwrap();
        assert!((e - 2.0).abs() < 1e-12 && i == 0);
        assert_eq!(max_relative_error(&SweepTable::default(), Column::Delay), Err(Error::EmptyTable));
    }

    #[test]
    fn invalid_base_config_rejected() {
        let spec = SweepSpec { sim: SimConfig { pkt_len: -1.0, ..SimConfig::default() }, ..small_spec() };
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn ranking_requires_framed_techniques() {
        assert!(reproduce_conclusion(&small_spec()).is_err());
    }
}
