use std::collections::HashSet;
use std::path::Path;

use macbench::analytic::{self, GridRange, OfferedLoad, RateBasis};
use macbench::cli::config::RunConfig;
use macbench::protocols::SimConfig;
use macbench::sweep::{self, derive_seed, Column, SweepSpec};
use macbench::Technique;

fn spec(techniques: &[Technique], lo: f64, hi: f64, step: f64, reps: u32, stop: u64) -> SweepSpec {
    SweepSpec {
        techniques: techniques.to_vec(),
        g_grid: GridRange::new(lo, hi, step).unwrap(),
        replications: reps,
        sim: SimConfig { stop_packets: stop, ..SimConfig::default() },
        ..SweepSpec::default()
    }
}

#[test]
fn pure_aloha_peak_with_replications() {
    let t = sweep::run_sweep(&spec(&[Technique::PureAloha], 0.5, 0.5, 1.0, 5, 100_000)).unwrap();
    assert_eq!(t.rows.len(), 1);
    let r = &t.rows[0];
    assert!((r.s_sim_mean - 0.18394).abs() <= 0.01, "{}", r.s_sim_mean);
    assert!(r.s_sim_ci95_hi - r.s_sim_ci95_lo < 0.01);
    assert_eq!(r.n_replications, 5);
}

#[test]
fn same_spec_same_table() {
    let s = spec(&[Technique::SlottedAloha, Technique::Fdma, Technique::CsmaCa], 0.2, 0.6, 0.2, 3, 5_000);
    assert_eq!(sweep::run_sweep(&s).unwrap(), sweep::run_sweep(&s).unwrap());
}

#[test]
fn seeds_are_distinct_over_large_grids() {
    let mut seen = HashSet::new();
    for t in Technique::ALL {
        for g in 0..10_000u64 {
            for r in 0..10u64 {
                assert!(seen.insert(derive_seed(42, t, g, r)), "{t} {g} {r}");
            }
        }
    }
}

#[test]
fn analytic_columns_replay_closed_forms() {
    let s = spec(&Technique::ALL, 0.1, 0.9, 0.2, 1, 1_000);
    let p = s.column_params();
    let table = sweep::run_sweep(&s).unwrap();
    assert_eq!(table.rows.len(), 6 * 5);
    for r in &table.rows {
        let g = OfferedLoad::new(r.g).unwrap();
        let (s_want, d_want) = match r.technique {
            Technique::PureAloha => (analytic::aloha_throughput(g).get(), analytic::aloha_delay_vs_load(g, &p)),
            Technique::SlottedAloha => {
                (analytic::slotted_aloha_throughput(g).get(), analytic::saloha_delay_vs_load(g, &p))
            }
            Technique::Csma1p | Technique::CsmaCa => {
                let s = analytic::csma_throughput(g, p.norm_prop_delay).unwrap();
                (s.get(), analytic::csma_delay_vs_throughput(s, &p))
            }
            Technique::Tdma => (r.g, analytic::tdma_delay(r.g, &p, RateBasis::CycleLength).unwrap()),
            Technique::Fdma => (r.g, analytic::fdma_delay(r.g, &p, RateBasis::CycleLength).unwrap()),
        };
        assert_eq!(r.s_analytic.unwrap().to_bits(), s_want.to_bits(), "{} {}", r.technique, r.g);
        assert_eq!(r.d_analytic.unwrap().to_bits(), d_want.to_bits(), "{} {}", r.technique, r.g);
    }
}

#[test]
fn pure_aloha_sweep_error() {
    let table = sweep::run_sweep(&spec(&[Technique::PureAloha], 0.1, 2.0, 0.1, 5, 100_000)).unwrap();
    assert_eq!(table.rows.len(), 20);
    let (err, at) = sweep::max_relative_error(&table, Column::Throughput).unwrap();
    println!("max relative throughput error {err:.6} at g={}", table.rows[at].g);
    assert!(err < 0.06);
}

#[test]
fn doubling_replications_narrows_interval() {
    let width = |s: &SweepSpec| {
        let r = &sweep::run_sweep(s).unwrap().rows[0];
        r.s_sim_ci95_hi - r.s_sim_ci95_lo
    };
    let mut narrower = 0;
    for trial in 0..100 {
        let base = SweepSpec { base_seed: 1_000 + trial, ..spec(&[Technique::PureAloha], 0.5, 0.5, 1.0, 20, 2_000) };
        let doubled = SweepSpec { replications: 40, ..base.clone() };
        if width(&doubled) < width(&base) {
            narrower += 1;
        }
    }
    println!("narrower in {narrower}/100 trials");
    assert!(narrower >= 95);
}

fn compare_spec() -> SweepSpec {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/compare.toml");
    RunConfig::load(&path).unwrap().sweep_spec(42)
}

#[test]
fn conclusion_ranking_at_high_load() {
    let report = sweep::reproduce_conclusion(&compare_spec()).unwrap();
    assert_eq!(report.g, 0.8);
    for list in [&report.by_throughput, &report.by_delay] {
        let mut names: Vec<&str> = list.iter().map(|e| e.technique.name()).collect();
        names.sort_unstable();
        assert_eq!(names, ["csma-ca", "fdma", "pure-aloha", "slotted-aloha", "tdma"]);
    }
    let collided = |t| report.by_throughput.iter().find(|e| e.technique == t).unwrap().collided;
    assert_eq!(collided(Technique::Tdma), 0);
    assert!(collided(Technique::PureAloha) > 0);

    // Pinned after the first verified run of configs/compare.toml.
    let order = |list: &[sweep::RankEntry]| list.iter().map(|e| e.technique).collect::<Vec<_>>();
    use Technique::*;
    assert_eq!(order(&report.by_throughput), [Fdma, Tdma, CsmaCa, SlottedAloha, PureAloha]);
    assert_eq!(order(&report.by_delay), [CsmaCa, Tdma, Fdma, SlottedAloha, PureAloha]);
    assert!(!report.tdma_first_in_both());
    let text = report.to_string();
    assert!(text.contains("tdma rank-1 in both: no"));
}

#[test]
fn ranking_needs_all_five() {
    let s = spec(&[Technique::Tdma, Technique::Fdma], 0.8, 0.8, 1.0, 1, 1_000);
    assert!(sweep::reproduce_conclusion(&s).is_err());
}

#[test]
fn invalid_specs_are_rejected() {
    let s = spec(&[Technique::Tdma], 0.1, 0.2, 0.1, 1, 1_000);
    assert!(sweep::run_sweep(&SweepSpec { replications: 0, ..s.clone() }).is_err());
    assert!(sweep::run_sweep(&SweepSpec { techniques: vec![], ..s }).is_err());
}

#[test]
fn ranking_matches_full_sweep_rows() {
    let s = spec(&Technique::FRAMED, 0.2, 0.8, 0.3, 3, 3_000);
    let table = sweep::run_sweep(&s).unwrap();
    let from_table = sweep::ranking_from_table(&table, 0.8, 3).unwrap();
    assert_eq!(sweep::reproduce_conclusion(&s).unwrap(), from_table);
}
