//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration
//! error. The seed comes from `--seed`, then `MACBENCH_SEED`, then the
//! manifest, then 42, and is echoed with every result.

pub mod config;
pub mod format;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analytic::{generate_curve, GridRange};
use crate::error::Error;
use crate::frame_timing::{frame_delay, rank_techniques, throughput_from_delay, FrameTiming};
use crate::protocols::{simulate, Metrics, SimConfig};
use crate::sweep::{ranking_from_table, run_sweep, SweepTable};
use crate::technique::{Relation, Technique};

use config::{ConfigError, RunConfig};
use format::{g6, opt_g6};

pub const SEED_ENV: &str = "MACBENCH_SEED";
pub const DEFAULT_SEED: u64 = 42;

pub const EXIT_OK: u8 = 0;
pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "macbench", version, about = "Channel-access models, simulator and load sweeps")]
pub struct Cli {
    /// Seed for every random stream (overrides MACBENCH_SEED and the manifest).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one closed-form relation over an inclusive grid.
    Analytic {
        technique: Technique,
        relation: Relation,
        lo: f64,
        hi: f64,
        step: f64,
        /// Manifest whose [analytic] section supplies the parameters.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Per-frame delay breakdown, totals and ranking for the five framed techniques.
    Timing { config: PathBuf },
    /// One simulation run from the manifest's [simulation] section.
    Simulate { config: PathBuf },
    /// Offered-load sweep: writes PREFIX.csv, one PREFIX-<relation>.svg per
    /// relation and PREFIX-ranking.txt.
    Compare { config: PathBuf, prefix: PathBuf },
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }

    fn runtime(message: impl ToString) -> Self {
        Self { code: EXIT_RUNTIME, message: message.to_string() }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Self::usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::runtime(e)
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, env_seed: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, env_seed, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let env_seed = std::env::var(SEED_ENV).ok();
    let code = run(std::env::args_os(), env_seed, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::ExitCode::from(code)
}

/// Seed from the flag or environment; `None` if neither is set.
fn explicit_seed(flag: Option<u64>, env_seed: Option<String>) -> Result<Option<u64>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match env_seed {
        Some(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::usage(format!("{SEED_ENV}={s} is not an unsigned 64-bit integer"))),
        None => Ok(None),
    }
}

fn dispatch(cli: &Cli, env_seed: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let explicit = explicit_seed(cli.seed, env_seed)?;
    match &cli.command {
        Command::Analytic { technique, relation, lo, hi, step, config } => {
            let params = match config {
                Some(p) => RunConfig::load(p)?.analytic,
                None => Default::default(),
            };
            let seed = explicit.unwrap_or(DEFAULT_SEED);
            cmd_analytic(*technique, *relation, *lo, *hi, *step, &params, seed, out, err)
        }
        Command::Timing { config } => {
            let cfg = RunConfig::load(config)?;
            cmd_timing(&cfg.frame, explicit.unwrap_or(DEFAULT_SEED), out, err)
        }
        Command::Simulate { config } => {
            let cfg = RunConfig::load(config)?;
            let sim = SimConfig { seed: explicit.unwrap_or(cfg.simulation.seed), ..cfg.simulation };
            cmd_simulate(&sim, out, err)
        }
        Command::Compare { config, prefix } => {
            let cfg = RunConfig::load(config)?;
            let seed = explicit.or(cfg.sweep.base_seed).unwrap_or(DEFAULT_SEED);
            cmd_compare(&cfg, seed, prefix, out, err)
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_analytic(
    technique: Technique,
    relation: Relation,
    lo: f64,
    hi: f64,
    step: f64,
    params: &crate::analytic::AnalyticParams,
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let range = GridRange::new(lo, hi, step).map_err(Failure::usage)?;
    params.validate().map_err(Failure::usage)?;
    let curve = generate_curve(technique, relation, range, params)?;
    writeln!(err, "seed={seed}")?;
    if curve.as_printed {
        writeln!(err, "note: {technique} {relation} is evaluated as printed, with L in place of a")?;
    }
    for x in &curve.skipped {
        writeln!(err, "skipped x={}: outside the domain of {technique} {relation}", g6(*x))?;
    }
    let mut s = String::from("technique,relation,x,y\n");
    for p in &curve.points {
        let _ = writeln!(s, "{},{},{},{}", p.technique, p.relation, g6(p.x), g6(p.y));
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}

/// Breakdown rows, then totals, then the ranking, as three CSV blocks
/// separated by blank lines.
pub fn timing_csv(ft: &FrameTiming) -> Result<String, Error> {
    ft.validate()?;
    let mut s = String::from("technique,component,seconds\n");
    let mut totals = String::from("technique,total_s,throughput_bps\n");
    for t in Technique::FRAMED {
        let b = frame_delay(t, ft)?;
        for (name, v) in &b.components {
            let _ = writeln!(s, "{t},{name},{}", g6(*v));
        }
        let thr = throughput_from_delay(ft.payload_bytes, b.total)?;
        let _ = writeln!(totals, "{t},{},{}", g6(b.total), g6(thr));
    }
    s.push('\n');
    s.push_str(&totals);
    s.push_str("\nrank,technique,total_s,throughput_bps\n");
    for (i, r) in rank_techniques(ft)?.iter().enumerate() {
        let _ = writeln!(s, "{},{},{},{}", i + 1, r.technique, g6(r.total_delay), g6(r.throughput_bps));
    }
    Ok(s)
}

pub fn cmd_timing(ft: &FrameTiming, seed: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let csv = timing_csv(ft)?;
    writeln!(err, "seed={seed}")?;
    out.write_all(csv.as_bytes())?;
    Ok(())
}

pub const SIMULATE_HEADER: &str = "technique,g,attempted,succeeded,collided,throughput_s,mean_delay,ci_lo,ci_hi,seed";

/// Header plus one row. `ci_lo`/`ci_hi` bound the mean delay.
pub fn simulate_csv(m: &Metrics) -> String {
    format!(
        "{SIMULATE_HEADER}\n{},{},{},{},{},{},{},{},{},{}\n",
        m.technique,
        g6(m.offered_load_g),
        m.attempted,
        m.succeeded,
        m.collided,
        g6(m.throughput_s),
        g6(m.mean_delay),
        g6(m.delay_ci95.0),
        g6(m.delay_ci95.1),
        m.seed
    )
}

pub fn cmd_simulate(sim: &SimConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    sim.validate().map_err(Failure::usage)?;
    for w in sim.warnings() {
        writeln!(err, "warning: {w}")?;
    }
    let m = simulate(sim)?;
    out.write_all(simulate_csv(&m).as_bytes())?;
    Ok(())
}

pub const SWEEP_HEADER: &str = "technique,g,s_analytic,s_sim_mean,s_sim_ci95_lo,s_sim_ci95_hi,d_analytic,d_sim_mean,d_sim_ci95_lo,d_sim_ci95_hi,n_replications";

pub fn sweep_csv(table: &SweepTable) -> String {
    let mut s = format!("{SWEEP_HEADER}\n");
    for r in &table.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.technique,
            g6(r.g),
            opt_g6(r.s_analytic),
            g6(r.s_sim_mean),
            g6(r.s_sim_ci95_lo),
            g6(r.s_sim_ci95_hi),
            opt_g6(r.d_analytic),
            g6(r.d_sim_mean),
            g6(r.d_sim_ci95_lo),
            g6(r.d_sim_ci95_hi),
            r.n_replications
        );
    }
    s
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Output files written by `compare` for `prefix`.
pub fn compare_outputs(prefix: &Path, relations: &[Relation]) -> (PathBuf, Vec<(Relation, PathBuf)>, PathBuf) {
    let csv = with_suffix(prefix, ".csv");
    let svgs = relations.iter().map(|&r| (r, with_suffix(prefix, &format!("-{}.svg", r.name())))).collect();
    (csv, svgs, with_suffix(prefix, "-ranking.txt"))
}

pub fn cmd_compare(
    cfg: &RunConfig,
    seed: u64,
    prefix: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let spec = cfg.sweep_spec(seed);
    spec.validate().map_err(Failure::usage)?;
    let mut relations = cfg.sweep.relations.clone();
    relations.dedup();
    let (csv_path, svg_paths, ranking_path) = compare_outputs(prefix, &relations);

    // open every output before simulating so an unwritable path fails fast
    let open = |p: &Path| File::create(p).map_err(|e| Failure::runtime(format!("cannot write {}: {e}", p.display())));
    let mut csv_file = open(&csv_path)?;
    let mut svg_files = svg_paths.iter().map(|(r, p)| open(p).map(|f| (*r, f))).collect::<Result<Vec<_>, _>>()?;
    let mut ranking_file = open(&ranking_path)?;

    writeln!(err, "seed={seed}")?;
    for w in spec.sim.warnings() {
        writeln!(err, "warning: {w}")?;
    }
    let table = run_sweep(&spec)?;
    for d in &table.diagnostics {
        writeln!(err, "row failed: {d}")?;
    }
    csv_file.write_all(sweep_csv(&table).as_bytes())?;
    for (r, f) in &mut svg_files {
        let series = svg::series_from_table(&table, *r);
        let title = format!("{} (analytic lines, simulated points with 95% intervals)", r.name());
        f.write_all(svg::render(*r, &title, &series).as_bytes())?;
    }

    let g = *spec.g_grid.points()?.last().expect("grid is non-empty");
    let report = if Technique::FRAMED.iter().all(|t| spec.techniques.contains(t)) {
        let r = ranking_from_table(&table, g, spec.replications)?;
        format!("seed={seed}\n{r}")
    } else {
        format!("seed={seed}\nranking skipped: it needs all of {:?}\n", Technique::FRAMED.map(Technique::name))
    };
    ranking_file.write_all(report.as_bytes())?;
    out.write_all(report.as_bytes())?;
    Ok(())
}
