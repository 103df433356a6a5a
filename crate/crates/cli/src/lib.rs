//! Command-line front end: presets and overrides in, CSV tables and
//! manifests out.
//!
//! Every command writes `manifest.txt` next to its data files. The manifest
//! lists the exact arguments (`arg=` lines, in order) so that
//! `hogcycle rerun --manifest DIR/manifest.txt` repeats the run.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hogcycle::analysis::{
    chaos_analysis, delay_embed, fractal_dimension, ChaosOptions, DimensionOptions,
    RegressionMethod,
};
use hogcycle::bounds::BoundsMonitor;
use hogcycle::io::{self as out, Manifest};
use hogcycle::params::{fmt_f64, parse_kv};
use hogcycle::sweep::{run_sweep, SweepSpec};
use hogcycle::{derive_constants, Parameters, Preset, RecordSpec, Simulator, Var, VarSet};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, presets, parameter values or config files.
    #[error("{0}")]
    Usage(String),
    /// Failure while running: numerical faults, analysis errors, I/O.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Classify a library error: parameter and config problems are usage
/// errors, everything else is a runtime fault.
fn lib_err(e: hogcycle::Error) -> CliError {
    use hogcycle::Error::*;
    match e {
        InvalidParameter { .. } | UnknownKey(_) | UnknownPreset(_) | Config { .. } => usage(e),
        Domain(_) | NonFinite { .. } | Io(_) => runtime(e),
    }
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(
    name = "hogcycle",
    version,
    about = "Livestock population / meat price cycle simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Run a trajectory and write yearly and grid series.
    Simulate(SimulateArgs),
    /// Print derived bounds and hypotheses, optionally checked on a run.
    Check(CheckArgs),
    /// Autocorrelation, first zero and sign-word entropy of the price.
    Chaos(ChaosArgs),
    /// Box-counting dimension of a delay-embedded yearly series.
    Fracdim(FracdimArgs),
    /// One-parameter bifurcation sweep.
    Bifurcate(BifurcateArgs),
    /// Repeat the run recorded in a manifest.
    Rerun(RerunArgs),
}

/// Options shared by every run.
#[derive(Debug, Clone, PartialEq, Args)]
pub struct RunConfig {
    /// Parameter preset: SP, HH1 or TG.
    #[arg(long, default_value = "SP")]
    pub preset: String,
    /// File of key=value parameter overrides.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Single override, e.g. --set gamma=4 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Seed of the initial birth histories.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Simulated years (command-specific default).
    #[arg(long)]
    pub years: Option<u64>,
    /// Steps per year.
    #[arg(long)]
    pub q: Option<u32>,
    /// proportional or appendix_literal.
    #[arg(long = "birth-law")]
    pub birth_law: Option<String>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads for parallel stages.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Keep every n-th step in grid.csv.
    #[arg(long, default_value_t = 1)]
    pub grid_stride: u64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Also simulate and compare the trajectory against the bounds.
    #[arg(long)]
    pub empirical: bool,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ChaosArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Analyse the last this-many years of the price.
    #[arg(long, default_value_t = 10_000)]
    pub window: u64,
    /// Largest autocorrelation lag in years.
    #[arg(long, default_value_t = 100.0)]
    pub max_lag: f64,
    /// Longest word length.
    #[arg(long, default_value_t = 12)]
    pub kmax: usize,
    /// ols or theil_sen.
    #[arg(long, default_value = "ols")]
    pub regression: String,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct FracdimArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Nr or P.
    #[arg(long, default_value = "Nr")]
    pub var: String,
    /// First year of the embedded series.
    #[arg(long, default_value_t = 100_000)]
    pub from_year: u64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct BifurcateArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Swept parameter key.
    #[arg(long, default_value = "gamma")]
    pub param: String,
    #[arg(long, default_value_t = 2.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// First recorded year; --years sets the last (default 2000).
    #[arg(long, default_value_t = 1500)]
    pub from_year: u64,
    /// Cluster radius as a fraction of the diagram-wide range.
    #[arg(long, default_value_t = 1e-3)]
    pub radius_frac: f64,
    /// Columns with at most this many clusters count as periodic.
    #[arg(long, default_value_t = 8)]
    pub max_clusters: usize,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct RerunArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory (defaults to the recorded one).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Preset, then config file, then `--set`, then dedicated flags.
    pub fn resolve(&self) -> Result<Parameters, CliError> {
        let preset: Preset = self.preset.parse().map_err(lib_err)?;
        let mut pairs: Vec<(String, String)> = Vec::new();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            pairs.extend(parse_kv(&text).map_err(lib_err)?);
        }
        for s in &self.set {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| usage(format!("--set expects KEY=VALUE, got `{s}`")))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        if let Some(q) = self.q {
            pairs.push(("q".into(), q.to_string()));
        }
        if let Some(law) = &self.birth_law {
            pairs.push(("birth_law".into(), law.clone()));
        }
        preset
            .params()
            .with_overrides(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
            .map_err(lib_err)
    }

    fn render(&self, argv: &mut Vec<String>) {
        // `--key=value` keeps values such as `-5` from reading as flags
        let mut flag = |k: &str, v: String| argv.push(format!("--{k}={v}"));
        flag("preset", self.preset.clone());
        if let Some(c) = &self.config {
            flag("config", c.display().to_string());
        }
        for s in &self.set {
            flag("set", s.clone());
        }
        flag("seed", self.seed.to_string());
        if let Some(y) = self.years {
            flag("years", y.to_string());
        }
        if let Some(q) = self.q {
            flag("q", q.to_string());
        }
        if let Some(b) = &self.birth_law {
            flag("birth-law", b.clone());
        }
        flag("out", self.out.display().to_string());
        if let Some(w) = self.workers {
            flag("workers", w.to_string());
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Check(_) => "check",
            Command::Chaos(_) => "chaos",
            Command::Fracdim(_) => "fracdim",
            Command::Bifurcate(_) => "bifurcate",
            Command::Rerun(_) => "rerun",
        }
    }

    pub fn run_config(&self) -> Option<&RunConfig> {
        match self {
            Command::Simulate(a) => Some(&a.run),
            Command::Check(a) => Some(&a.run),
            Command::Chaos(a) => Some(&a.run),
            Command::Fracdim(a) => Some(&a.run),
            Command::Bifurcate(a) => Some(&a.run),
            Command::Rerun(_) => None,
        }
    }

    fn run_config_mut(&mut self) -> Option<&mut RunConfig> {
        match self {
            Command::Simulate(a) => Some(&mut a.run),
            Command::Check(a) => Some(&mut a.run),
            Command::Chaos(a) => Some(&mut a.run),
            Command::Fracdim(a) => Some(&mut a.run),
            Command::Bifurcate(a) => Some(&mut a.run),
            Command::Rerun(_) => None,
        }
    }

    /// Arguments (without the program name) that parse back to `self`.
    pub fn render(&self) -> Vec<String> {
        let mut argv = vec![self.name().to_string()];
        if let Some(run) = self.run_config() {
            run.render(&mut argv);
        }
        let mut flag = |k: &str, v: String| argv.push(format!("--{k}={v}"));
        match self {
            Command::Simulate(a) => flag("grid-stride", a.grid_stride.to_string()),
            Command::Check(a) => {
                if a.empirical {
                    argv.push("--empirical".into());
                }
            }
            Command::Chaos(a) => {
                flag("window", a.window.to_string());
                flag("max-lag", fmt_f64(a.max_lag));
                flag("kmax", a.kmax.to_string());
                flag("regression", a.regression.clone());
            }
            Command::Fracdim(a) => {
                flag("var", a.var.clone());
                flag("from-year", a.from_year.to_string());
            }
            Command::Bifurcate(a) => {
                flag("param", a.param.clone());
                flag("lo", fmt_f64(a.lo));
                flag("hi", fmt_f64(a.hi));
                flag("step", fmt_f64(a.step));
                flag("from-year", a.from_year.to_string());
                flag("radius-frac", fmt_f64(a.radius_frac));
                flag("max-clusters", a.max_clusters.to_string());
            }
            Command::Rerun(a) => {
                flag("manifest", a.manifest.display().to_string());
                if let Some(o) = &a.out {
                    flag("out", o.display().to_string());
                }
            }
        }
        argv
    }
}

/// Parse arguments (without the program name).
pub fn parse_args<I, S>(args: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("hogcycle"))
        .chain(args.into_iter().map(Into::into));
    Cli::try_parse_from(argv).map(|c| c.command)
}

/// Run a command, returning the lines it reports.
pub fn run(cmd: &Command) -> Result<Vec<String>, CliError> {
    if let Command::Rerun(a) = cmd {
        return rerun(a);
    }
    let run_cfg = cmd
        .run_config()
        .expect("non-rerun commands carry a run config");
    match run_cfg.workers {
        Some(0) => Err(usage("--workers must be at least 1")),
        Some(w) => rayon_pool(w)?.install(|| dispatch(cmd)),
        None => dispatch(cmd),
    }
}

fn rayon_pool(workers: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(runtime)
}

fn dispatch(cmd: &Command) -> Result<Vec<String>, CliError> {
    match cmd {
        Command::Simulate(a) => simulate(cmd, a),
        Command::Check(a) => check(cmd, a),
        Command::Chaos(a) => chaos(cmd, a),
        Command::Fracdim(a) => fracdim(cmd, a),
        Command::Bifurcate(a) => bifurcate(cmd, a),
        Command::Rerun(a) => rerun(a),
    }
}

fn rerun(a: &RerunArgs) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(&a.manifest)
        .map_err(|e| usage(format!("cannot read {}: {e}", a.manifest.display())))?;
    let m = Manifest::parse(&text).map_err(lib_err)?;
    let args: Vec<&str> = m
        .entries
        .iter()
        .filter(|(k, _)| k == "arg")
        .map(|(_, v)| v.as_str())
        .collect();
    if args.is_empty() {
        return Err(usage("manifest has no recorded arguments"));
    }
    let mut cmd = parse_args(&args).map_err(|e| usage(format!("manifest arguments: {e}")))?;
    if matches!(cmd, Command::Rerun(_)) {
        return Err(usage("manifest records another rerun"));
    }
    if let (Some(o), Some(run)) = (&a.out, cmd.run_config_mut()) {
        run.out = o.clone();
    }
    run(&cmd)
}

fn prepare_out(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| runtime(format!("cannot create {}: {e}", dir.display())))
}

fn write_file(
    dir: &Path,
    name: &str,
    f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let path = dir.join(name);
    let file = File::create(&path)
        .map_err(|e| runtime(format!("cannot create {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    f(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| runtime(format!("writing {}: {e}", path.display())))
}

fn write_pairs(dir: &Path, name: &str, pairs: &[(String, String)]) -> Result<(), CliError> {
    write_file(dir, name, |w| {
        for (k, v) in pairs {
            writeln!(w, "{k}={v}")?;
        }
        Ok(())
    })
}

fn manifest(cmd: &Command, params: &Parameters, files: &[&str]) -> Manifest {
    let mut m = Manifest::new();
    m.push("command", cmd.name());
    m.push("version", VERSION);
    if let Some(run) = cmd.run_config() {
        m.push("seed", run.seed.to_string());
        m.push("preset", run.preset.clone());
    }
    for a in cmd.render() {
        m.push("arg", a);
    }
    for (k, v) in params.to_pairs() {
        m.push(format!("param.{k}"), v);
    }
    for f in files {
        m.push("file", *f);
    }
    m
}

fn finish(
    cmd: &Command,
    params: &Parameters,
    files: &[&str],
    mut lines: Vec<String>,
) -> Result<Vec<String>, CliError> {
    let dir = &cmd.run_config().unwrap().out;
    let m = manifest(cmd, params, files);
    write_file(dir, "manifest.txt", |w| m.write(w))?;
    lines.push(format!(
        "wrote {} files to {}",
        files.len() + 1,
        dir.display()
    ));
    Ok(lines)
}

fn years(run: &RunConfig, default: u64) -> Result<u64, CliError> {
    match run.years.unwrap_or(default) {
        0 => Err(usage("--years must be at least 1")),
        y => Ok(y),
    }
}

fn simulate(cmd: &Command, a: &SimulateArgs) -> Result<Vec<String>, CliError> {
    let params = a.run.resolve()?;
    let years = years(&a.run, 50)?;
    if a.grid_stride == 0 {
        return Err(usage("--grid-stride must be at least 1"));
    }
    let spec = RecordSpec {
        grid: VarSet::ALL,
        grid_stride: a.grid_stride,
        grid_from_step: 1,
        yearly: VarSet::ALL,
        yearly_from_year: 1,
        totals: true,
    };
    let traj = Simulator::new(params.clone(), a.run.seed)
        .and_then(|mut s| s.extend(years, &spec))
        .map_err(lib_err)?;
    let dir = &a.run.out;
    prepare_out(dir)?;
    write_file(dir, "yearly.csv", |w| out::write_yearly_csv(w, &traj))?;
    write_file(dir, "grid.csv", |w| out::write_grid_csv(w, &traj))?;
    let lines = vec![
        format!("birth_law={}", params.birth_law),
        format!("yearly_rows={}", traj.yearly_len),
        format!("grid_rows={}", traj.grid_len),
    ];
    finish(cmd, &params, &["yearly.csv", "grid.csv"], lines)
}

fn check(cmd: &Command, a: &CheckArgs) -> Result<Vec<String>, CliError> {
    let params = a.run.resolve()?;
    let c = derive_constants(&params);
    let mut pairs: Vec<(String, String)> = c
        .to_pairs()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    pairs.push(("hypotheses_all".into(), c.all_hypotheses().to_string()));
    if a.empirical {
        let years = years(&a.run, 2000)?;
        let mut sim = Simulator::new(params.clone(), a.run.seed).map_err(lib_err)?;
        let mut mon = BoundsMonitor::new(&params);
        sim.run_with(years * u64::from(params.q), |k, v, s| mon.observe(k, v, s))
            .map_err(lib_err)?;
        let r = mon.finish();
        let q = f64::from(params.q);
        let entry =
            |s: Option<u64>| s.map_or_else(|| "never".to_string(), |k| fmt_f64(k as f64 / q));
        let f = |x: f64| fmt_f64(x);
        pairs.extend(
            [
                ("monitor_from_t", f(r.from_step as f64 / q)),
                ("N_cap", f(r.n_cap)),
                ("S_cap", f(r.s_cap)),
                ("max_N_r", f(r.max_n_r)),
                ("min_N_r", f(r.min_n_r)),
                ("max_S", f(r.max_supply)),
                ("min_S", f(r.min_supply)),
                ("max_P", f(r.max_price)),
                ("min_P", f(r.min_price)),
                ("max_step_change_N_r", f(r.max_step_change)),
                ("step_cap", f(r.step_cap)),
                ("min_total_reproducing", f(r.min_total_reproducing)),
                ("negatives", r.negatives.to_string()),
                ("N_r_within_cap_5pct", r.n_r_within_cap(0.05).to_string()),
                ("S_within_cap_5pct", r.supply_within_cap(0.05).to_string()),
                ("lipschitz_ok_5pct", r.lipschitz_ok(0.05).to_string()),
                ("entry_t_N_min", entry(r.n_min_entry_step())),
                ("entry_t_S_band", entry(r.supply_entry_step())),
                ("entry_t_P_band", entry(r.price_entry_step())),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v)),
        );
    }
    let dir = &a.run.out;
    prepare_out(dir)?;
    write_pairs(dir, "check.txt", &pairs)?;
    let lines = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    finish(cmd, &params, &["check.txt"], lines)
}

fn chaos(cmd: &Command, a: &ChaosArgs) -> Result<Vec<String>, CliError> {
    let params = a.run.resolve()?;
    let years = years(&a.run, 300_000)?;
    if a.window == 0 || a.window > years {
        return Err(usage("--window must be between 1 and --years"));
    }
    let method: RegressionMethod = a.regression.parse().map_err(lib_err)?;
    let q = u64::from(params.q);
    let spec = RecordSpec {
        grid: VarSet::of(&[Var::P]),
        grid_stride: 1,
        grid_from_step: (years - a.window) * q + 1,
        yearly: VarSet::NONE,
        yearly_from_year: 1,
        totals: false,
    };
    let traj = Simulator::new(params.clone(), a.run.seed)
        .and_then(|mut s| s.extend(years, &spec))
        .map_err(lib_err)?;
    let opts = ChaosOptions {
        max_lag: a.max_lag,
        kmax: a.kmax,
        method,
        tau: None,
    };
    let report =
        chaos_analysis(traj.grid.get(Var::P).unwrap(), params.dt(), &opts).map_err(lib_err)?;
    let summary = out::chaos_summary(&report);
    let dir = &a.run.out;
    prepare_out(dir)?;
    write_file(dir, "acf.csv", |w| out::write_acf_csv(w, &report.acf))?;
    write_file(dir, "entropy.csv", |w| out::write_entropy_csv(w, &report))?;
    write_file(dir, "returns.csv", |w| out::write_returns_csv(w, &report))?;
    write_pairs(dir, "chaos_summary.txt", &summary)?;
    let lines = summary.iter().map(|(k, v)| format!("{k}={v}")).collect();
    finish(
        cmd,
        &params,
        &["acf.csv", "entropy.csv", "returns.csv", "chaos_summary.txt"],
        lines,
    )
}

fn fracdim(cmd: &Command, a: &FracdimArgs) -> Result<Vec<String>, CliError> {
    let params = a.run.resolve()?;
    let years = years(&a.run, 300_000)?;
    let var = match a.var.as_str() {
        "Nr" | "N_r" => Var::Nr,
        "P" => Var::P,
        other => return Err(usage(format!("--var must be Nr or P, got `{other}`"))),
    };
    if a.from_year == 0 || a.from_year > years {
        return Err(usage("--from-year must be between 1 and --years"));
    }
    let traj = Simulator::new(params.clone(), a.run.seed)
        .and_then(|mut s| {
            s.extend(
                years,
                &RecordSpec::yearly_only(VarSet::of(&[var]), a.from_year),
            )
        })
        .map_err(lib_err)?;
    let cloud = delay_embed(traj.yearly.get(var).unwrap(), 3, 1).map_err(lib_err)?;
    let fit = fractal_dimension(&cloud, &DimensionOptions::default()).map_err(lib_err)?;
    let mut summary = vec![("var".to_string(), var.column_name().to_string())];
    summary.extend(out::dimension_summary(&fit));
    let dir = &a.run.out;
    prepare_out(dir)?;
    write_file(dir, "boxcount.csv", |w| out::write_boxcount_csv(w, &fit))?;
    write_pairs(dir, "fracdim_summary.txt", &summary)?;
    let lines = summary.iter().map(|(k, v)| format!("{k}={v}")).collect();
    finish(
        cmd,
        &params,
        &["boxcount.csv", "fracdim_summary.txt"],
        lines,
    )
}

fn bifurcate(cmd: &Command, a: &BifurcateArgs) -> Result<Vec<String>, CliError> {
    let params = a.run.resolve()?;
    if a.radius_frac.is_nan() || a.radius_frac <= 0.0 {
        return Err(usage("--radius-frac must be positive"));
    }
    let spec = SweepSpec {
        param: a.param.clone(),
        lo: a.lo,
        hi: a.hi,
        step: a.step,
        from_year: a.from_year,
        to_year: years(&a.run, 2000)?,
        seed: a.run.seed,
        workers: a.run.workers,
    };
    let data = run_sweep(&params, &spec).map_err(lib_err)?;
    let first_fp = data
        .columns
        .iter()
        .find(|c| !c.is_fault())
        .map(|c| c.initial_fingerprint);
    let shared = data
        .columns
        .iter()
        .filter(|c| !c.is_fault())
        .all(|c| Some(c.initial_fingerprint) == first_fp);
    let list = |v: Vec<f64>| v.into_iter().map(fmt_f64).collect::<Vec<_>>().join(" ");
    let summary: Vec<(String, String)> = vec![
        ("param".into(), spec.param.clone()),
        ("grid_values".into(), data.columns.len().to_string()),
        ("faults".into(), data.faults().to_string()),
        ("records_per_value".into(), spec.window_len().to_string()),
        ("shared_initial_condition".into(), shared.to_string()),
        ("radius_frac".into(), fmt_f64(a.radius_frac)),
        ("max_clusters".into(), a.max_clusters.to_string()),
        (
            "periodic_fraction_N_r".into(),
            fmt_f64(data.periodic_fraction(Var::Nr, a.radius_frac, a.max_clusters)),
        ),
        (
            "periodic_fraction_P".into(),
            fmt_f64(data.periodic_fraction(Var::P, a.radius_frac, a.max_clusters)),
        ),
        (
            "cluster_to_band_P".into(),
            list(data.cluster_to_band_transitions(Var::P, a.radius_frac, a.max_clusters)),
        ),
        (
            "cluster_to_band_N_r".into(),
            list(data.cluster_to_band_transitions(Var::Nr, a.radius_frac, a.max_clusters)),
        ),
    ];
    let dir = &a.run.out;
    prepare_out(dir)?;
    write_file(dir, "bifurcation.csv", |w| {
        out::write_bifurcation_csv(w, &data)
    })?;
    write_pairs(dir, "bifurcation_summary.txt", &summary)?;
    let lines = summary.iter().map(|(k, v)| format!("{k}={v}")).collect();
    finish(
        cmd,
        &params,
        &["bifurcation.csv", "bifurcation_summary.txt"],
        lines,
    )
}

#[cfg(test)]
mod tests;
