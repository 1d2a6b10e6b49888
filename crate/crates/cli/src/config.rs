//! Command-line flags, JSON config files, and their validated forms.
//!
//! A config file is a flat JSON object keyed by the subcommand's flag names,
//! e.g. `{"n": 2, "qz-min": 0.0}`. Flags given on the command line win.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use orum_core::channels::NoiseParams;
use orum_core::optimizer::{linspace, GradientMode, OptimizerConfig, ScanGrid};
use orum_core::tensor::MAX_QUBITS;
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "orum", version, about = "Coherent-information lab for noisy qubit channels")]
pub struct Cli {
    /// JSON file supplying defaults for the subcommand's flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form I_c along q_u = 0
    Analytic(AnalyticArgs),
    /// Optimize the source at one noise point
    Optimize(OptimizeArgs),
    /// Optimize over a grid of noise points
    Scan(ScanArgs),
    /// Per-use I_c of cat sources under single-qubit depolarizing noise
    CatSweep(CatSweepArgs),
    /// I_c over time for an encoded parity code
    CodeDynamics(DynamicsArgs),
}

macro_rules! merge_fields {
    ($self:ident, $file:ident; $($f:ident),* ; $($b:ident),*) => {
        Self {
            $($f: $self.$f.or($file.$f),)*
            $($b: $self.$b || $file.$b,)*
        }
    };
}

#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct AnalyticArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub qz_min: Option<f64>,
    #[arg(long)]
    pub qz_max: Option<f64>,
    #[arg(long)]
    pub qz_steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GradArg {
    Analytic,
    Fd,
}

impl From<GradArg> for GradientMode {
    fn from(g: GradArg) -> Self {
        match g {
            GradArg::Analytic => GradientMode::Analytic,
            GradArg::Fd => GradientMode::FiniteDifference,
        }
    }
}

#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub qu: Option<f64>,
    #[arg(long)]
    pub qz: Option<f64>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long, value_enum)]
    pub grad: Option<GradArg>,
    /// Plateau window for the convergence test
    #[arg(long)]
    pub window: Option<usize>,
    /// Minimum I_c gain over the window to keep iterating
    #[arg(long)]
    pub tol: Option<f64>,
    /// Include the |rho_opt| magnitude matrix in the report
    #[arg(long, action = ArgAction::SetTrue)]
    #[serde(default)]
    pub dump_rho: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub qu_min: Option<f64>,
    #[arg(long)]
    pub qu_max: Option<f64>,
    #[arg(long)]
    pub qu_steps: Option<usize>,
    #[arg(long)]
    pub qz_min: Option<f64>,
    #[arg(long)]
    pub qz_max: Option<f64>,
    #[arg(long)]
    pub qz_steps: Option<usize>,
    /// Scan the ray q_u = 2 q_z / p over the q_z grid instead of a lattice
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Record wall-clock time per point (otherwise the column holds NA)
    #[arg(long, action = ArgAction::SetTrue)]
    #[serde(default)]
    pub wall_time: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CatSweepArgs {
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub q_min: Option<f64>,
    #[arg(long)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub q_steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Classical,
    Quantum,
}

#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DynamicsArgs {
    #[arg(long, value_enum)]
    pub code: Option<CodeKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub qu: Option<f64>,
    #[arg(long)]
    pub qz: Option<f64>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, action = ArgAction::SetTrue)]
    #[serde(default)]
    pub no_qec: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl AnalyticArgs {
    fn merge(self, file: Self) -> Self {
        merge_fields!(self, file; n, qz_min, qz_max, qz_steps, out; )
    }
}

impl OptimizeArgs {
    fn merge(self, file: Self) -> Self {
        merge_fields!(self, file; n, qu, qz, restarts, seed, max_iters, lr, grad, window, tol, out; dump_rho)
    }
}

impl ScanArgs {
    fn merge(self, file: Self) -> Self {
        merge_fields!(self, file;
            n, qu_min, qu_max, qu_steps, qz_min, qz_max, qz_steps, p, restarts, seed, threads, max_iters, lr,
            window, tol, out; wall_time)
    }
}

impl CatSweepArgs {
    fn merge(self, file: Self) -> Self {
        merge_fields!(self, file; n_max, q_min, q_max, q_steps, out; )
    }
}

impl DynamicsArgs {
    fn merge(self, file: Self) -> Self {
        merge_fields!(self, file; code, n, m, qu, qz, t, seed, out; no_qec)
    }
}

fn load_file<T: for<'de> Deserialize<'de> + Default>(path: Option<&Path>) -> Result<T> {
    let Some(path) = path else { return Ok(T::default()) };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

fn rate(name: &str, v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        bail!("{name} = {v} is outside [0, 1]");
    }
    Ok(v)
}

fn rate_grid(name: &str, min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    rate(&format!("{name}-min"), min)?;
    rate(&format!("{name}-max"), max)?;
    Ok(linspace(min, max, steps)?)
}

fn system_size(n: usize, max: usize) -> Result<usize> {
    if n == 0 || n > max {
        bail!("n = {n} must be between 1 and {max}");
    }
    Ok(n)
}

fn optimizer_config(
    restarts: Option<usize>,
    seed: Option<u64>,
    max_iters: Option<usize>,
    lr: Option<f64>,
    window: Option<usize>,
    tol: Option<f64>,
    grad: Option<GradArg>,
) -> Result<OptimizerConfig> {
    let d = OptimizerConfig::default();
    let cfg = OptimizerConfig {
        learning_rate: lr.unwrap_or(d.learning_rate),
        max_iters: max_iters.unwrap_or(d.max_iters),
        window: window.unwrap_or(d.window),
        tol: tol.unwrap_or(d.tol),
        restarts: restarts.unwrap_or(d.restarts),
        seed: seed.unwrap_or(d.seed),
        gradient: grad.map_or(d.gradient, Into::into),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Validated settings of one invocation. Serializes to the config record
/// written at the top of every output file.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunConfig {
    Analytic(AnalyticRun),
    Optimize(OptimizeRun),
    Scan(ScanRun),
    CatSweep(CatSweepRun),
    CodeDynamics(DynamicsRun),
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticRun {
    pub n: usize,
    pub qz_min: f64,
    pub qz_max: f64,
    pub qz_steps: usize,
    #[serde(skip)]
    pub qz: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeRun {
    pub n: usize,
    pub noise: NoiseParams,
    pub optimizer: OptimizerConfig,
    pub dump_rho: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRun {
    pub n: usize,
    pub qu: Option<(f64, f64, usize)>,
    pub qz: (f64, f64, usize),
    pub p: Option<f64>,
    pub optimizer: OptimizerConfig,
    pub wall_time: bool,
    /// Worker count; left out of the record so output does not depend on it.
    #[serde(skip)]
    pub threads: usize,
    #[serde(skip)]
    pub grid: ScanGrid,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatSweepRun {
    pub n_max: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub q_steps: usize,
    #[serde(skip)]
    pub q: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DynamicsRun {
    pub code: CodeKind,
    pub n: usize,
    pub m: usize,
    pub noise: NoiseParams,
    pub t: usize,
    pub qec: bool,
    pub seed: u64,
}

/// Largest system size the optimizer accepts (reference plus system qubits).
pub const MAX_OPT_SYSTEM: usize = MAX_QUBITS / 2;

impl RunConfig {
    /// Merges the config file under the flags and validates every value.
    pub fn resolve(cli: Cli) -> Result<(RunConfig, Option<PathBuf>)> {
        let file = cli.config.as_deref();
        Ok(match cli.command {
            Command::Analytic(a) => {
                let a = a.merge(load_file(file)?);
                let (min, max, steps) = (a.qz_min.unwrap_or(0.0), a.qz_max.unwrap_or(1.0), a.qz_steps.unwrap_or(21));
                let n = a.n.unwrap_or(3);
                if n == 0 {
                    bail!("n must be at least 1");
                }
                let qz = rate_grid("qz", min, max, steps)?;
                (RunConfig::Analytic(AnalyticRun { n, qz_min: min, qz_max: max, qz_steps: steps, qz }), a.out)
            }
            Command::Optimize(a) => {
                let a = a.merge(load_file(file)?);
                let n = system_size(a.n.unwrap_or(2), MAX_OPT_SYSTEM)?;
                let noise = NoiseParams::new(rate("qu", a.qu.unwrap_or(0.0))?, rate("qz", a.qz.unwrap_or(0.0))?)?;
                let optimizer = optimizer_config(a.restarts, a.seed, a.max_iters, a.lr, a.window, a.tol, a.grad)?;
                (RunConfig::Optimize(OptimizeRun { n, noise, optimizer, dump_rho: a.dump_rho }), a.out)
            }
            Command::Scan(a) => {
                let a = a.merge(load_file(file)?);
                let n = system_size(a.n.unwrap_or(2), MAX_OPT_SYSTEM)?;
                let qz = (a.qz_min.unwrap_or(0.0), a.qz_max.unwrap_or(0.5), a.qz_steps.unwrap_or(6));
                let qz_values = rate_grid("qz", qz.0, qz.1, qz.2)?;
                let (qu, grid) = match a.p {
                    Some(p) => {
                        if a.qu_min.is_some() || a.qu_max.is_some() || a.qu_steps.is_some() {
                            bail!("--p fixes q_u along the line cut; drop the --qu-* flags");
                        }
                        (None, ScanGrid::line_cut(p, &qz_values)?)
                    }
                    None => {
                        let qu = (a.qu_min.unwrap_or(0.0), a.qu_max.unwrap_or(0.5), a.qu_steps.unwrap_or(6));
                        let qu_values = rate_grid("qu", qu.0, qu.1, qu.2)?;
                        (Some(qu), ScanGrid::lattice(&qu_values, &qz_values)?)
                    }
                };
                let threads = a.threads.unwrap_or(1);
                if threads == 0 {
                    bail!("--threads must be at least 1");
                }
                let optimizer = optimizer_config(a.restarts, a.seed, a.max_iters, a.lr, a.window, a.tol, None)?;
                let run = ScanRun { n, qu, qz, p: a.p, optimizer, wall_time: a.wall_time, threads, grid };
                (RunConfig::Scan(run), a.out)
            }
            Command::CatSweep(a) => {
                let a = a.merge(load_file(file)?);
                let n_max = a.n_max.unwrap_or(7);
                if n_max == 0 || n_max > orum_core::coherent::CAT_SWEEP_MAX_N {
                    bail!("--n-max must be between 1 and {}", orum_core::coherent::CAT_SWEEP_MAX_N);
                }
                let (min, max, steps) = (a.q_min.unwrap_or(0.0), a.q_max.unwrap_or(0.3), a.q_steps.unwrap_or(31));
                let q = rate_grid("q", min, max, steps)?;
                (RunConfig::CatSweep(CatSweepRun { n_max, q_min: min, q_max: max, q_steps: steps, q }), a.out)
            }
            Command::CodeDynamics(a) => {
                let a = a.merge(load_file(file)?);
                let code = a.code.unwrap_or(CodeKind::Classical);
                let n = a.n.unwrap_or(3);
                let m = match (code, a.m) {
                    (CodeKind::Classical, Some(m)) if m != 1 => bail!("--m applies to the quantum code only"),
                    (CodeKind::Classical, _) => 1,
                    (CodeKind::Quantum, m) => m.unwrap_or(3),
                };
                if n % 2 == 0 || m % 2 == 0 {
                    bail!("--n and --m must be odd");
                }
                if 1 + n * m > MAX_QUBITS {
                    bail!("{} physical qubits plus the reference exceed {MAX_QUBITS}", n * m);
                }
                let noise = NoiseParams::new(rate("qu", a.qu.unwrap_or(0.01))?, rate("qz", a.qz.unwrap_or(0.015))?)?;
                let run =
                    DynamicsRun { code, n, m, noise, t: a.t.unwrap_or(9), qec: !a.no_qec, seed: a.seed.unwrap_or(0) };
                (RunConfig::CodeDynamics(run), a.out)
            }
        })
    }
}
