use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use orum_core::analytic::{ic_maximally_mixed_dephasing, ic_z2_dephasing};
use orum_core::coherent::cat_crossover_sweep;
use orum_core::optimizer::{classify_source, optimize_orum, scan_phase_diagram, PhaseLabel};
use orum_core::qec::{classical_z2_code, quantum_z2_code, run_dynamics, CodeParams};
use serde::Serialize;

use crate::config::{AnalyticRun, CatSweepRun, Cli, CodeKind, DynamicsRun, OptimizeRun, RunConfig, ScanRun};
use crate::output::{fmt_num, round_sig, write_csv};

pub const ANALYTIC_COLUMNS: [&str; 4] = ["n", "q_z", "ic_mixed", "ic_z2"];
pub const SCAN_COLUMNS: [&str; 11] =
    ["q_u", "q_z", "n", "seed", "ic_max", "q1", "purity", "phase", "iterations", "wall_ms", "converged"];
pub const CAT_COLUMNS: [&str; 4] = ["n", "q", "ic_per_use", "is_argmax"];
pub const DYNAMICS_COLUMNS: [&str; 3] = ["t", "i_c", "purity"];

/// Resolves the configuration, computes, then writes to `--out` or stdout.
pub fn run(cli: Cli) -> Result<()> {
    let (config, out) = RunConfig::resolve(cli)?;
    let mut buf = Vec::new();
    execute(&config, &mut buf)?;
    match out {
        Some(path) => write_file(&path, &buf),
        None => {
            io::stdout().lock().write_all(&buf)?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    w.write_all(bytes)?;
    w.flush()?;
    Ok(())
}

/// Runs a validated configuration and writes its CSV or JSON output.
pub fn execute<W: Write>(config: &RunConfig, w: W) -> Result<()> {
    match config {
        RunConfig::Analytic(r) => analytic(config, r, w),
        RunConfig::Optimize(r) => optimize(config, r, w),
        RunConfig::Scan(r) => scan(config, r, w),
        RunConfig::CatSweep(r) => cat_sweep(config, r, w),
        RunConfig::CodeDynamics(r) => code_dynamics(config, r, w),
    }
}

fn analytic<W: Write>(config: &RunConfig, run: &AnalyticRun, w: W) -> Result<()> {
    let rows = run
        .qz
        .iter()
        .map(|&q| {
            Ok(vec![
                run.n.to_string(),
                fmt_num(q),
                fmt_num(ic_maximally_mixed_dephasing(run.n, q)?),
                fmt_num(ic_z2_dephasing(run.n, q)?),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    write_csv(w, config, &ANALYTIC_COLUMNS, &rows)
}

#[derive(Serialize)]
struct OptimizeReport<'a> {
    version: &'static str,
    config: &'a RunConfig,
    i_c: f64,
    q1: f64,
    purity: f64,
    phase: PhaseLabel,
    off_block_mass: f64,
    iterations: usize,
    converged: bool,
    best_restart: usize,
    restart_i_c: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho_abs: Option<Vec<Vec<f64>>>,
}

fn optimize<W: Write>(config: &RunConfig, run: &OptimizeRun, mut w: W) -> Result<()> {
    let res = optimize_orum(run.n, run.noise, &run.optimizer)?;
    let rho = res.rho_opt()?;
    let phase = classify_source(&rho, res.i_c);
    let rho_abs = run.dump_rho.then(|| {
        let m = rho.matrix();
        (0..m.dim()).map(|i| (0..m.dim()).map(|j| round_sig(m[(i, j)].norm())).collect()).collect()
    });
    let report = OptimizeReport {
        version: env!("CARGO_PKG_VERSION"),
        config,
        i_c: round_sig(res.i_c),
        q1: round_sig(res.q1),
        purity: round_sig(res.purity_opt),
        phase: phase.label,
        off_block_mass: round_sig(phase.off_block_mass),
        iterations: res.iterations,
        converged: res.converged,
        best_restart: res.best_restart,
        restart_i_c: res.restart_ics.iter().map(|&x| round_sig(x)).collect(),
        rho_abs,
    };
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    Ok(())
}

fn scan<W: Write>(config: &RunConfig, run: &ScanRun, w: W) -> Result<()> {
    let results = scan_phase_diagram(&run.grid, run.n, &run.optimizer, run.threads)?;
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            vec![
                fmt_num(r.q_u),
                fmt_num(r.q_z),
                r.n.to_string(),
                r.seed.to_string(),
                fmt_num(r.ic_max),
                fmt_num(r.q1),
                fmt_num(r.purity),
                r.phase.to_string(),
                r.iterations.to_string(),
                if run.wall_time { fmt_num(r.wall_ms) } else { "NA".into() },
                r.converged.to_string(),
            ]
        })
        .collect();
    write_csv(w, config, &SCAN_COLUMNS, &rows)
}

fn cat_sweep<W: Write>(config: &RunConfig, run: &CatSweepRun, w: W) -> Result<()> {
    let rows: Vec<Vec<String>> = cat_crossover_sweep(run.n_max, &run.q)?
        .iter()
        .map(|r| vec![r.n.to_string(), fmt_num(r.q), fmt_num(r.ic_per_use), r.is_argmax.to_string()])
        .collect();
    write_csv(w, config, &CAT_COLUMNS, &rows)
}

fn code_dynamics<W: Write>(config: &RunConfig, run: &DynamicsRun, w: W) -> Result<()> {
    let code = match run.code {
        CodeKind::Classical => classical_z2_code(run.n)?,
        CodeKind::Quantum => quantum_z2_code(CodeParams::new(run.n, run.m)?)?,
    };
    let rows: Vec<Vec<String>> = run_dynamics(&code, run.noise, run.t, run.qec)?
        .iter()
        .map(|r| vec![r.t.to_string(), fmt_num(r.i_c), fmt_num(r.purity_sys)])
        .collect();
    write_csv(w, config, &DYNAMICS_COLUMNS, &rows)
}
