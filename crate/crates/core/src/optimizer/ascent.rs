use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::gradient::{finite_difference_gradient, ic_value_and_gradient, tangent_projection, GradientMode, FD_STEP};
use crate::channels::{orum_program, ChannelProgram, NoiseParams};
use crate::coherent::coherent_information_of;
use crate::error::{Error, Result};
use crate::tensor::{outer_product, DensityMatrix, PureState, QubitRegister};

/// Step halvings tried before an iteration gives up and stays put.
const MAX_HALVINGS: usize = 30;
/// Tolerated I_c loss when accepting a step (roundoff only).
const ACCEPT_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub learning_rate: f64,
    pub max_iters: usize,
    /// Convergence is declared when I_c gained less than `tol` over this many iterations.
    pub window: usize,
    pub tol: f64,
    pub restarts: usize,
    pub seed: u64,
    pub gradient: GradientMode,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            max_iters: 50_000,
            window: 200,
            tol: 1e-9,
            restarts: 5,
            seed: 0,
            gradient: GradientMode::Analytic,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(what.into()));
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return bad("learning rate must be positive");
        }
        if self.max_iters == 0 || self.window == 0 || self.restarts == 0 {
            return bad("max_iters, window and restarts must be positive");
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad("convergence tolerance must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OptResult {
    pub psi_opt: PureState,
    pub i_c: f64,
    /// I_c per system qubit.
    pub q1: f64,
    pub iterations: usize,
    pub converged: bool,
    /// I_c after each iteration of the winning restart, starting from the initial state.
    pub trace: Vec<f64>,
    pub purity_opt: f64,
    pub best_restart: usize,
    /// Final I_c of every restart, in restart order.
    pub restart_ics: Vec<f64>,
}

impl OptResult {
    /// Optimal source on the system qubits.
    pub fn rho_opt(&self) -> Result<DensityMatrix> {
        outer_product(&self.psi_opt).system_marginal()
    }
}

/// Mixes `stream` into `base` (SplitMix64 finalizer).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-random pure state: i.i.d. complex normal amplitudes, normalized.
pub fn random_state(register: QubitRegister, seed: u64) -> PureState {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let amps: Vec<C64> = (0..register.dim())
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            C64::new(re, im)
        })
        .collect();
    PureState::normalized(register, amps).expect("Gaussian vector is nonzero")
}

struct Run {
    psi: PureState,
    i_c: f64,
    iterations: usize,
    converged: bool,
    trace: Vec<f64>,
}

fn evaluate(psi: &PureState, program: &ChannelProgram, mode: GradientMode) -> Result<(f64, Vec<C64>)> {
    match mode {
        GradientMode::Analytic => ic_value_and_gradient(psi, program),
        GradientMode::FiniteDifference => {
            let ic = coherent_information_of(psi, program)?.i_c;
            Ok((ic, finite_difference_gradient(psi, program, FD_STEP)?))
        }
    }
}

fn plateaued(trace: &[f64], config: &OptimizerConfig) -> bool {
    let t = trace.len() - 1;
    t >= config.window && trace[t] - trace[t - config.window] < config.tol
}

fn ascend(start: PureState, program: &ChannelProgram, config: &OptimizerConfig) -> Result<Run> {
    let reg = start.register();
    let mut psi = start;
    let (mut ic, mut grad) = evaluate(&psi, program, config.gradient)?;
    let mut trace = vec![ic];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < config.max_iters {
        iterations += 1;
        let dir = tangent_projection(&psi, &grad);
        let mut eta = config.learning_rate;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let cand: Vec<C64> = psi.amplitudes().iter().zip(&dir).map(|(a, d)| a + d * eta).collect();
            let cand = PureState::normalized(reg, cand)?;
            let (cand_ic, cand_grad) = evaluate(&cand, program, config.gradient)?;
            if cand_ic >= ic - ACCEPT_SLACK {
                accepted = Some((cand, cand_ic, cand_grad));
                break;
            }
            eta *= 0.5;
        }
        let Some((p, v, g)) = accepted else {
            // Every remaining iteration would repeat this rejected one, so
            // record flat progress until the plateau test or the cap ends the run.
            loop {
                trace.push(ic);
                if plateaued(&trace, config) {
                    converged = true;
                    break;
                }
                if iterations == config.max_iters {
                    break;
                }
                iterations += 1;
            }
            break;
        };
        psi = p;
        ic = v;
        grad = g;
        trace.push(ic);
        if plateaued(&trace, config) {
            converged = true;
            break;
        }
    }
    Ok(Run { psi, i_c: ic, iterations, converged, trace })
}

/// Best-of-restarts gradient ascent of I_c over purified sources on
/// `n_sys` system qubits with as many reference qubits.
///
/// Restart `r` starts from `random_state(register, derive_seed(config.seed, r))`.
pub fn optimize_source(n_sys: usize, program: &ChannelProgram, config: &OptimizerConfig) -> Result<OptResult> {
    config.validate()?;
    let reg = QubitRegister::purified(n_sys)?;
    program.check_avoids_reference(reg.n_ref())?;
    let mut best: Option<(usize, Run)> = None;
    let mut restart_ics = Vec::with_capacity(config.restarts);
    for r in 0..config.restarts {
        let start = random_state(reg, derive_seed(config.seed, r as u64));
        let run = ascend(start, program, config)?;
        restart_ics.push(run.i_c);
        if best.as_ref().map_or(true, |(_, b)| run.i_c > b.i_c) {
            best = Some((r, run));
        }
    }
    let (best_restart, run) = best.expect("at least one restart");
    let purity_opt = outer_product(&run.psi).system_marginal()?.purity();
    Ok(OptResult {
        q1: run.i_c / n_sys as f64,
        i_c: run.i_c,
        iterations: run.iterations,
        converged: run.converged,
        trace: run.trace,
        purity_opt,
        psi_opt: run.psi,
        best_restart,
        restart_ics,
    })
}

/// Optimizes against one brickwork step of the given noise.
pub fn optimize_orum(n_sys: usize, params: NoiseParams, config: &OptimizerConfig) -> Result<OptResult> {
    let program = orum_program(QubitRegister::purified(n_sys)?, params)?;
    optimize_source(n_sys, &program, config)
}
