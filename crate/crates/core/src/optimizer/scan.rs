use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ascent::{optimize_orum, OptimizerConfig};
use super::classify::{classify_source, PhaseLabel};
use crate::channels::NoiseParams;
use crate::error::{Error, Result};

/// `steps` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("grid needs at least one step".into()));
    }
    if !(min.is_finite() && max.is_finite()) || min > max {
        return Err(Error::InvalidArgument(format!("bad grid range [{min}, {max}]")));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i == steps - 1 { max } else { min + h * i as f64 }).collect())
}

/// Ordered list of noise points to optimize at.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    points: Vec<NoiseParams>,
}

impl ScanGrid {
    /// Every (q_u, q_z) pair, q_u outermost.
    pub fn lattice(q_u: &[f64], q_z: &[f64]) -> Result<Self> {
        let mut points = Vec::with_capacity(q_u.len() * q_z.len());
        for &u in q_u {
            for &z in q_z {
                points.push(NoiseParams::new(u, z)?);
            }
        }
        Ok(Self { points })
    }

    /// Points on the ray p = 2 q_z / q_u, i.e. q_u = 2 q_z / p.
    pub fn line_cut(p: f64, q_z: &[f64]) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::InvalidArgument(format!("line-cut parameter p must be positive, got {p}")));
        }
        let points = q_z.iter().map(|&z| NoiseParams::new(2.0 * z / p, z)).collect::<Result<_>>()?;
        Ok(Self { points })
    }

    pub fn from_points(points: Vec<NoiseParams>) -> Result<Self> {
        for p in &points {
            p.validate()?;
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[NoiseParams] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub q_u: f64,
    pub q_z: f64,
    pub n: usize,
    /// Optimizer seed used at this point.
    pub seed: u64,
    pub ic_max: f64,
    pub q1: f64,
    pub purity: f64,
    pub phase: PhaseLabel,
    pub iterations: usize,
    pub wall_ms: f64,
    pub converged: bool,
}

/// Seed of grid point `index` for a scan seeded with `seed`.
pub fn point_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

fn run_point(index: usize, params: NoiseParams, n_sys: usize, config: &OptimizerConfig) -> Result<ScanResult> {
    let start = Instant::now();
    let cfg = OptimizerConfig { seed: point_seed(config.seed, index), ..config.clone() };
    let res = optimize_orum(n_sys, params, &cfg)?;
    let phase = classify_source(&res.rho_opt()?, res.i_c);
    Ok(ScanResult {
        q_u: params.q_u,
        q_z: params.q_z,
        n: n_sys,
        seed: cfg.seed,
        ic_max: res.i_c,
        q1: res.q1,
        purity: res.purity_opt,
        phase: phase.label,
        iterations: res.iterations,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        converged: res.converged,
    })
}

/// Optimizes at every grid point on a pool of `threads` workers.
///
/// Rows come back in grid order whatever the thread count; apart from
/// `wall_ms` they depend only on the inputs.
pub fn scan_phase_diagram(
    grid: &ScanGrid,
    n_sys: usize,
    config: &OptimizerConfig,
    threads: usize,
) -> Result<Vec<ScanResult>> {
    config.validate()?;
    if threads == 0 {
        return Err(Error::InvalidArgument("thread count must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    pool.install(|| grid.points().par_iter().enumerate().map(|(i, &p)| run_point(i, p, n_sys, config)).collect())
}
