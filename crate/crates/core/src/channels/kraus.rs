use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tensor::{qubit_mask, scatter_bits, CMatrix, DensityMatrix};

/// Tolerance on sum K^dagger K = I.
pub(crate) const COMPLETENESS_TOL: f64 = 1e-10;

/// Kraus channel acting on a few named qubits of a larger register.
///
/// The target-local superoperator is precomputed in sparse form, so applying
/// the channel never builds anything of the full register's size beyond the
/// output matrix.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    targets: Vec<usize>,
    ops: Vec<CMatrix>,
    forward: Vec<(usize, usize, C64)>,
    backward: Vec<(usize, usize, C64)>,
}

impl KrausChannel {
    pub fn new(targets: Vec<usize>, ops: Vec<CMatrix>) -> Result<Self> {
        let mut sorted = targets.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateTarget(w[0]));
            }
        }
        let dk = 1usize << targets.len();
        if ops.is_empty() {
            return Err(Error::InvalidArgument("a channel needs at least one Kraus operator".into()));
        }
        for k in &ops {
            if k.dim() != dk {
                return Err(Error::DimensionMismatch { expected: dk, actual: k.dim() });
            }
        }
        let err = completeness_error(&ops);
        if err > COMPLETENESS_TOL {
            return Err(Error::NotTracePreserving(err));
        }
        let forward = superoperator(&ops);
        // The adjoint map has entries conj(S[(a,b),(c,d)]) at ((c,d),(a,b)).
        let backward = forward.iter().map(|&(r, c, v)| (c, r, v.conj())).collect();
        Ok(Self { targets, ops, forward, backward })
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn kraus_ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn completeness_error(&self) -> f64 {
        completeness_error(&self.ops)
    }

    /// Number of stored superoperator entries.
    pub fn superoperator_nnz(&self) -> usize {
        self.forward.len()
    }

    fn check_targets(&self, total: usize) -> Result<()> {
        match self.targets.iter().find(|&&q| q >= total) {
            Some(&q) => Err(Error::QubitOutOfRange { index: q, total }),
            None => Ok(()),
        }
    }

    pub fn apply_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        self.check_targets(total)?;
        Ok(apply_local(&self.forward, &self.targets, m, total))
    }

    pub fn apply_adjoint_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        self.check_targets(total)?;
        Ok(apply_local(&self.backward, &self.targets, m, total))
    }

    /// Applies the channel and checks that the output is a valid state.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let reg = rho.register();
        DensityMatrix::new(reg, self.apply_raw(rho.matrix(), reg.total())?)
    }
}

fn completeness_error(ops: &[CMatrix]) -> f64 {
    let d = ops[0].dim();
    let mut acc = CMatrix::zeros(d);
    for k in ops {
        acc = &acc + &(&k.adjoint() * k);
    }
    acc.max_abs_diff(&CMatrix::identity(d))
}

/// S[(a,b),(c,d)] = sum_K K[a,c] conj(K[b,d]), nonzero entries only.
fn superoperator(ops: &[CMatrix]) -> Vec<(usize, usize, C64)> {
    let dk = ops[0].dim();
    let mut out = Vec::new();
    for a in 0..dk {
        for b in 0..dk {
            for c in 0..dk {
                for d in 0..dk {
                    let v: C64 = ops.iter().map(|k| k[(a, c)] * k[(b, d)].conj()).sum();
                    if v.norm() > 1e-15 {
                        out.push((a * dk + b, c * dk + d, v));
                    }
                }
            }
        }
    }
    out
}

fn apply_local(sup: &[(usize, usize, C64)], targets: &[usize], m: &CMatrix, total: usize) -> CMatrix {
    let dim = m.dim();
    let masks: Vec<usize> = targets.iter().map(|&q| qubit_mask(q, total)).collect();
    let tmask: usize = masks.iter().fold(0, |a, &b| a | b);
    let dk = 1usize << targets.len();
    let offs: Vec<usize> = (0..dk).map(|a| scatter_bits(a, &masks)).collect();
    let rest: Vec<usize> = (0..dim).filter(|i| i & tmask == 0).collect();
    let zero = C64::new(0.0, 0.0);
    let mut block = vec![zero; dk * dk];
    let mut res = vec![zero; dk * dk];
    let mut out = CMatrix::zeros(dim);
    for &r in &rest {
        for &s in &rest {
            for c in 0..dk {
                for d in 0..dk {
                    block[c * dk + d] = m[(r | offs[c], s | offs[d])];
                }
            }
            res.iter_mut().for_each(|x| *x = zero);
            for &(row, col, v) in sup {
                res[row] += v * block[col];
            }
            for a in 0..dk {
                for b in 0..dk {
                    out[(r | offs[a], s | offs[b])] = res[a * dk + b];
                }
            }
        }
    }
    out
}
