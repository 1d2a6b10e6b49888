use num_complex::Complex64 as C64;

use super::{qubit_mask, scatter_bits, CMatrix, PureState, QubitRegister, Spectrum};
use crate::error::{Error, Result};

/// Tolerance on trace and Hermiticity for a valid density matrix.
pub(crate) const STATE_TOL: f64 = 1e-10;

/// Density matrix on a reference-plus-system register.
///
/// Trace and Hermiticity are checked on construction. Positivity is checked
/// whenever the spectrum is taken.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    register: QubitRegister,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(register: QubitRegister, matrix: CMatrix) -> Result<Self> {
        if matrix.dim() != register.dim() {
            return Err(Error::DimensionMismatch { expected: register.dim(), actual: matrix.dim() });
        }
        let herm = matrix.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::TraceNotOne(tr.re));
        }
        Ok(Self { register, matrix })
    }

    pub fn maximally_mixed(register: QubitRegister) -> Self {
        let d = register.dim();
        let matrix = CMatrix::identity(d).scale(C64::new(1.0 / d as f64, 0.0));
        Self { register, matrix }
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Spectrum::of(self)
    }

    pub fn entropy(&self) -> Result<f64> {
        Ok(self.spectrum()?.entropy_bits())
    }

    /// State of the system qubits alone.
    pub fn system_marginal(&self) -> Result<DensityMatrix> {
        let keep: Vec<usize> = self.register.system_qubits().collect();
        self.partial_trace(&keep)
    }

    /// <psi|rho|psi> for a pure state on the same register.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        if psi.register() != self.register {
            return Err(Error::DimensionMismatch { expected: self.register.dim(), actual: psi.register().dim() });
        }
        let v = self.matrix.matvec(psi.amplitudes());
        Ok(psi.amplitudes().iter().zip(&v).map(|(a, b)| a.conj() * b).sum::<C64>().re)
    }
}

/// |psi><psi|
pub fn outer_product(psi: &PureState) -> DensityMatrix {
    DensityMatrix { register: psi.register(), matrix: psi.projector() }
}

/// Tr(rho^2)
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix.frobenius_sq()
}

/// Reduced state on `keep`, returned on the register those qubits span.
///
/// The kept qubits retain their relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let reg = rho.register;
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateTarget(w[0]));
        }
    }
    for &q in &sorted {
        reg.check_qubit(q)?;
    }
    let matrix = partial_trace_raw(&rho.matrix, reg.total(), &sorted);
    Ok(DensityMatrix { register: reg.restricted(&sorted), matrix })
}

/// Partial trace of a raw operator; `keep` must be sorted and distinct.
pub(crate) fn partial_trace_raw(m: &CMatrix, total: usize, keep: &[usize]) -> CMatrix {
    let kept: Vec<usize> = keep.iter().map(|&q| qubit_mask(q, total)).collect();
    let traced: Vec<usize> =
        (0..total).filter(|q| keep.binary_search(q).is_err()).map(|q| qubit_mask(q, total)).collect();
    let kidx: Vec<usize> = (0..1usize << kept.len()).map(|a| scatter_bits(a, &kept)).collect();
    let tidx: Vec<usize> = (0..1usize << traced.len()).map(|a| scatter_bits(a, &traced)).collect();
    let dk = kidx.len();
    let mut out = CMatrix::zeros(dk);
    for a in 0..dk {
        for b in 0..dk {
            out[(a, b)] = tidx.iter().map(|&t| m[(kidx[a] | t, kidx[b] | t)]).sum();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> PureState {
        let reg = QubitRegister::new(1, 1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(reg, vec![C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(h, 0.0)]).unwrap()
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let rho = outer_product(&bell());
        let s = rho.system_marginal().unwrap();
        assert_eq!(s.register().n_sys(), 1);
        assert_eq!(s.register().n_ref(), 0);
        assert!(s.matrix().max_abs_diff(&CMatrix::identity(2).scale(C64::new(0.5, 0.0))) < 1e-15);
        assert!((s.purity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn keep_order_is_irrelevant() {
        let reg = QubitRegister::new(1, 2).unwrap();
        let amps: Vec<C64> = (0..8).map(|i| C64::new(i as f64, (7 - i) as f64)).collect();
        let rho = outer_product(&PureState::normalized(reg, amps).unwrap());
        let a = rho.partial_trace(&[0, 2]).unwrap();
        let b = rho.partial_trace(&[2, 0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_keep_sets() {
        let rho = outer_product(&bell());
        assert_eq!(rho.partial_trace(&[]).unwrap_err(), Error::EmptyKeepSet);
        assert!(matches!(rho.partial_trace(&[2]).unwrap_err(), Error::QubitOutOfRange { .. }));
        assert_eq!(rho.partial_trace(&[1, 1]).unwrap_err(), Error::DuplicateTarget(1));
    }

    #[test]
    fn new_rejects_wrong_trace() {
        let reg = QubitRegister::new(0, 1).unwrap();
        assert!(matches!(DensityMatrix::new(reg, CMatrix::identity(2)), Err(Error::TraceNotOne(_))));
    }
}
