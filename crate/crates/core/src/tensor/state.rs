use num_complex::Complex64 as C64;

use super::{CMatrix, QubitRegister};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Normalized pure state on a reference-plus-system register.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    register: QubitRegister,
    amps: Vec<C64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized.
    pub fn new(register: QubitRegister, amps: Vec<C64>) -> Result<Self> {
        Self::check_len(&register, &amps)?;
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { register, amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(register: QubitRegister, mut amps: Vec<C64>) -> Result<Self> {
        Self::check_len(&register, &amps)?;
        let norm = l2_norm(&amps);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { register, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(register: QubitRegister, index: usize) -> Result<Self> {
        if index >= register.dim() {
            return Err(Error::DimensionMismatch { expected: register.dim(), actual: index });
        }
        let mut amps = vec![C64::new(0.0, 0.0); register.dim()];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { register, amps })
    }

    fn check_len(register: &QubitRegister, amps: &[C64]) -> Result<()> {
        if amps.len() != register.dim() {
            return Err(Error::DimensionMismatch { expected: register.dim(), actual: amps.len() });
        }
        Ok(())
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    /// <self|other>
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn projector(&self) -> CMatrix {
        CMatrix::outer(&self.amps)
    }
}

pub(crate) fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
