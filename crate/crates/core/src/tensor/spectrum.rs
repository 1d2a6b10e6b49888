use super::DensityMatrix;
use crate::error::{Error, Result};

/// Eigenvalues below this magnitude count as exact zeros.
pub(crate) const ZERO_CLIP: f64 = 1e-12;
/// Eigenvalues below this are treated as a positivity violation.
pub(crate) const NEG_TOL: f64 = -1e-8;

/// Eigenvalues of a density matrix, sorted in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        Self::from_eigenvalues(rho.matrix().eigvalsh()?)
    }

    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = eigenvalues.iter().find(|&&x| x < NEG_TOL || x.is_nan()) {
            return Err(Error::NotPositive(bad));
        }
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn entropy_bits(&self) -> f64 {
        entropy_bits(&self.eigenvalues)
    }

    pub fn purity(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x * x).sum()
    }

    /// Number of eigenvalues above the zero clip.
    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x >= ZERO_CLIP).count()
    }
}

/// -sum lambda log2 lambda, skipping eigenvalues below the zero clip.
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().filter(|&&x| x >= ZERO_CLIP).map(|&x| -x * x.log2()).sum()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    rho.entropy()
}
