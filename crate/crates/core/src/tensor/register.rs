use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 12;

/// Layout of a reference-plus-system register.
///
/// Reference qubits occupy indices `[0, n_ref)` and system qubits follow.
/// Qubit 0 is the most significant bit of a basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitRegister {
    n_ref: usize,
    n_sys: usize,
}

impl QubitRegister {
    pub fn new(n_ref: usize, n_sys: usize) -> Result<Self> {
        let total = n_ref + n_sys;
        if total == 0 {
            return Err(Error::InvalidArgument("register must hold at least one qubit".into()));
        }
        if total > MAX_QUBITS {
            return Err(Error::RegisterTooLarge(total));
        }
        Ok(Self { n_ref, n_sys })
    }

    /// A register with as many reference qubits as system qubits.
    pub fn purified(n_sys: usize) -> Result<Self> {
        Self::new(n_sys, n_sys)
    }

    pub fn n_ref(&self) -> usize {
        self.n_ref
    }

    pub fn n_sys(&self) -> usize {
        self.n_sys
    }

    pub fn total(&self) -> usize {
        self.n_ref + self.n_sys
    }

    pub fn dim(&self) -> usize {
        1 << self.total()
    }

    pub fn reference_qubits(&self) -> Range<usize> {
        0..self.n_ref
    }

    pub fn system_qubits(&self) -> Range<usize> {
        self.n_ref..self.total()
    }

    /// Global index of the `k`-th system qubit.
    pub fn system_qubit(&self, k: usize) -> usize {
        self.n_ref + k
    }

    pub fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.total() {
            Ok(())
        } else {
            Err(Error::QubitOutOfRange { index: q, total: self.total() })
        }
    }

    /// The register left after keeping `keep` (sorted, distinct).
    pub(crate) fn restricted(&self, keep: &[usize]) -> Self {
        let n_ref = keep.iter().filter(|&&q| q < self.n_ref).count();
        Self { n_ref, n_sys: keep.len() - n_ref }
    }
}
