use crate::error::{Error, Result};
use crate::qec::SyndromeRecovery;
use crate::tensor::{CMatrix, DensityMatrix};

use super::KrausChannel;

#[derive(Clone, Debug)]
pub enum ChannelOp {
    Kraus(KrausChannel),
    Recovery(SyndromeRecovery),
}

impl ChannelOp {
    pub fn apply_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        match self {
            ChannelOp::Kraus(k) => k.apply_raw(m, total),
            ChannelOp::Recovery(r) => r.apply_raw(m, total),
        }
    }

    pub fn apply_adjoint_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        match self {
            ChannelOp::Kraus(k) => k.apply_adjoint_raw(m, total),
            ChannelOp::Recovery(r) => r.apply_adjoint_raw(m, total),
        }
    }

    /// Lowest qubit index the operation touches.
    pub fn min_target(&self) -> Option<usize> {
        match self {
            ChannelOp::Kraus(k) => k.targets().iter().copied().min(),
            ChannelOp::Recovery(r) => Some(r.offset()),
        }
    }
}

impl From<KrausChannel> for ChannelOp {
    fn from(k: KrausChannel) -> Self {
        ChannelOp::Kraus(k)
    }
}

impl From<SyndromeRecovery> for ChannelOp {
    fn from(r: SyndromeRecovery) -> Self {
        ChannelOp::Recovery(r)
    }
}

/// Ordered composition of channels; the first element acts first.
#[derive(Clone, Debug, Default)]
pub struct ChannelProgram {
    ops: Vec<ChannelOp>,
}

impl ChannelProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, op: impl Into<ChannelOp>) {
        self.ops.push(op.into());
    }

    pub fn then(mut self, other: ChannelProgram) -> Self {
        self.ops.extend(other.ops);
        self
    }

    pub fn ops(&self) -> &[ChannelOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Fails if any operation touches a qubit below `n_ref`.
    pub fn check_avoids_reference(&self, n_ref: usize) -> Result<()> {
        match self.ops.iter().filter_map(ChannelOp::min_target).find(|&q| q < n_ref) {
            Some(q) => Err(Error::TouchesReference(q)),
            None => Ok(()),
        }
    }

    pub fn apply_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        let mut cur = m.clone();
        for op in &self.ops {
            cur = op.apply_raw(&cur, total)?;
        }
        Ok(cur)
    }

    /// Heisenberg-picture map, applied in reverse order.
    pub fn apply_adjoint_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        let mut cur = m.clone();
        for op in self.ops.iter().rev() {
            cur = op.apply_adjoint_raw(&cur, total)?;
        }
        Ok(cur)
    }

    /// Applies every operation, checking trace and Hermiticity at the end.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let reg = rho.register();
        DensityMatrix::new(reg, self.apply_raw(rho.matrix(), reg.total())?)
    }
}

impl FromIterator<ChannelOp> for ChannelProgram {
    fn from_iter<I: IntoIterator<Item = ChannelOp>>(iter: I) -> Self {
        Self { ops: iter.into_iter().collect() }
    }
}

impl Extend<ChannelOp> for ChannelProgram {
    fn extend<I: IntoIterator<Item = ChannelOp>>(&mut self, iter: I) {
        self.ops.extend(iter)
    }
}

/// Applies a single channel and validates the result.
pub fn apply_channel(op: &ChannelOp, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let reg = rho.register();
    DensityMatrix::new(reg, op.apply_raw(rho.matrix(), reg.total())?)
}
