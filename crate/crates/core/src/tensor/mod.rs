//! Dense state and density-matrix algebra on small qubit registers.

mod density;
mod matrix;
mod register;
mod spectrum;
mod state;

pub use density::{outer_product, partial_trace, purity, DensityMatrix};
pub use matrix::CMatrix;
pub use register::{QubitRegister, MAX_QUBITS};
pub use spectrum::{entropy_bits, von_neumann_entropy, Spectrum};
pub use state::PureState;

pub(crate) use density::partial_trace_raw as partial_trace_matrix;
pub(crate) use spectrum::ZERO_CLIP;
pub(crate) use state::l2_norm;

pub use num_complex::Complex64 as C64;

/// Spreads the bits of `a` (most significant first) over `masks`.
pub(crate) fn scatter_bits(a: usize, masks: &[usize]) -> usize {
    let k = masks.len();
    let mut idx = 0;
    for (j, &m) in masks.iter().enumerate() {
        if a & (1 << (k - 1 - j)) != 0 {
            idx |= m;
        }
    }
    idx
}

/// Basis-index mask of qubit `q` in a register of `total` qubits.
#[inline]
pub(crate) fn qubit_mask(q: usize, total: usize) -> usize {
    1 << (total - 1 - q)
}
