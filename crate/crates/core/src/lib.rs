//! Exact density-matrix simulation of noisy qubit channels, optimization of
//! coherent information over input sources, and parity codes derived from
//! the optimal sources.
//!
//! Registers hold reference qubits first, then system qubits, and qubit 0 is
//! the most significant bit of a basis index. Entropies are in bits.

pub mod analytic;
pub mod channels;
pub mod coherent;
pub mod error;
pub mod optimizer;
pub mod qec;
pub mod tensor;

pub use error::{Error, Result};
