use thiserror::Error;

use crate::tensor::MAX_QUBITS;

/// Errors raised by the simulator, optimizer and code constructions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside [0, 1]")]
    RateOutOfRange { name: &'static str, value: f64 },

    #[error("qubit {index} is out of range for a {total}-qubit register")]
    QubitOutOfRange { index: usize, total: usize },

    #[error("qubit {0} appears more than once in a target list")]
    DuplicateTarget(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("a {0}-qubit register exceeds the supported maximum of {MAX_QUBITS} qubits")]
    RegisterTooLarge(usize),

    #[error("partial trace needs at least one kept qubit")]
    EmptyKeepSet,

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("operator is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),

    #[error("Kraus operators are not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("channel acts on reference qubit {0}")]
    TouchesReference(usize),

    #[error("Hermitian eigensolver did not converge")]
    Eigensolver,

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_rate(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::RateOutOfRange { name, value })
    }
}
