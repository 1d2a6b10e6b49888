//! Parity codes built from the optimal source, their recovery maps, and
//! coherent-information dynamics under repeated noise.

mod code;
mod dynamics;
mod recovery;

pub use code::{classical_z2_code, encode_logical, quantum_z2_code, CodeParams, StabilizerCode};
pub use dynamics::{correctability_check, dynamics_step_program, run_dynamics, DynamicsRecord};
pub use recovery::{recovery_channel, SyndromeRecovery};
