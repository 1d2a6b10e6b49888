//! Pauli algebra, Kraus channels and the brickwork noise model.

mod kraus;
mod noise;
mod pauli;
mod program;

pub use kraus::KrausChannel;
pub use noise::{
    dephasing_channel, depolarizing_1q, depolarizing_2q, gauge_transform, orum_layers, orum_program, orum_step,
    NoiseParams,
};
pub use pauli::{Pauli, PauliString};
pub use program::{apply_channel, ChannelOp, ChannelProgram};

pub(crate) use pauli::PauliAction;
