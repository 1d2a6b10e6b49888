use serde::{Deserialize, Serialize};

use super::{encode_logical, StabilizerCode, SyndromeRecovery};
use crate::channels::{orum_layers, ChannelOp, ChannelProgram, NoiseParams, PauliString};
use crate::error::{Error, Result};
use crate::tensor::{outer_product, DensityMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicsRecord {
    pub t: usize,
    pub i_c: f64,
    pub purity_sys: f64,
}

/// One time step on an encoded register (reference qubit first): an
/// independent brickwork step on every block, then recovery if enabled.
pub fn dynamics_step_program(code: &StabilizerCode, params: NoiseParams, qec_enabled: bool) -> Result<ChannelProgram> {
    let mut program = ChannelProgram::new();
    for chain in code.block_chains(1) {
        program.extend(orum_layers(&chain, params)?.into_iter().map(ChannelOp::Kraus));
    }
    if qec_enabled {
        program.push(SyndromeRecovery::new(code, 1));
    }
    Ok(program)
}

fn record(t: usize, rho: &DensityMatrix) -> Result<DynamicsRecord> {
    let system = rho.system_marginal()?;
    let i_c = system.entropy()? - rho.entropy()?;
    Ok(DynamicsRecord { t, i_c, purity_sys: system.purity() })
}

/// Coherent information of the encoded logical Bell pair after each of
/// `t_max` noisy steps. Entry 0 is the noiseless input.
pub fn run_dynamics(
    code: &StabilizerCode,
    params: NoiseParams,
    t_max: usize,
    qec_enabled: bool,
) -> Result<Vec<DynamicsRecord>> {
    let step = dynamics_step_program(code, params, qec_enabled)?;
    let mut rho = outer_product(encode_logical(code)?.psi());
    let mut out = vec![record(0, &rho)?];
    for t in 1..=t_max {
        rho = step.apply(&rho)?;
        out.push(record(t, &rho)?);
    }
    Ok(out)
}

/// True when recovery undoes `error` on the encoded state.
pub fn correctability_check(code: &StabilizerCode, error: &PauliString) -> Result<bool> {
    if error.min_qubits() > code.n_phys() {
        return Err(Error::QubitOutOfRange { index: error.min_qubits() - 1, total: code.n_phys() });
    }
    let src = encode_logical(code)?;
    let hit = error.shifted(1).apply_to_state(src.psi())?;
    let recovered = SyndromeRecovery::new(code, 1).apply(&outer_product(&hit))?;
    Ok(recovered.expectation(src.psi())? > 1.0 - 1e-10)
}
