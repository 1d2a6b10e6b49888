use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{ChannelOp, ChannelProgram, KrausChannel, Pauli};
use crate::error::{check_rate, Error, Result};
use crate::tensor::{qubit_mask, CMatrix, DensityMatrix, QubitRegister};

/// Rates of one noisy brickwork step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    /// Two-qubit depolarizing rate on each bond.
    pub q_u: f64,
    /// Single-qubit dephasing rate.
    pub q_z: f64,
}

impl NoiseParams {
    pub fn new(q_u: f64, q_z: f64) -> Result<Self> {
        check_rate("q_u", q_u)?;
        check_rate("q_z", q_z)?;
        Ok(Self { q_u, q_z })
    }

    pub fn validate(&self) -> Result<()> {
        check_rate("q_u", self.q_u)?;
        check_rate("q_z", self.q_z)
    }
}

fn scaled(m: CMatrix, c: f64) -> CMatrix {
    m.scale(C64::new(c, 0.0))
}

/// rho -> (1-q) rho + q Z rho Z
pub fn dephasing_channel(target: usize, q: f64) -> Result<KrausChannel> {
    check_rate("q_z", q)?;
    KrausChannel::new(
        vec![target],
        vec![scaled(Pauli::I.matrix(), (1.0 - q).sqrt()), scaled(Pauli::Z.matrix(), q.sqrt())],
    )
}

/// rho -> (1-q) rho + q I/2
pub fn depolarizing_1q(target: usize, q: f64) -> Result<KrausChannel> {
    check_rate("q", q)?;
    let mut ops = vec![scaled(Pauli::I.matrix(), (1.0 - 0.75 * q).sqrt())];
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        ops.push(scaled(p.matrix(), (q / 4.0).sqrt()));
    }
    KrausChannel::new(vec![target], ops)
}

/// rho -> (1-q) rho + q Tr_ab(rho) ⊗ I/4 on the pair `(a, b)`.
pub fn depolarizing_2q(a: usize, b: usize, q: f64) -> Result<KrausChannel> {
    check_rate("q_u", q)?;
    if a == b {
        return Err(Error::DuplicateTarget(a));
    }
    let mut ops = vec![scaled(CMatrix::identity(4), (1.0 - q).sqrt())];
    for pa in Pauli::ALL {
        for pb in Pauli::ALL {
            ops.push(scaled(pa.matrix().kron(&pb.matrix()), (q / 16.0).sqrt()));
        }
    }
    KrausChannel::new(vec![a, b], ops)
}

/// One brickwork step on an open chain of qubits.
///
/// Even bonds (0,1),(2,3),... first, then odd bonds (1,2),(3,4),..., then
/// dephasing on every site. Channels whose rate is exactly zero are left out.
pub fn orum_layers(chain: &[usize], params: NoiseParams) -> Result<Vec<KrausChannel>> {
    params.validate()?;
    let mut out = Vec::new();
    if params.q_u != 0.0 {
        for start in [0, 1] {
            for i in (start..chain.len().saturating_sub(1)).step_by(2) {
                out.push(depolarizing_2q(chain[i], chain[i + 1], params.q_u)?);
            }
        }
    }
    if params.q_z != 0.0 {
        for &q in chain {
            out.push(dephasing_channel(q, params.q_z)?);
        }
    }
    Ok(out)
}

/// One brickwork step on the system qubits of `register`.
pub fn orum_program(register: QubitRegister, params: NoiseParams) -> Result<ChannelProgram> {
    let chain: Vec<usize> = register.system_qubits().collect();
    Ok(orum_layers(&chain, params)?.into_iter().map(ChannelOp::Kraus).collect())
}

pub fn orum_step(rho: &DensityMatrix, params: NoiseParams) -> Result<DensityMatrix> {
    orum_program(rho.register(), params)?.apply(rho)
}

/// Conjugates by prod_j exp(i theta_j Z_j) over the system qubits.
pub fn gauge_transform(rho: &DensityMatrix, theta: &[f64]) -> Result<DensityMatrix> {
    let reg = rho.register();
    if theta.len() != reg.n_sys() {
        return Err(Error::DimensionMismatch { expected: reg.n_sys(), actual: theta.len() });
    }
    let total = reg.total();
    let u: Vec<C64> = (0..reg.dim())
        .map(|b| {
            let angle: f64 = theta
                .iter()
                .enumerate()
                .map(|(j, &t)| if b & qubit_mask(reg.system_qubit(j), total) == 0 { t } else { -t })
                .sum();
            C64::from_polar(1.0, angle)
        })
        .collect();
    let m = rho.matrix();
    let out = CMatrix::from_fn(reg.dim(), |k, l| u[k] * u[l].conj() * m[(k, l)]);
    DensityMatrix::new(reg, out)
}
