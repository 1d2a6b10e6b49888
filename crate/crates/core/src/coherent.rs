//! Source states and the coherent-information functional.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::channels::{depolarizing_1q, ChannelOp, ChannelProgram};
use crate::error::{Error, Result};
use crate::tensor::{outer_product, DensityMatrix, PureState, QubitRegister};

#[derive(Clone, Debug, PartialEq)]
pub enum SourceLabel {
    MaximallyMixed,
    Cat(usize),
    /// Parity source on `n` qubits with per-basis-state phases for the even
    /// and odd branches (`None` means all zero).
    Z2 {
        n: usize,
        phases: Option<(Vec<f64>, Vec<f64>)>,
    },
    Custom,
}

/// A purified source: a pure state on reference plus system qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceState {
    label: SourceLabel,
    psi: PureState,
}

impl SourceState {
    pub fn new(label: SourceLabel, psi: PureState) -> Self {
        Self { label, psi }
    }

    pub fn custom(psi: PureState) -> Self {
        Self { label: SourceLabel::Custom, psi }
    }

    pub fn label(&self) -> &SourceLabel {
        &self.label
    }

    pub fn psi(&self) -> &PureState {
        &self.psi
    }

    pub fn register(&self) -> QubitRegister {
        self.psi.register()
    }

    /// The source density matrix on the system qubits.
    pub fn system_state(&self) -> Result<DensityMatrix> {
        outer_product(&self.psi).system_marginal()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherentInfoResult {
    pub i_c: f64,
    pub s_out_system: f64,
    pub s_out_joint: f64,
}

/// 2^(-n/2) sum_x |x>_R |x>_S
pub fn maximally_mixed_source(n_sys: usize) -> Result<SourceState> {
    if n_sys == 0 {
        return Err(Error::InvalidArgument("maximally mixed source needs n_sys >= 1".into()));
    }
    let reg = QubitRegister::new(n_sys, n_sys)?;
    let amp = C64::new((0.5f64).powf(n_sys as f64 / 2.0), 0.0);
    let mut amps = vec![C64::new(0.0, 0.0); reg.dim()];
    for x in 0..1usize << n_sys {
        amps[(x << n_sys) | x] = amp;
    }
    Ok(SourceState::new(SourceLabel::MaximallyMixed, PureState::normalized(reg, amps)?))
}

/// (|0>_R |0...0> + |1>_R |1...1>) / sqrt 2
pub fn cat_source(n: usize) -> Result<SourceState> {
    if n == 0 {
        return Err(Error::InvalidArgument("cat source needs n >= 1".into()));
    }
    let reg = QubitRegister::new(1, n)?;
    let mut amps = vec![C64::new(0.0, 0.0); reg.dim()];
    amps[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[reg.dim() - 1] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok(SourceState::new(SourceLabel::Cat(n), PureState::new(reg, amps)?))
}

/// (|0>_R |even> + |1>_R |odd>) / sqrt 2.
///
/// `|even>` is the uniform superposition of even-weight bit strings, each
/// carrying `exp(i phase)`; phases are listed in increasing basis order.
pub fn z2_source(n_sys: usize, phases: Option<(Vec<f64>, Vec<f64>)>) -> Result<SourceState> {
    if n_sys == 0 {
        return Err(Error::InvalidArgument("parity source needs n_sys >= 1".into()));
    }
    let half = 1usize << (n_sys - 1);
    if let Some((even, odd)) = &phases {
        for v in [even, odd] {
            if v.len() != half {
                return Err(Error::DimensionMismatch { expected: half, actual: v.len() });
            }
        }
    }
    let reg = QubitRegister::new(1, n_sys)?;
    let amp = (0.5 / half as f64).sqrt();
    let mut amps = vec![C64::new(0.0, 0.0); reg.dim()];
    let (mut ie, mut io) = (0, 0);
    for x in 0..1usize << n_sys {
        let odd = x.count_ones() % 2 == 1;
        let slot = if odd { &mut io } else { &mut ie };
        let phase = match &phases {
            Some((e, o)) => (if odd { o } else { e })[*slot],
            None => 0.0,
        };
        *slot += 1;
        let r = usize::from(odd);
        amps[(r << n_sys) | x] = C64::from_polar(amp, phase);
    }
    let label = SourceLabel::Z2 { n: n_sys, phases };
    Ok(SourceState::new(label, PureState::normalized(reg, amps)?))
}

/// I_c = S(rho'_S) - S(rho'_RS) for the given purified source.
pub fn coherent_information(src: &SourceState, program: &ChannelProgram) -> Result<CoherentInfoResult> {
    coherent_information_of(src.psi(), program)
}

pub fn coherent_information_of(psi: &PureState, program: &ChannelProgram) -> Result<CoherentInfoResult> {
    let reg = psi.register();
    program.check_avoids_reference(reg.n_ref())?;
    let joint = program.apply(&outer_product(psi))?;
    coherent_information_of_output(&joint)
}

/// I_c read off an already-evolved joint state.
pub fn coherent_information_of_output(joint: &DensityMatrix) -> Result<CoherentInfoResult> {
    let s_out_joint = joint.entropy()?;
    let s_out_system = joint.system_marginal()?.entropy()?;
    Ok(CoherentInfoResult { i_c: s_out_system - s_out_joint, s_out_system, s_out_joint })
}

/// Single-qubit depolarizing noise on every system qubit of `register`.
pub fn depolarizing_program(register: QubitRegister, q: f64) -> Result<ChannelProgram> {
    register.system_qubits().map(|t| depolarizing_1q(t, q).map(ChannelOp::Kraus)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatSweepRow {
    pub n: usize,
    pub q: f64,
    pub ic_per_use: f64,
    pub is_argmax: bool,
}

pub const CAT_SWEEP_MAX_N: usize = 7;

/// Per-use coherent information of odd cat sources under single-qubit
/// depolarizing noise. Row `n = 1` is the single-qubit maximally mixed source.
///
/// Rows are ordered by `q`, then `n`. Exactly one row per `q` is flagged as
/// the maximum; near-ties within 1e-9 go to the smaller `n`.
pub fn cat_crossover_sweep(n_max: usize, qs: &[f64]) -> Result<Vec<CatSweepRow>> {
    if n_max == 0 || n_max > CAT_SWEEP_MAX_N {
        return Err(Error::InvalidArgument(format!("n_max must be in 1..={CAT_SWEEP_MAX_N}, got {n_max}")));
    }
    let mut rows = Vec::new();
    for &q in qs {
        let start = rows.len();
        for n in (1..=n_max).step_by(2) {
            let src = if n == 1 { maximally_mixed_source(1)? } else { cat_source(n)? };
            let program = depolarizing_program(src.register(), q)?;
            let ic = coherent_information(&src, &program)?.i_c;
            rows.push(CatSweepRow { n, q, ic_per_use: ic / n as f64, is_argmax: false });
        }
        let block = &mut rows[start..];
        let mut best = 0;
        for (i, r) in block.iter().enumerate() {
            if r.ic_per_use > block[best].ic_per_use + 1e-9 {
                best = i;
            }
        }
        block[best].is_argmax = true;
    }
    Ok(rows)
}
