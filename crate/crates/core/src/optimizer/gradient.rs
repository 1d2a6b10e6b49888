use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::channels::ChannelProgram;
use crate::error::Result;
use crate::tensor::{partial_trace_matrix, CMatrix, PureState, Spectrum, ZERO_CLIP};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradientMode {
    #[default]
    Analytic,
    #[serde(rename = "fd")]
    FiniteDifference,
}

/// Central-difference step used by [`GradientMode::FiniteDifference`].
pub const FD_STEP: f64 = 1e-5;

/// -log2 on the numerical support, 0 elsewhere.
fn neg_log2_on_support(x: f64) -> f64 {
    if x < ZERO_CLIP {
        0.0
    } else {
        -x.log2()
    }
}

/// Coherent information and its gradient with respect to conj(psi).
///
/// The gradient is that of the degree-two extension
/// `f(psi) = S(Tr_R A(psi psi^dagger)) - S(A(psi psi^dagger))`, which agrees
/// with I_c on the unit sphere. A first-order change of `psi` moves I_c by
/// `2 Re <d psi, G>`.
pub fn ic_value_and_gradient(psi: &PureState, program: &ChannelProgram) -> Result<(f64, Vec<C64>)> {
    let reg = psi.register();
    program.check_avoids_reference(reg.n_ref())?;
    let total = reg.total();
    let joint = program.apply_raw(&psi.projector(), total)?;
    let keep: Vec<usize> = reg.system_qubits().collect();
    let system = partial_trace_matrix(&joint, total, &keep);

    let (vj, uj) = joint.eigh()?;
    let (vs, us) = system.eigh()?;
    let s_joint = Spectrum::from_eigenvalues(vj.clone())?.entropy_bits();
    let s_sys = Spectrum::from_eigenvalues(vs.clone())?.entropy_bits();

    let lj = spectral(&uj, &vj);
    let ls = spectral(&us, &vs);
    let smask = (1usize << reg.n_sys()) - 1;
    let n_sys = reg.n_sys();
    let x = CMatrix::from_fn(reg.dim(), |i, j| {
        let embedded = if i >> n_sys == j >> n_sys { ls[(i & smask, j & smask)] } else { C64::new(0.0, 0.0) };
        embedded - lj[(i, j)]
    });
    let back = program.apply_adjoint_raw(&x, total)?;
    Ok((s_sys - s_joint, back.matvec(psi.amplitudes())))
}

fn spectral(u: &CMatrix, vals: &[f64]) -> CMatrix {
    let n = u.dim();
    let f: Vec<f64> = vals.iter().map(|&x| neg_log2_on_support(x)).collect();
    CMatrix::from_fn(n, |i, j| (0..n).map(|k| u[(i, k)] * f[k] * u[(j, k)].conj()).sum())
}

/// The degree-two extension of I_c evaluated at unnormalized amplitudes.
fn extended_ic(psi: &PureState, amps: &[C64], program: &ChannelProgram) -> Result<f64> {
    let reg = psi.register();
    let joint = program.apply_raw(&CMatrix::outer(amps), reg.total())?;
    let keep: Vec<usize> = reg.system_qubits().collect();
    let system = partial_trace_matrix(&joint, reg.total(), &keep);
    let s_joint = Spectrum::from_eigenvalues(joint.eigvalsh()?)?.entropy_bits();
    let s_sys = Spectrum::from_eigenvalues(system.eigvalsh()?)?.entropy_bits();
    Ok(s_sys - s_joint)
}

/// Gradient by central differences on the real and imaginary parts.
pub fn finite_difference_gradient(psi: &PureState, program: &ChannelProgram, h: f64) -> Result<Vec<C64>> {
    program.check_avoids_reference(psi.register().n_ref())?;
    let mut amps = psi.amplitudes().to_vec();
    let mut out = Vec::with_capacity(amps.len());
    for j in 0..amps.len() {
        let orig = amps[j];
        let mut partial = |delta: C64| -> Result<f64> {
            amps[j] = orig + delta;
            let plus = extended_ic(psi, &amps, program)?;
            amps[j] = orig - delta;
            let minus = extended_ic(psi, &amps, program)?;
            amps[j] = orig;
            Ok((plus - minus) / (2.0 * h))
        };
        let d_re = partial(C64::new(h, 0.0))?;
        let d_im = partial(C64::new(0.0, h))?;
        out.push(C64::new(d_re, d_im) * 0.5);
    }
    Ok(out)
}

pub fn ic_gradient(psi: &PureState, program: &ChannelProgram, mode: GradientMode) -> Result<Vec<C64>> {
    match mode {
        GradientMode::Analytic => Ok(ic_value_and_gradient(psi, program)?.1),
        GradientMode::FiniteDifference => finite_difference_gradient(psi, program, FD_STEP),
    }
}

/// Removes the radial component: G - Re<psi, G> psi.
pub fn tangent_projection(psi: &PureState, g: &[C64]) -> Vec<C64> {
    let a = psi.amplitudes();
    let radial: f64 = a.iter().zip(g).map(|(x, y)| (x.conj() * y).re).sum();
    a.iter().zip(g).map(|(x, y)| y - x * radial).collect()
}
