#![allow(dead_code)]

use num_complex::Complex64 as C64;
use orum_core::optimizer::random_state;
use orum_core::tensor::{outer_product, CMatrix, DensityMatrix, QubitRegister};

/// Mixed state on (n_ref, n_sys) obtained by tracing out `extra` ancilla
/// qubits of a random pure state.
pub fn random_density(n_ref: usize, n_sys: usize, extra: usize, seed: u64) -> DensityMatrix {
    let big = QubitRegister::new(n_ref + extra, n_sys).unwrap();
    let psi = random_state(big, seed);
    let keep: Vec<usize> = (extra..n_ref + extra + n_sys).collect();
    let reduced = outer_product(&psi).partial_trace(&keep).unwrap();
    let reg = QubitRegister::new(n_ref, n_sys).unwrap();
    DensityMatrix::new(reg, reduced.into_matrix()).unwrap()
}

/// Unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(qubits: usize, seed: u64) -> CMatrix {
    let reg = QubitRegister::new(0, 2 * qubits).unwrap();
    let amps = random_state(reg, seed).into_amplitudes();
    let dim = 1 << qubits;
    let a = CMatrix::from_vec(dim, amps).unwrap();
    let h = &a + &a.adjoint();
    h.eigh().unwrap().1
}

pub fn conj(u: &CMatrix, m: &CMatrix) -> CMatrix {
    &(u * m) * &u.adjoint()
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn h2(q: f64) -> f64 {
    let t = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    t(q) + t(1.0 - q)
}
