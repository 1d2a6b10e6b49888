use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{qubit_mask, CMatrix, PureState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMatrix {
        let (o, l, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        let data = match self {
            Pauli::I => vec![l, o, o, l],
            Pauli::X => vec![o, l, l, o],
            Pauli::Y => vec![o, -i, i, o],
            Pauli::Z => vec![l, o, o, -l],
        };
        CMatrix::from_vec(2, data).expect("2x2")
    }

    fn has_x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    fn has_z(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// Signed tensor product of single-qubit Paulis.
///
/// Only non-identity factors are stored, sorted by qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PauliString {
    ops: Vec<(usize, Pauli)>,
    negative: bool,
}

impl PauliString {
    pub fn new(ops: impl IntoIterator<Item = (usize, Pauli)>) -> Result<Self> {
        let mut ops: Vec<(usize, Pauli)> = ops.into_iter().filter(|&(_, p)| p != Pauli::I).collect();
        ops.sort_by_key(|&(q, _)| q);
        for w in ops.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateTarget(w[0].0));
            }
        }
        Ok(Self { ops, negative: false })
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(q: usize, p: Pauli) -> Self {
        Self::new([(q, p)]).expect("single factor")
    }

    fn uniform(qs: impl IntoIterator<Item = usize>, p: Pauli) -> Self {
        let mut qs: Vec<usize> = qs.into_iter().collect();
        qs.sort_unstable();
        qs.dedup();
        Self::new(qs.into_iter().map(|q| (q, p))).expect("deduplicated")
    }

    pub fn x_on(qs: impl IntoIterator<Item = usize>) -> Self {
        Self::uniform(qs, Pauli::X)
    }

    pub fn z_on(qs: impl IntoIterator<Item = usize>) -> Self {
        Self::uniform(qs, Pauli::Z)
    }

    pub fn negated(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    pub fn ops(&self) -> &[(usize, Pauli)] {
        &self.ops
    }

    pub fn sign(&self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }

    pub fn weight(&self) -> usize {
        self.ops.len()
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.ops.iter().map(|&(q, _)| q)
    }

    pub fn get(&self, q: usize) -> Pauli {
        self.ops.binary_search_by_key(&q, |&(k, _)| k).map(|i| self.ops[i].1).unwrap_or(Pauli::I)
    }

    /// Smallest register size this string fits in.
    pub fn min_qubits(&self) -> usize {
        self.ops.last().map_or(0, |&(q, _)| q + 1)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        let clashes = self
            .ops
            .iter()
            .filter(|&&(q, p)| {
                let o = other.get(q);
                o != Pauli::I && o != p
            })
            .count();
        clashes % 2 == 0
    }

    /// Product of the two strings, dropping the overall phase.
    pub fn compose_unsigned(&self, other: &Self) -> Self {
        let mut qs: Vec<usize> = self.support().chain(other.support()).collect();
        qs.sort_unstable();
        qs.dedup();
        let ops = qs.into_iter().map(|q| {
            let (a, b) = (self.get(q), other.get(q));
            (q, Pauli::from_bits(a.has_x() ^ b.has_x(), a.has_z() ^ b.has_z()))
        });
        Self::new(ops).expect("distinct qubits")
    }

    /// The same string moved `offset` qubits up.
    pub fn shifted(&self, offset: usize) -> Self {
        Self { ops: self.ops.iter().map(|&(q, p)| (q + offset, p)).collect(), negative: self.negative }
    }

    /// Inverse of [`shifted`](Self::shifted); every factor must sit at or above `offset`.
    pub(crate) fn shifted_down(&self, offset: usize) -> Self {
        Self { ops: self.ops.iter().map(|&(q, p)| (q - offset, p)).collect(), negative: self.negative }
    }

    /// Bit `i` is set when the string anticommutes with `generators[i]`.
    pub fn syndrome(&self, generators: &[PauliString]) -> usize {
        generators.iter().enumerate().filter(|(_, g)| !self.commutes_with(g)).fold(0, |s, (i, _)| s | (1 << i))
    }

    pub(crate) fn action(&self, total: usize) -> Result<PauliAction> {
        if let Some(&(q, _)) = self.ops.last() {
            if q >= total {
                return Err(Error::QubitOutOfRange { index: q, total });
            }
        }
        let mut x = 0;
        let mut z = 0;
        let mut phase = C64::new(self.sign(), 0.0);
        for &(q, p) in &self.ops {
            let m = qubit_mask(q, total);
            if p.has_x() {
                x |= m;
            }
            if p.has_z() {
                z |= m;
            }
            if p == Pauli::Y {
                phase *= C64::new(0.0, 1.0);
            }
        }
        Ok(PauliAction { x, z, phase })
    }

    /// Dense matrix on `total` qubits.
    pub fn matrix(&self, total: usize) -> Result<CMatrix> {
        let a = self.action(total)?;
        let mut m = CMatrix::zeros(1 << total);
        for b in 0..1usize << total {
            m[(b ^ a.x, b)] = a.phase_at(b);
        }
        Ok(m)
    }

    pub fn apply_to_state(&self, psi: &PureState) -> Result<PureState> {
        let reg = psi.register();
        PureState::new(reg, self.apply_to_amplitudes(psi.amplitudes(), reg.total())?)
    }

    pub(crate) fn apply_to_amplitudes(&self, src: &[C64], total: usize) -> Result<Vec<C64>> {
        let a = self.action(total)?;
        let mut out = vec![C64::new(0.0, 0.0); src.len()];
        for (b, &amp) in src.iter().enumerate() {
            out[b ^ a.x] = a.phase_at(b) * amp;
        }
        Ok(out)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        if self.ops.is_empty() {
            return write!(f, "I");
        }
        for (i, (q, p)) in self.ops.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}{q}")?;
        }
        Ok(())
    }
}

/// P|b> = phase(b) |b xor x>
#[derive(Clone, Copy, Debug)]
pub(crate) struct PauliAction {
    x: usize,
    z: usize,
    phase: C64,
}

impl PauliAction {
    pub(crate) fn x_mask(&self) -> usize {
        self.x
    }

    pub(crate) fn z_mask(&self) -> usize {
        self.z
    }

    #[inline]
    fn phase_at(&self, b: usize) -> C64 {
        if (self.z & b).count_ones() % 2 == 1 {
            -self.phase
        } else {
            self.phase
        }
    }

    /// P M
    pub(crate) fn left_mul(&self, m: &CMatrix) -> CMatrix {
        let d = m.dim();
        let mut out = CMatrix::zeros(d);
        for k in 0..d {
            let ph = self.phase_at(k);
            for c in 0..d {
                out[(k ^ self.x, c)] = ph * m[(k, c)];
            }
        }
        out
    }

    /// M P^dagger
    pub(crate) fn right_mul_adj(&self, m: &CMatrix) -> CMatrix {
        let d = m.dim();
        let mut out = CMatrix::zeros(d);
        for k in 0..d {
            let ph = self.phase_at(k).conj();
            for r in 0..d {
                out[(r, k ^ self.x)] = m[(r, k)] * ph;
            }
        }
        out
    }

    /// P M P^dagger
    pub(crate) fn conjugate(&self, m: &CMatrix) -> CMatrix {
        let d = m.dim();
        let ph: Vec<C64> = (0..d).map(|b| self.phase_at(b)).collect();
        let mut out = CMatrix::zeros(d);
        for k in 0..d {
            for l in 0..d {
                out[(k ^ self.x, l ^ self.x)] = ph[k] * ph[l].conj() * m[(k, l)];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_is_i_x_z() {
        let y = PauliString::single(0, Pauli::Y).matrix(1).unwrap();
        let xz = &Pauli::X.matrix() * &Pauli::Z.matrix();
        assert!(y.max_abs_diff(&xz.scale(C64::new(0.0, 1.0))) < 1e-15);
        assert!(y.max_abs_diff(&Pauli::Y.matrix()) < 1e-15);
    }

    #[test]
    fn dense_matrix_matches_kron() {
        let p = PauliString::new([(0, Pauli::X), (2, Pauli::Y)]).unwrap().negated();
        let k = Pauli::X.matrix().kron(&Pauli::I.matrix()).kron(&Pauli::Y.matrix()).scale(C64::new(-1.0, 0.0));
        assert!(p.matrix(3).unwrap().max_abs_diff(&k) < 1e-15);
    }

    #[test]
    fn commutation_counts_clashes() {
        let xx = PauliString::x_on([0, 1]);
        let zz = PauliString::z_on([0, 1]);
        let zi = PauliString::z_on([0]);
        assert!(xx.commutes_with(&zz));
        assert!(!xx.commutes_with(&zi));
        assert_eq!(zi.syndrome(&[xx.clone(), PauliString::x_on([1, 2])]), 0b01);
    }

    #[test]
    fn action_helpers_agree_with_dense_products() {
        let p = PauliString::new([(0, Pauli::Y), (1, Pauli::Z)]).unwrap();
        let a = p.action(2).unwrap();
        let pm = p.matrix(2).unwrap();
        let m = CMatrix::from_fn(4, |i, j| C64::new(i as f64 + 0.5, j as f64 - 1.0));
        assert!(a.left_mul(&m).max_abs_diff(&(&pm * &m)) < 1e-14);
        assert!(a.right_mul_adj(&m).max_abs_diff(&(&m * &pm.adjoint())) < 1e-14);
        assert!(a.conjugate(&m).max_abs_diff(&(&(&pm * &m) * &pm.adjoint())) < 1e-14);
    }

    #[test]
    fn compose_unsigned_combines_factors() {
        let a = PauliString::x_on([0, 1]);
        let b = PauliString::z_on([1, 2]);
        let c = a.compose_unsigned(&b);
        assert_eq!(c.get(0), Pauli::X);
        assert_eq!(c.get(1), Pauli::Y);
        assert_eq!(c.get(2), Pauli::Z);
        assert!(a.compose_unsigned(&a).is_identity());
    }
}
