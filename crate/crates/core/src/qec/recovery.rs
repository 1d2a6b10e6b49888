use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use super::StabilizerCode;
use crate::channels::{KrausChannel, PauliAction, PauliString};
use crate::error::{Error, Result};
use crate::tensor::{CMatrix, DensityMatrix};

/// Largest code for which explicit Kraus operators are materialized.
const MAX_EXPLICIT_QUBITS: usize = 5;

/// Syndrome measurement followed by the decoder's correction,
/// rho -> sum_s C_s P_s rho P_s C_s^dagger, on qubits
/// `offset .. offset + n_phys` of a larger register.
///
/// Each correction maps syndrome sector s back to the codespace, so
/// C_s P_s = P_0 C_s and the map equals P_0 (sum_s C_s rho C_s^dagger) P_0.
/// That form is what gets evaluated; no 2^n x 2^n Kraus operator is built.
#[derive(Clone, Debug)]
pub struct SyndromeRecovery {
    offset: usize,
    n_phys: usize,
    generators: Vec<PauliString>,
    corrections: Vec<PauliString>,
}

impl SyndromeRecovery {
    pub fn new(code: &StabilizerCode, offset: usize) -> Self {
        Self {
            offset,
            n_phys: code.n_phys(),
            generators: code.generators().iter().map(|g| g.shifted(offset)).collect(),
            corrections: code.decoder().iter().map(|c| c.shifted(offset)).collect(),
        }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn n_phys(&self) -> usize {
        self.n_phys
    }

    fn actions(ops: &[PauliString], total: usize) -> Result<Vec<PauliAction>> {
        ops.iter().map(|p| p.action(total)).collect()
    }

    fn check_fits(&self, total: usize) -> Result<()> {
        if self.offset + self.n_phys > total {
            return Err(Error::QubitOutOfRange { index: self.offset + self.n_phys - 1, total });
        }
        Ok(())
    }

    /// P_0 X P_0, one generator at a time: (X + gX + Xg + gXg) / 4.
    fn project_codespace(gens: &[PauliAction], m: CMatrix) -> CMatrix {
        let quarter = C64::new(0.25, 0.0);
        gens.iter().fold(m, |x, g| {
            let gx = g.left_mul(&x);
            let xg = g.right_mul_adj(&x);
            let gxg = g.conjugate(&x);
            (&(&(&x + &gx) + &xg) + &gxg).scale(quarter)
        })
    }

    /// sum_s C_s M C_s^dagger for Pauli corrections.
    ///
    /// Conjugating by a Pauli with masks (x, z) sends entry (k, l) to
    /// (k^x, l^x) with sign (-1)^{z.(k^l)}, so corrections sharing an x mask
    /// collapse into one pass weighted by sum_z (-1)^{z.v}.
    fn twirl(corrections: &[PauliAction], m: &CMatrix) -> CMatrix {
        let d = m.dim();
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in corrections {
            groups.entry(c.x_mask()).or_default().push(c.z_mask());
        }
        let mut acc = CMatrix::zeros(d);
        for (x, zs) in groups {
            let w: Vec<f64> = (0..d)
                .map(|v| zs.iter().map(|z| if (z & v).count_ones() % 2 == 1 { -1.0 } else { 1.0 }).sum())
                .collect();
            for k in 0..d {
                for l in 0..d {
                    let wv = w[k ^ l];
                    if wv != 0.0 {
                        acc[(k ^ x, l ^ x)] += m[(k, l)] * wv;
                    }
                }
            }
        }
        acc
    }

    pub fn apply_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        self.check_fits(total)?;
        let gens = Self::actions(&self.generators, total)?;
        let summed = Self::twirl(&Self::actions(&self.corrections, total)?, m);
        Ok(Self::project_codespace(&gens, summed))
    }

    /// sum_s C_s^dagger P_0 X P_0 C_s
    pub fn apply_adjoint_raw(&self, m: &CMatrix, total: usize) -> Result<CMatrix> {
        self.check_fits(total)?;
        let gens = Self::actions(&self.generators, total)?;
        let projected = Self::project_codespace(&gens, m.clone());
        // Paulis are Hermitian up to a phase, so C^dagger . C is the same
        // conjugation as C . C^dagger.
        Ok(Self::twirl(&Self::actions(&self.corrections, total)?, &projected))
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let reg = rho.register();
        DensityMatrix::new(reg, self.apply_raw(rho.matrix(), reg.total())?)
    }

    /// Projector onto syndrome sector `s` on the code's own qubits.
    pub fn syndrome_projector(&self, s: usize) -> Result<CMatrix> {
        let n = self.n_phys;
        let mut p = CMatrix::identity(1 << n);
        for (i, g) in self.generators.iter().enumerate() {
            let local = g.shifted_down(self.offset);
            let gp = local.action(n)?.left_mul(&p);
            let sign = if s >> i & 1 == 1 { -0.5 } else { 0.5 };
            p = &p.scale(C64::new(0.5, 0.0)) + &gp.scale(C64::new(sign, 0.0));
        }
        Ok(p)
    }

    /// Kraus operators C_s P_s on the code's own qubits, one per syndrome.
    pub fn kraus_operators(&self) -> Result<Vec<CMatrix>> {
        if self.n_phys > MAX_EXPLICIT_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "explicit recovery Kraus operators are limited to {MAX_EXPLICIT_QUBITS} qubits"
            )));
        }
        self.corrections
            .iter()
            .enumerate()
            .map(|(s, c)| Ok(&c.shifted_down(self.offset).matrix(self.n_phys)? * &self.syndrome_projector(s)?))
            .collect()
    }

    /// The same map as an explicit Kraus channel (small codes only).
    pub fn to_kraus_channel(&self) -> Result<KrausChannel> {
        KrausChannel::new((self.offset..self.offset + self.n_phys).collect(), self.kraus_operators()?)
    }
}

/// Recovery map of `code` acting on qubits `0 .. n_phys`.
pub fn recovery_channel(code: &StabilizerCode) -> SyndromeRecovery {
    SyndromeRecovery::new(code, 0)
}
