use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::channels::{Pauli, PauliString};
use crate::coherent::SourceState;
use crate::error::{Error, Result};
use crate::tensor::{CMatrix, PureState, QubitRegister};

/// Block size `n` and number of blocks `m` of a parity code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub m: usize,
}

impl CodeParams {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::InvalidCode(format!("block size must be odd, got {n}")));
        }
        if m == 0 {
            return Err(Error::InvalidCode("at least one block is required".into()));
        }
        Ok(Self { n, m })
    }
}

/// Stabilizer code with a lookup-table decoder.
///
/// Bit `i` of a syndrome is set when generator `i` is violated; `decoder[s]`
/// is the correction applied for syndrome `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerCode {
    n_phys: usize,
    generators: Vec<PauliString>,
    logical_x: PauliString,
    logical_z: PauliString,
    decoder: Vec<PauliString>,
    distance: usize,
    block_size: usize,
    blocks: usize,
}

/// Most generators a lookup decoder is built for.
const MAX_GENERATORS: usize = 20;

impl StabilizerCode {
    pub fn new(
        n_phys: usize,
        generators: Vec<PauliString>,
        logical_x: PauliString,
        logical_z: PauliString,
        decoder: Vec<PauliString>,
        distance: usize,
    ) -> Result<Self> {
        let code = Self { n_phys, generators, logical_x, logical_z, decoder, distance, block_size: n_phys, blocks: 1 };
        code.validate()?;
        Ok(code)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCode(msg));
        if self.generators.len() > MAX_GENERATORS {
            return bad(format!("{} generators exceed the lookup limit", self.generators.len()));
        }
        let all = self.generators.iter().chain([&self.logical_x, &self.logical_z]).chain(&self.decoder);
        if let Some(p) = all.clone().find(|p| p.min_qubits() > self.n_phys) {
            return bad(format!("{p} acts outside the {} physical qubits", self.n_phys));
        }
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if !a.commutes_with(b) {
                    return bad(format!("generators {a} and {b} anticommute"));
                }
            }
            for l in [&self.logical_x, &self.logical_z] {
                if !a.commutes_with(l) {
                    return bad(format!("logical {l} anticommutes with generator {a}"));
                }
            }
        }
        if self.logical_x.commutes_with(&self.logical_z) {
            return bad("logical X and Z commute".into());
        }
        if self.decoder.len() != 1 << self.generators.len() {
            return bad(format!("decoder has {} entries, expected {}", self.decoder.len(), 1 << self.generators.len()));
        }
        for (s, c) in self.decoder.iter().enumerate() {
            if c.syndrome(&self.generators) != s {
                return bad(format!("correction {c} for syndrome {s:b} does not reproduce it"));
            }
        }
        Ok(())
    }

    pub fn n_phys(&self) -> usize {
        self.n_phys
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn logical_x(&self) -> &PauliString {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliString {
        &self.logical_z
    }

    pub fn decoder(&self) -> &[PauliString] {
        &self.decoder
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn syndrome_of(&self, error: &PauliString) -> usize {
        error.syndrome(&self.generators)
    }

    pub fn correction(&self, syndrome: usize) -> Option<&PauliString> {
        self.decoder.get(syndrome)
    }

    /// Physical qubits of each block, shifted by `offset`.
    pub fn block_chains(&self, offset: usize) -> Vec<Vec<usize>> {
        (0..self.blocks).map(|b| (0..self.block_size).map(|i| offset + b * self.block_size + i).collect()).collect()
    }

    /// Projector onto the joint +1 eigenspace of all generators.
    pub fn codespace_projector(&self) -> Result<CMatrix> {
        let mut p = CMatrix::identity(1 << self.n_phys);
        for g in &self.generators {
            let gp = g.action(self.n_phys)?.left_mul(&p);
            p = (&p + &gp).scale(C64::new(0.5, 0.0));
        }
        Ok(p)
    }
}

/// Decodes consecutive-difference bits into the lighter of the two
/// consistent flip patterns. `len` must be odd so there is no tie.
fn minority_pattern(diffs: impl Fn(usize) -> bool, len: usize) -> Vec<bool> {
    let mut e = vec![false; len];
    for j in 0..len.saturating_sub(1) {
        e[j + 1] = e[j] ^ diffs(j);
    }
    if e.iter().filter(|&&b| b).count() > len / 2 {
        e.iter_mut().for_each(|b| *b = !*b);
    }
    e
}

fn block_checks(offset: usize, n: usize) -> impl Iterator<Item = PauliString> {
    (0..n.saturating_sub(1)).map(move |j| PauliString::x_on([offset + j, offset + j + 1]))
}

/// Z corrections for the in-block syndrome bits of one block.
fn block_correction(s: usize, first_bit: usize, offset: usize, n: usize) -> PauliString {
    let e = minority_pattern(|j| s >> (first_bit + j) & 1 == 1, n);
    PauliString::z_on(e.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| offset + i))
}

/// Repetition code against phase flips: checks X_j X_{j+1}, majority-vote decoding.
pub fn classical_z2_code(n: usize) -> Result<StabilizerCode> {
    CodeParams::new(n, 1)?;
    let generators: Vec<PauliString> = block_checks(0, n).collect();
    let decoder = (0..1usize << generators.len()).map(|s| block_correction(s, 0, 0, n)).collect();
    StabilizerCode::new(n, generators, PauliString::single(0, Pauli::X), PauliString::z_on(0..n), decoder, n)
}

/// `m` parity blocks of `n` qubits joined by Z^n Z^n checks between
/// neighbouring blocks. (3, 3) is the nine-qubit Shor code.
pub fn quantum_z2_code(params: CodeParams) -> Result<StabilizerCode> {
    let CodeParams { n, m } = CodeParams::new(params.n, params.m)?;
    if m % 2 == 0 {
        return Err(Error::InvalidCode(format!("majority decoding across {m} blocks can tie")));
    }
    let n_phys = n * m;
    let in_block = m * (n - 1);
    let mut generators: Vec<PauliString> = (0..m).flat_map(|b| block_checks(b * n, n)).collect();
    generators.extend((0..m - 1).map(|b| PauliString::z_on(b * n..(b + 2) * n)));
    let decoder = (0..1usize << generators.len())
        .map(|s| {
            let z = (0..m).fold(PauliString::identity(), |acc, b| {
                acc.compose_unsigned(&block_correction(s, b * (n - 1), b * n, n))
            });
            let flips = minority_pattern(|b| s >> (in_block + b) & 1 == 1, m);
            let x = PauliString::x_on(flips.iter().enumerate().filter(|(_, &f)| f).map(|(b, _)| b * n));
            z.compose_unsigned(&x)
        })
        .collect();
    let logical_x = PauliString::x_on((0..m).map(|b| b * n));
    let logical_z = PauliString::z_on(0..n);
    let mut code = StabilizerCode::new(n_phys, generators, logical_x, logical_z, decoder, n.min(m))?;
    code.block_size = n;
    code.blocks = m;
    Ok(code)
}

/// Applies every generator's (I + g)/2 to a state vector on `total` qubits.
fn project(v: &[C64], ops: &[PauliString], total: usize) -> Result<Vec<C64>> {
    let mut cur = v.to_vec();
    for g in ops {
        let gv = g.apply_to_amplitudes(&cur, total)?;
        cur.iter_mut().zip(gv).for_each(|(a, b)| *a = (*a + b) * 0.5);
    }
    Ok(cur)
}

/// (|0>_R |0_L> + |1>_R |1_L>) / sqrt 2 with |1_L> = X_L |0_L>.
///
/// `|0_L>` is the codespace projection of the first computational basis state
/// with a nonzero overlap, restricted to Z_L = +1.
pub fn encode_logical(code: &StabilizerCode) -> Result<SourceState> {
    let n = code.n_phys();
    let reg = QubitRegister::new(1, n)?;
    let mut checks = code.generators().to_vec();
    checks.push(code.logical_z().clone());
    let mut zero = None;
    for b in 0..1usize << n {
        let mut e = vec![C64::new(0.0, 0.0); 1 << n];
        e[b] = C64::new(1.0, 0.0);
        let v = project(&e, &checks, n)?;
        let norm = crate::tensor::l2_norm(&v);
        if norm > 1e-6 {
            zero = Some(v.into_iter().map(|a| a / norm).collect::<Vec<_>>());
            break;
        }
    }
    let zero = zero.ok_or_else(|| Error::InvalidCode("empty logical subspace".into()))?;
    let one = code.logical_x().apply_to_amplitudes(&zero, n)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = zero.iter().chain(&one).map(|a| a * h).collect();
    Ok(SourceState::custom(PureState::normalized(reg, amps)?))
}
