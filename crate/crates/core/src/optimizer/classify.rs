use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::tensor::DensityMatrix;

pub const NO_CODING_IC: f64 = 1e-3;
pub const PURITY_TOL: f64 = 0.02;
pub const OFF_BLOCK_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseLabel {
    MaximallyMixed,
    Z2,
    NoCoding,
    Other,
}

impl PhaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseLabel::MaximallyMixed => "maximally_mixed",
            PhaseLabel::Z2 => "z2",
            PhaseLabel::NoCoding => "no_coding",
            PhaseLabel::Other => "other",
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhaseLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [PhaseLabel::MaximallyMixed, PhaseLabel::Z2, PhaseLabel::NoCoding, PhaseLabel::Other]
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown phase label {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourcePhase {
    pub label: PhaseLabel,
    pub purity: f64,
    pub i_c: f64,
    pub off_block_mass: f64,
}

/// Sum of |rho_ij| over entries linking even- and odd-weight basis states.
pub fn parity_off_block_mass(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let d = m.dim();
    let mut mass = 0.0;
    for i in 0..d {
        for j in 0..d {
            if (i ^ j).count_ones() % 2 == 1 {
                mass += m[(i, j)].norm();
            }
        }
    }
    mass
}

/// Labels an optimal system state by its purity and parity-block support.
pub fn classify_source(rho_opt: &DensityMatrix, i_c: f64) -> SourcePhase {
    let purity = rho_opt.purity();
    let off_block_mass = parity_off_block_mass(rho_opt);
    let mixed = (0.5f64).powi(rho_opt.register().total() as i32);
    let label = if i_c < NO_CODING_IC {
        PhaseLabel::NoCoding
    } else if (purity - mixed).abs() < PURITY_TOL {
        PhaseLabel::MaximallyMixed
    } else if (purity - 0.5).abs() < PURITY_TOL && off_block_mass < OFF_BLOCK_TOL {
        PhaseLabel::Z2
    } else {
        PhaseLabel::Other
    };
    SourcePhase { label, purity, i_c, off_block_mass }
}
