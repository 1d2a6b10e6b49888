//! Closed-form coherent information for pure dephasing noise.
//!
//! With no two-qubit noise every system qubit dephases independently. The
//! maximally mixed source then loses `H(q)` bits per qubit. For the parity
//! source, Z errors act as bit flips on an X-basis cat, and the output
//! spectra depend only on the Hamming weight of the error pattern.

use serde::{Deserialize, Serialize};

use crate::error::{check_rate, Error, Result};

/// Above this size the weight sums switch to log space.
const LOG_SPACE_MIN_N: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DephasingSpectrumParams {
    pub n: usize,
    pub q_z: f64,
}

impl DephasingSpectrumParams {
    pub fn new(n: usize, q_z: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        check_rate("q_z", q_z)?;
        Ok(Self { n, q_z })
    }

    pub fn beta(&self, k: usize) -> Result<f64> {
        beta_weight(k, self.n, self.q_z)
    }

    /// Output eigenvalue shared by the weight-k and weight-(n-k) sectors.
    pub fn lambda(&self, k: usize) -> Result<f64> {
        Ok(0.5 * (self.beta(k)? + self.beta(self.n - k)?))
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

pub fn binary_entropy(q: f64) -> Result<f64> {
    check_rate("q", q)?;
    Ok(-xlog2x(q) - xlog2x(1.0 - q))
}

/// n [1 - H(q_z)]
pub fn ic_maximally_mixed_dephasing(n: usize, q_z: f64) -> Result<f64> {
    Ok(n as f64 * (1.0 - binary_entropy(q_z)?))
}

/// (1-q)^(n-k) q^k
pub fn beta_weight(k: usize, n: usize, q_z: f64) -> Result<f64> {
    check_rate("q_z", q_z)?;
    if k > n {
        return Err(Error::InvalidArgument(format!("weight {k} exceeds n = {n}")));
    }
    if n >= LOG_SPACE_MIN_N {
        return Ok(ln_beta(k, n, q_z).exp());
    }
    Ok((1.0 - q_z).powi((n - k) as i32) * q_z.powi(k as i32))
}

fn ln_beta(k: usize, n: usize, q: f64) -> f64 {
    let term = |count: usize, p: f64| if count == 0 { 0.0 } else { count as f64 * p.ln() };
    term(n - k, 1.0 - q) + term(k, q)
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum()
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// sum_k C(n,k) [beta_k log2 beta_k - lambda_k log2 lambda_k]
pub fn ic_z2_dephasing(n: usize, q_z: f64) -> Result<f64> {
    let params = DephasingSpectrumParams::new(n, q_z)?;
    if n >= LOG_SPACE_MIN_N {
        return Ok(ic_z2_log_space(n, q_z));
    }
    let mut total = 0.0;
    for k in 0..=n {
        let b = params.beta(k)?;
        let l = params.lambda(k)?;
        total += binomial(n, k) * (xlog2x(b) - xlog2x(l));
    }
    Ok(total)
}

fn ic_z2_log_space(n: usize, q: f64) -> f64 {
    // C * x log2 x evaluated as exp(ln C + ln x) * ln x / ln 2
    let weighted = |ln_c: f64, ln_x: f64| {
        if ln_x == f64::NEG_INFINITY {
            0.0
        } else {
            (ln_c + ln_x).exp() * ln_x / std::f64::consts::LN_2
        }
    };
    let mut total = 0.0;
    for k in 0..=n {
        let ln_c = ln_binomial(n, k);
        let (a, b) = (ln_beta(k, n, q), ln_beta(n - k, n, q));
        let hi = a.max(b);
        let ln_l = if hi == f64::NEG_INFINITY {
            hi
        } else {
            hi + ((a - hi).exp() + (b - hi).exp()).ln() - std::f64::consts::LN_2
        };
        total += weighted(ln_c, a) - weighted(ln_c, ln_l);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert!((binary_entropy(0.25).unwrap() - 0.8112781244591328).abs() < 1e-15);
        assert!(binary_entropy(1.5).is_err());
    }

    #[test]
    fn formula_examples() {
        assert!((ic_maximally_mixed_dephasing(3, 0.1).unwrap() - 1.5930132192321564).abs() < 1e-12);
        assert!((beta_weight(1, 3, 0.2).unwrap() - 0.128).abs() < 1e-15);
        assert_eq!(beta_weight(0, 4, 0.0).unwrap(), 1.0);
        assert_eq!(beta_weight(4, 4, 1.0).unwrap(), 1.0);
        assert!(beta_weight(5, 4, 0.1).is_err());
        assert!((ic_z2_dephasing(4, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn critical_point_is_exactly_zero() {
        for n in 1..=8 {
            assert!(ic_z2_dephasing(n, 0.5).unwrap().abs() < 1e-12);
            assert!(ic_maximally_mixed_dephasing(n, 0.5).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn single_qubit_reduces_to_hashing_value() {
        for q in [0.0, 0.07, 0.3, 0.9] {
            let want = 1.0 - binary_entropy(q).unwrap();
            assert!((ic_z2_dephasing(1, q).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn log_space_agrees_at_the_switchover() {
        for q in [0.01, 0.1, 0.3, 0.5, 0.8] {
            let direct = {
                let p = DephasingSpectrumParams::new(30, q).unwrap();
                (0..=30)
                    .map(|k| binomial(30, k) * (xlog2x(p.beta(k).unwrap()) - xlog2x(p.lambda(k).unwrap())))
                    .sum::<f64>()
            };
            assert!((ic_z2_log_space(30, q) - direct).abs() < 1e-9, "q = {q}");
        }
        assert!(ic_z2_dephasing(60, 0.05).unwrap().is_finite());
    }
}
