mod common;

use common::h2;
use orum_core::analytic::{
    beta_weight, binary_entropy, ic_maximally_mixed_dephasing, ic_z2_dephasing, DephasingSpectrumParams,
};
use orum_core::channels::{orum_program, NoiseParams};
use orum_core::coherent::{coherent_information, maximally_mixed_source, z2_source};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[test]
fn closed_forms_match_simulation() {
    for n in 1..=5 {
        for step in 0..=20 {
            let qz = step as f64 / 20.0;
            let prog = |reg| orum_program(reg, NoiseParams::new(0.0, qz).unwrap()).unwrap();
            let mm = maximally_mixed_source(n).unwrap();
            let z2 = z2_source(n, None).unwrap();
            let mm_sim = coherent_information(&mm, &prog(mm.register())).unwrap().i_c;
            let z2_sim = coherent_information(&z2, &prog(z2.register())).unwrap().i_c;
            assert!((mm_sim - ic_maximally_mixed_dephasing(n, qz).unwrap()).abs() < 1e-10, "mm n={n} q={qz}");
            assert!((z2_sim - ic_z2_dephasing(n, qz).unwrap()).abs() < 1e-10, "z2 n={n} q={qz}");
        }
    }
}

#[test]
fn closed_form_examples() {
    assert!((ic_maximally_mixed_dephasing(3, 0.1).unwrap() - 3.0 * (1.0 - h2(0.1))).abs() < 1e-12);
    assert!((ic_z2_dephasing(1, 0.3).unwrap() - ic_maximally_mixed_dephasing(1, 0.3).unwrap()).abs() < 1e-12);
    assert!((ic_z2_dephasing(4, 0.0).unwrap() - 1.0).abs() < 1e-12);
    assert!(ic_z2_dephasing(5, 0.5).unwrap().abs() < 1e-9);
    assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
    assert!(binary_entropy(1.5).is_err());
}

#[test]
fn large_n_stays_finite() {
    let v = ic_z2_dephasing(60, 0.05).unwrap();
    assert!(v.is_finite() && v > 0.0 && v <= 1.0);
}

proptest! {
    #[test]
    fn lambda_symmetry_and_normalization(n in 1usize..40, qz in 0.0f64..=1.0) {
        let p = DephasingSpectrumParams::new(n, qz).unwrap();
        let mut total = 0.0;
        for k in 0..=n {
            prop_assert!((p.lambda(k).unwrap() - p.lambda(n - k).unwrap()).abs() < 1e-15);
            total += binom(n, k) * beta_weight(k, n, qz).unwrap();
        }
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn parity_closed_form_is_symmetric_in_q(n in 1usize..30, qz in 0.0f64..=1.0) {
        let a = ic_z2_dephasing(n, qz).unwrap();
        let b = ic_z2_dephasing(n, 1.0 - qz).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}
