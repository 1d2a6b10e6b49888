mod common;

use common::{c, h2};
use orum_core::channels::{orum_program, ChannelProgram, NoiseParams, Pauli};
use orum_core::coherent::{
    cat_crossover_sweep, cat_source, coherent_information, coherent_information_of, coherent_information_of_output,
    depolarizing_program, maximally_mixed_source, z2_source,
};
use orum_core::optimizer::random_state;
use orum_core::tensor::{outer_product, CMatrix, DensityMatrix, QubitRegister};
use proptest::prelude::*;

#[test]
fn single_qubit_dephasing_value() {
    let src = maximally_mixed_source(1).unwrap();
    let prog = orum_program(src.register(), NoiseParams::new(0.0, 0.1).unwrap()).unwrap();
    let ic = coherent_information(&src, &prog).unwrap();
    assert!((ic.i_c - (1.0 - h2(0.1))).abs() < 1e-10);
    assert!((ic.i_c - 0.5310044064107188).abs() < 1e-10);
}

#[test]
fn noiseless_sources_carry_their_entropy() {
    let empty = ChannelProgram::new();
    assert!((coherent_information(&maximally_mixed_source(3).unwrap(), &empty).unwrap().i_c - 3.0).abs() < 1e-10);
    assert!((coherent_information(&z2_source(3, None).unwrap(), &empty).unwrap().i_c - 1.0).abs() < 1e-10);
    assert!((coherent_information(&cat_source(5).unwrap(), &empty).unwrap().i_c - 1.0).abs() < 1e-10);
}

#[test]
fn cat_under_depolarizing_matches_pauli_mixture() {
    // Explicit sum over all 4^3 Pauli error patterns, with dense operators.
    let q = 0.1;
    let src = cat_source(3).unwrap();
    let rho = outer_product(src.psi()).into_matrix();
    let mut out = CMatrix::zeros(16);
    for pattern in 0..64usize {
        let mut op = CMatrix::identity(2);
        let mut w = 1.0;
        for site in 0..3 {
            let p = Pauli::ALL[(pattern >> (2 * site)) & 3];
            w *= if p == Pauli::I { 1.0 - 0.75 * q } else { q / 4.0 };
            op = op.kron(&p.matrix());
        }
        out = &out + &(&(&op * &rho) * &op.adjoint()).scale(c(w));
    }
    let joint = DensityMatrix::new(src.register(), out).unwrap();
    let want = coherent_information_of_output(&joint).unwrap().i_c;
    let got = coherent_information(&src, &depolarizing_program(src.register(), q).unwrap()).unwrap().i_c;
    assert!((got - want).abs() < 1e-10, "{got} vs {want}");
}

#[test]
fn sweep_flags_one_maximum_per_noise_rate() {
    let qs = [0.0, 0.1, 0.26, 0.3];
    let rows = cat_crossover_sweep(5, &qs).unwrap();
    assert_eq!(rows.len(), 12);
    for chunk in rows.chunks(3) {
        assert_eq!(chunk.iter().filter(|r| r.is_argmax).count(), 1);
        assert_eq!(chunk.iter().map(|r| r.n).collect::<Vec<_>>(), vec![1, 3, 5]);
    }
    // q = 0: the single-qubit source gives 1 per use and wins the tie.
    assert!(rows[0].is_argmax && (rows[0].ic_per_use - 1.0).abs() < 1e-10);
    assert!(cat_crossover_sweep(8, &qs).is_err());
}

#[test]
fn ordering_across_crossovers() {
    let per_use = |q: f64| {
        let rows = cat_crossover_sweep(5, &[q]).unwrap();
        (rows[0].ic_per_use, rows[1].ic_per_use, rows[2].ic_per_use)
    };
    let (mm, c3, c5) = per_use(0.2);
    assert!(mm > c3 && c3 > c5);
    let (mm, c3, _) = per_use(0.2525);
    assert!(c3 > mm && c3 > 0.0);
    let (mm, c3, c5) = per_use(0.2535);
    assert!(c5 > c3 && c3 > 0.0 && mm < 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coherent_information_is_bounded(seed in any::<u64>(), qu in 0.0f64..=1.0, qz in 0.0f64..=1.0) {
        let reg = QubitRegister::purified(2).unwrap();
        let psi = random_state(reg, seed);
        let prog = orum_program(reg, NoiseParams::new(qu, qz).unwrap()).unwrap();
        let ic = coherent_information_of(&psi, &prog).unwrap().i_c;
        prop_assert!(ic.abs() <= 2.0 + 1e-9);
    }

    #[test]
    fn data_processing(seed in any::<u64>(), qu in 0.0f64..0.5, qz in 0.0f64..0.5) {
        let reg = QubitRegister::purified(2).unwrap();
        let psi = random_state(reg, seed);
        let one = orum_program(reg, NoiseParams::new(qu, qz).unwrap()).unwrap();
        let two = one.clone().then(one.clone());
        let a = coherent_information_of(&psi, &one).unwrap().i_c;
        let b = coherent_information_of(&psi, &two).unwrap().i_c;
        prop_assert!(b <= a + 1e-9, "{b} > {a}");
    }

    #[test]
    fn parity_source_phases_do_not_matter(
        even in proptest::collection::vec(-3.2f64..3.2, 4),
        odd in proptest::collection::vec(-3.2f64..3.2, 4),
        qz in 0.0f64..=1.0,
    ) {
        let plain = z2_source(3, None).unwrap();
        let phased = z2_source(3, Some((even, odd))).unwrap();
        let prog = orum_program(plain.register(), NoiseParams::new(0.0, qz).unwrap()).unwrap();
        let a = coherent_information(&plain, &prog).unwrap().i_c;
        let b = coherent_information(&phased, &prog).unwrap().i_c;
        prop_assert!((a - b).abs() < 1e-9);
    }
}
