mod common;

use num_complex::Complex64 as C64;
use orum_core::channels::{ChannelProgram, NoiseParams, Pauli, PauliString};
use orum_core::coherent::z2_source;
use orum_core::qec::{
    classical_z2_code, correctability_check, encode_logical, quantum_z2_code, recovery_channel, run_dynamics,
    CodeParams, SyndromeRecovery,
};
use orum_core::tensor::{outer_product, CMatrix, DensityMatrix, QubitRegister};
use proptest::prelude::*;

fn weight_patterns(n: usize, max_w: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .filter(|b| (b.count_ones() as usize) <= max_w && *b != 0)
        .map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect())
        .collect()
}

fn generator_expectations(code: &orum_core::qec::StabilizerCode) -> Vec<f64> {
    let src = encode_logical(code).unwrap();
    let rho = outer_product(src.psi());
    code.generators()
        .iter()
        .map(|g| {
            let gm = g.shifted(1).matrix(1 + code.n_phys()).unwrap();
            (&gm * rho.matrix()).trace().re
        })
        .collect()
}

#[test]
fn three_qubit_syndromes_are_unique_and_decoded() {
    let code = classical_z2_code(3).unwrap();
    assert_eq!(code.generators().len(), 2);
    assert!(code.correction(0).unwrap().is_identity());
    let mut seen = std::collections::HashSet::new();
    for q in 0..3 {
        let e = PauliString::single(q, Pauli::Z);
        let s = code.syndrome_of(&e);
        assert!(s != 0 && seen.insert(s));
        assert_eq!(code.correction(s).unwrap(), &e);
    }
    // First check violated only: Z on qubit 0.
    assert_eq!(code.correction(0b01).unwrap(), &PauliString::single(0, Pauli::Z));
}

#[test]
fn classical_distance() {
    let c3 = classical_z2_code(3).unwrap();
    for q in 0..3 {
        assert!(correctability_check(&c3, &PauliString::single(q, Pauli::Z)).unwrap());
    }
    for pair in weight_patterns(3, 2).into_iter().filter(|p| p.len() == 2) {
        assert!(!correctability_check(&c3, &PauliString::z_on(pair)).unwrap());
    }
    let c5 = classical_z2_code(5).unwrap();
    let low = weight_patterns(5, 2);
    assert_eq!(low.len(), 15);
    for p in low {
        assert!(correctability_check(&c5, &PauliString::z_on(p.clone())).unwrap(), "{p:?}");
    }
    assert!(!correctability_check(&c5, &PauliString::z_on([0, 1, 2])).unwrap());
    assert!(classical_z2_code(4).is_err());
}

#[test]
fn nine_qubit_code_corrects_every_single_qubit_pauli() {
    let code = quantum_z2_code(CodeParams::new(3, 3).unwrap()).unwrap();
    assert_eq!(code.generators().len(), 8);
    assert_eq!(code.distance(), 3);
    let mut count = 0;
    for q in 0..9 {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            assert!(correctability_check(&code, &PauliString::single(q, p)).unwrap(), "{p:?} on {q}");
            count += 1;
        }
    }
    assert_eq!(count, 27);
    // Z on a whole block is a logical operator, so it is not undone.
    assert!(!correctability_check(&code, &PauliString::z_on(0..3)).unwrap());
}

#[test]
fn degenerate_code_shapes() {
    let trivial = quantum_z2_code(CodeParams::new(1, 1).unwrap()).unwrap();
    assert!(trivial.generators().is_empty());
    let single_block = quantum_z2_code(CodeParams::new(3, 1).unwrap()).unwrap();
    assert_eq!(single_block.generators(), classical_z2_code(3).unwrap().generators());
    assert!(CodeParams::new(2, 3).is_err());
    assert!(quantum_z2_code(CodeParams::new(3, 2).unwrap()).is_err());
}

#[test]
fn encoding_is_stabilized() {
    for code in [
        classical_z2_code(3).unwrap(),
        classical_z2_code(5).unwrap(),
        quantum_z2_code(CodeParams::new(3, 3).unwrap()).unwrap(),
    ] {
        assert!(generator_expectations(&code).iter().all(|e| (e - 1.0).abs() < 1e-12));
        let purity = encode_logical(&code).unwrap().system_state().unwrap().purity();
        assert!((purity - 0.5).abs() < 1e-12);
    }
}

#[test]
fn repetition_encoding_is_the_parity_source() {
    let encoded = encode_logical(&classical_z2_code(3).unwrap()).unwrap();
    let parity = z2_source(3, None).unwrap();
    assert!((encoded.psi().inner(parity.psi()).norm() - 1.0).abs() < 1e-12);
}

#[test]
fn explicit_kraus_form_matches_recovery_map() {
    for code in [classical_z2_code(3).unwrap(), classical_z2_code(5).unwrap()] {
        let rec = recovery_channel(&code);
        let kraus = rec.to_kraus_channel().unwrap();
        assert!(kraus.completeness_error() < 1e-10);
        let projectors: CMatrix = (0..1usize << code.generators().len())
            .map(|s| rec.syndrome_projector(s).unwrap())
            .fold(CMatrix::zeros(1 << code.n_phys()), |acc, p| &acc + &p);
        assert!(projectors.max_abs_diff(&CMatrix::identity(1 << code.n_phys())) < 1e-10);
        let rho = common::random_density(0, code.n_phys(), 1, 42);
        let a = rec.apply(&rho).unwrap();
        let b = kraus.apply(&rho).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12);
    }
}

#[test]
fn codespace_states_pass_through_recovery() {
    let code = quantum_z2_code(CodeParams::new(3, 3).unwrap()).unwrap();
    let rho = outer_product(encode_logical(&code).unwrap().psi());
    let out = SyndromeRecovery::new(&code, 1).apply(&rho).unwrap();
    assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
}

#[test]
fn dynamics_examples() {
    let c3 = classical_z2_code(3).unwrap();
    let q9 = quantum_z2_code(CodeParams::new(3, 3).unwrap()).unwrap();
    for code in [&c3, &q9] {
        let still = run_dynamics(code, NoiseParams::new(0.0, 0.0).unwrap(), 3, true).unwrap();
        assert_eq!(still.len(), 4);
        assert!(still.iter().all(|r| (r.i_c - 1.0).abs() < 1e-10));
    }
    let qec = run_dynamics(&c3, NoiseParams::new(0.0, 0.1).unwrap(), 3, true).unwrap();
    assert!(qec.iter().all(|r| r.i_c > 0.5), "{qec:?}");
}

#[test]
fn unprotected_information_only_decays() {
    let c3 = classical_z2_code(3).unwrap();
    for (qu, qz) in [(0.0, 0.1), (0.01, 0.015), (0.05, 0.2)] {
        let recs = run_dynamics(&c3, NoiseParams::new(qu, qz).unwrap(), 6, false).unwrap();
        assert!(recs.windows(2).all(|w| w[1].i_c <= w[0].i_c + 1e-10), "({qu}, {qz})");
    }
}

#[test]
fn correction_beats_no_correction_after_n_steps() {
    for n in [3, 5] {
        let code = classical_z2_code(n).unwrap();
        for qz in [0.02, 0.1, 0.2] {
            let p = NoiseParams::new(0.0, qz).unwrap();
            let with = run_dynamics(&code, p, n, true).unwrap()[n].i_c;
            let without = run_dynamics(&code, p, n, false).unwrap()[n].i_c;
            assert!(with > without, "n={n} q_z={qz}: {with} vs {without}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn recovery_is_idempotent_and_trace_preserving(seed in any::<u64>(), quantum in any::<bool>()) {
        let code = if quantum {
            quantum_z2_code(CodeParams::new(3, 1).unwrap()).unwrap()
        } else {
            classical_z2_code(5).unwrap()
        };
        let rho = common::random_density(1, code.n_phys(), 0, seed);
        let rec = SyndromeRecovery::new(&code, 1);
        let once = rec.apply(&rho).unwrap();
        let twice = rec.apply(&once).unwrap();
        prop_assert!((once.matrix().trace() - C64::new(1.0, 0.0)).norm() < 1e-10);
        prop_assert!(twice.matrix().max_abs_diff(once.matrix()) < 1e-10);
    }
}

#[test]
fn recovery_never_touches_reference_by_construction() {
    let code = classical_z2_code(3).unwrap();
    let rho = DensityMatrix::maximally_mixed(QubitRegister::new(1, 3).unwrap());
    let mut prog = ChannelProgram::new();
    prog.push(SyndromeRecovery::new(&code, 0));
    assert!(prog.check_avoids_reference(1).is_err());
    assert!(SyndromeRecovery::new(&code, 1).apply(&rho).is_ok());
}

#[test]
fn nine_qubit_code_decays_more_slowly() {
    let noise = NoiseParams::new(0.01, 0.015).unwrap();
    let q = run_dynamics(&quantum_z2_code(CodeParams::new(3, 3).unwrap()).unwrap(), noise, 9, true).unwrap();
    let c = run_dynamics(&classical_z2_code(3).unwrap(), noise, 9, true).unwrap();
    for t in 2..=9 {
        let q_loss = q[t - 1].i_c - q[t].i_c;
        let c_loss = c[t - 1].i_c - c[t].i_c;
        assert!(q_loss < c_loss, "step {t}: {q_loss} vs {c_loss}");
    }
    assert!((4..=9).all(|t| q[t].i_c > c[t].i_c));
}
