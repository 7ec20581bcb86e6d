mod common;

use common::*;
use qsearch::linalg::{Amplitude, PureState};
use qsearch::oracles::{
    inner_product_bit, zero_reflection_apply, ClassicalOracle, NaiveOracle, QuantumOracle,
    SophisticatedOracle,
};

fn check_basis_agreement<O: ClassicalOracle + QuantumOracle>(make: impl Fn() -> O, n: usize) {
    let mut classical = make();
    for x in 0..1usize << n {
        for b in [false, true] {
            let mut quantum = make();
            let mut s = PureState::basis(n + 1, 2 * x + b as usize).unwrap();
            quantum.apply(&mut s).unwrap();
            let out = classical.query(x, b).unwrap();
            assert_eq!(s, PureState::basis(n + 1, 2 * x + out as usize).unwrap());
        }
    }
}

#[test]
fn quantum_agrees_with_classical_on_basis_states() {
    for n in 1..=6 {
        for a in [0, 1, (1 << n) - 1, (1 << n) / 3] {
            check_basis_agreement(|| NaiveOracle::new(n, a).unwrap(), n);
            check_basis_agreement(|| SophisticatedOracle::new(n, a).unwrap(), n);
        }
    }
}

#[test]
fn oracles_are_involutions_and_norm_preserving() {
    let mut r = rng(8);
    for trial in 0..100 {
        let n = 1 + trial % 6;
        let a = trial % (1 << n);
        let s0 = random_state(&mut r, n + 1);
        let mut s = s0.clone();
        let mut naive = NaiveOracle::new(n, a).unwrap();
        naive.apply(&mut s).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        naive.apply(&mut s).unwrap();
        assert!(s.max_abs_diff(&s0) < 1e-12);
        let mut soph = SophisticatedOracle::new(n, a).unwrap();
        soph.apply(&mut s).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        soph.apply(&mut s).unwrap();
        assert!(s.max_abs_diff(&s0) < 1e-12);
    }
}

#[test]
fn sparse_action_matches_dense_permutation() {
    let mut r = rng(21);
    for n in 1..=6 {
        let a = (5 * n + 3) % (1 << n);
        let s = random_state(&mut r, n + 1);
        let want = controlled_not_matrix(n, |x| x == a) * to_vec(&s);
        let mut got = s.clone();
        NaiveOracle::new(n, a).unwrap().apply(&mut got).unwrap();
        assert!(max_diff(&want, got.amplitudes()) < 1e-15);
        let want = controlled_not_matrix(n, |x| inner_product_bit(x, a)) * to_vec(&s);
        let mut got = s.clone();
        SophisticatedOracle::new(n, a).unwrap().apply(&mut got).unwrap();
        assert!(max_diff(&want, got.amplitudes()) < 1e-15);
        let want = controlled_not_matrix(n, |x| x == 0) * to_vec(&s);
        let mut got = s;
        zero_reflection_apply(&mut got).unwrap();
        assert!(max_diff(&want, got.amplitudes()) < 1e-15);
    }
}

/// Uniform guess register with the ancilla in (|0⟩ − |1⟩)/√2.
fn psi1(n: usize) -> PureState {
    let dim = 2 << n;
    let amp = 1.0 / (dim as f64).sqrt();
    PureState::from_amplitudes(
        (0..dim)
            .map(|i| Amplitude::new(if i % 2 == 0 { amp } else { -amp }, 0.0))
            .collect(),
    )
    .unwrap()
}

#[test]
fn phase_kickback_on_uniform_state() {
    // n = 3: only x = a changes sign.
    let n = 3;
    let a = 6;
    let dense = controlled_not_matrix(n, |x| x == a) * to_vec(&psi1(n));
    let mut s = psi1(n);
    NaiveOracle::new(n, a).unwrap().apply(&mut s).unwrap();
    assert!(max_diff(&dense, s.amplitudes()) < 1e-15);
    let base = psi1(n);
    for x in 0..8 {
        let sign = if x == a { -1.0 } else { 1.0 };
        for b in 0..2 {
            assert!((s.amplitude(2 * x + b) - base.amplitude(2 * x + b) * sign).norm() < 1e-12);
        }
    }

    // n = 2, a = 11: guess signs (+, −, −, +).
    let mut s = psi1(2);
    SophisticatedOracle::new(2, 0b11).unwrap().apply(&mut s).unwrap();
    let signs: Vec<f64> = (0..4).map(|x| s.amplitude(2 * x).re.signum()).collect();
    assert_eq!(signs, [1.0, -1.0, -1.0, 1.0]);

    // Zero reflection negates x = 0 only.
    let mut s = psi1(2);
    zero_reflection_apply(&mut s).unwrap();
    let dense = controlled_not_matrix(2, |x| x == 0) * to_vec(&psi1(2));
    assert!(max_diff(&dense, s.amplitudes()) < 1e-15);
    let signs: Vec<f64> = (0..4).map(|x| s.amplitude(2 * x).re.signum()).collect();
    assert_eq!(signs, [-1.0, 1.0, 1.0, 1.0]);
}

#[test]
fn inner_product_psi2_formula() {
    for n in 1..=5 {
        for a in 0..1usize << n {
            let mut s = psi1(n);
            SophisticatedOracle::new(n, a).unwrap().apply(&mut s).unwrap();
            let amp = 1.0 / ((2 << n) as f64).sqrt();
            for x in 0..1usize << n {
                let sign = if inner_product_bit(x, a) { -1.0 } else { 1.0 };
                assert!((s.amplitude(2 * x) - Amplitude::new(sign * amp, 0.0)).norm() < 1e-12);
                assert!((s.amplitude(2 * x + 1) - Amplitude::new(-sign * amp, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn inner_product_is_linear() {
    for n in 1..=6 {
        for a in 0..1usize << n {
            for x in 0..1usize << n {
                for y in 0..1usize << n {
                    assert_eq!(
                        inner_product_bit(x ^ y, a),
                        inner_product_bit(x, a) ^ inner_product_bit(y, a)
                    );
                }
            }
        }
    }
}

#[test]
fn one_query_per_application_regardless_of_support() {
    let mut r = rng(99);
    let mut o = NaiveOracle::new(4, 9).unwrap();
    let mut basis = PureState::basis(5, 3).unwrap();
    o.apply(&mut basis).unwrap();
    assert_eq!(o.ledger().quantum_queries, 1);
    let mut wide = random_state(&mut r, 5);
    o.apply(&mut wide).unwrap();
    assert_eq!(o.ledger().quantum_queries, 2);
    let mut levels = vec![Amplitude::new(0.25, 0.0); 16];
    o.apply_phase(&mut levels).unwrap();
    assert_eq!(o.ledger().quantum_queries, 3);
    assert_eq!(o.ledger().classical_queries, 0);
    assert_eq!(o.ledger().reflections, 0);
}
