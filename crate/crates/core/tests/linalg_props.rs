mod common;

use common::*;
use proptest::prelude::*;
use qsearch::linalg::{
    measurement_distribution, partial_trace, purity, schmidt_coefficients, Gate2, PureState,
};

fn subset_from_mask(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|q| mask & (1 << q) != 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_preserve_norm_and_invert(seed in any::<u64>(), n in 1usize..=7, target_seed in any::<usize>()) {
        let mut r = rng(seed);
        let s0 = random_state(&mut r, n);
        let g = Gate2::haar_random(&mut r);
        let target = target_seed % n;
        let mut s = s0.clone();
        s.apply(&g, target).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        s.apply(&g.dagger(), target).unwrap();
        prop_assert!(s.max_abs_diff(&s0) < 1e-12);
    }

    #[test]
    fn kernel_matches_dense_kronecker(seed in any::<u64>(), n in 1usize..=5, target_seed in any::<usize>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, n);
        let g = Gate2::haar_random(&mut r);
        let target = target_seed % n;
        let want = embed(&gate_matrix(&g), target, n) * to_vec(&s);
        let mut got = s.clone();
        got.apply(&g, target).unwrap();
        prop_assert!(max_diff(&want, got.amplitudes()) < 1e-12);
    }

    #[test]
    fn schmidt_symmetry(seed in any::<u64>(), n in 2usize..=6, mask in any::<u32>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, n);
        let mut side = subset_from_mask(mask, n);
        if side.is_empty() { side.push(0); }
        if side.len() == n { side.pop(); }
        let comp: Vec<usize> = (0..n).filter(|q| !side.contains(q)).collect();
        let pa = purity(&partial_trace(&s, &side).unwrap());
        let pb = purity(&partial_trace(&s, &comp).unwrap());
        prop_assert!((pa - pb).abs() < 1e-10);
    }

    #[test]
    fn marginals_are_consistent(seed in any::<u64>(), n in 1usize..=6, mask in any::<u32>(), rot in any::<usize>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, n);
        let mut subset = subset_from_mask(mask, n);
        let len = subset.len().max(1);
        subset.rotate_left(rot % len);
        let all: Vec<usize> = (0..n).collect();
        let full = measurement_distribution(&s, &all).unwrap();
        let direct = measurement_distribution(&s, &subset).unwrap();
        let mut marg = vec![0.0; 1 << subset.len()];
        for (i, p) in full.probabilities().iter().enumerate() {
            let y = subset.iter().fold(0, |acc, &q| (acc << 1) | ((i >> (n - 1 - q)) & 1));
            marg[y] += p;
        }
        for (a, b) in direct.probabilities().iter().zip(&marg) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        prop_assert!((direct.total() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn partial_trace_matches_brute_force() {
    let mut r = rng(11);
    for n in 3..=5 {
        let s = random_state(&mut r, n);
        for keep in [vec![0], vec![n - 1], vec![n - 1, 0], (0..n - 1).collect()] {
            let rho = partial_trace(&s, &keep).unwrap();
            let want = brute_partial_trace(s.amplitudes(), n, &keep);
            for i in 0..rho.dim() {
                for j in 0..rho.dim() {
                    assert!((rho.entry(i, j) - want[(i, j)]).norm() < 1e-12);
                }
            }
            assert!((rho.trace() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn schmidt_matches_svd_and_squares_sum_to_one() {
    let mut r = rng(5);
    for n in 3..=6 {
        for side in [vec![0], vec![1, n - 1], (1..n).collect::<Vec<_>>()] {
            let s = random_state(&mut r, n);
            let got = schmidt_coefficients(&s, &side).unwrap();
            let want = svd_schmidt(s.amplitudes(), n, &side);
            assert!((got.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-7, "{g} vs {w}");
            }
        }
    }
}

/// Rank from Schmidt coefficients versus rank from the eigenvalues of the
/// reduction on the given side, on a mix of generic, product and
/// partially-entangled states.
#[test]
fn schmidt_rank_agrees_with_partial_trace_rank() {
    let mut r = rng(2024);
    let threshold = 1e-10;
    for trial in 0..200 {
        let n = 2 + trial % 5;
        let s = match trial % 3 {
            0 => random_state(&mut r, n),
            1 => random_product_state(&mut r, n),
            _ => random_entangled_state(&mut r, n),
        };
        let side: Vec<usize> = (0..n).filter(|q| (trial >> q) & 1 == 1 && *q < n - 1).collect();
        let side = if side.is_empty() { vec![n - 1] } else { side };
        let from_schmidt = schmidt_coefficients(&s, &side)
            .unwrap()
            .iter()
            .filter(|c| *c * *c > threshold)
            .count();
        let from_trace = partial_trace(&s, &side)
            .unwrap()
            .eigenvalues()
            .iter()
            .filter(|&&l| l > threshold)
            .count();
        assert_eq!(from_schmidt, from_trace, "trial {trial}, side {side:?}");
        if trial % 3 == 1 {
            assert_eq!(from_schmidt, 1);
        }
    }
}

#[test]
fn hadamard_twice_is_identity_on_three_qubits() {
    let mut r = rng(3);
    for _ in 0..20 {
        let s0 = random_state(&mut r, 3);
        let mut s = s0.clone();
        for q in 0..3 {
            s.apply(&Gate2::hadamard(), q).unwrap();
            s.apply(&Gate2::hadamard(), q).unwrap();
        }
        assert!(s.max_abs_diff(&s0) < 1e-12);
    }
    let _ = PureState::basis(3, 0).unwrap();
}
