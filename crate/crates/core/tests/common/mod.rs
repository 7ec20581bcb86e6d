//! Dense brute-force reference implementations. Independent of the strided
//! kernels: every operator is materialized as a full matrix via explicit
//! Kronecker products, and Schmidt data come from an SVD.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use qsearch::linalg::{Gate2, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

pub fn gate_matrix(g: &Gate2) -> DMatrix<C> {
    DMatrix::from_row_slice(2, 2, g.entries())
}

pub fn hadamard() -> DMatrix<C> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(2, 2, &[c(h), c(h), c(h), c(-h)])
}

pub fn pauli_x() -> DMatrix<C> {
    DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

pub fn eye(dim: usize) -> DMatrix<C> {
    DMatrix::identity(dim, dim)
}

/// `I ⊗ … ⊗ g ⊗ … ⊗ I` with `g` on `target` (qubit 0 leftmost).
pub fn embed(g: &DMatrix<C>, target: usize, num_qubits: usize) -> DMatrix<C> {
    let mut m = DMatrix::from_element(1, 1, c(1.0));
    for q in 0..num_qubits {
        let f = if q == target { g.clone() } else { eye(2) };
        m = m.kronecker(&f);
    }
    m
}

/// Permutation `|x, b⟩ → |x, b ⊕ f(x)⟩` on `n + 1` qubits.
pub fn controlled_not_matrix(n: usize, f: impl Fn(usize) -> bool) -> DMatrix<C> {
    let dim = 2 << n;
    let mut m = DMatrix::from_element(dim, dim, c(0.0));
    for x in 0..1usize << n {
        for b in 0..2 {
            let out = 2 * x + (b ^ f(x) as usize);
            m[(out, 2 * x + b)] = c(1.0);
        }
    }
    m
}

pub fn to_vec(s: &PureState) -> DVector<C> {
    DVector::from_column_slice(s.amplitudes())
}

pub fn max_diff(a: &DVector<C>, b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Hadamard on every guess qubit `0..n` of an `n + 1` qubit register.
pub fn guess_hadamards(n: usize) -> DMatrix<C> {
    let mut m = hadamard();
    for _ in 1..n {
        m = m.kronecker(&hadamard());
    }
    m.kronecker(&eye(2))
}

/// The Grover circuit as dense matrices: returns the final state vector.
pub fn dense_grover(n: usize, a: usize, iterations: usize) -> DVector<C> {
    let dim = 2 << n;
    let mut v = DVector::from_element(dim, c(0.0));
    v[0] = c(1.0);
    v = embed(&pauli_x(), n, n + 1) * v;
    v = embed(&hadamard(), n, n + 1) * v;
    let hn = guess_hadamards(n);
    v = &hn * v;
    let oracle = controlled_not_matrix(n, |x| x == a);
    let diffusion = &hn * controlled_not_matrix(n, |x| x == 0) * &hn;
    for _ in 0..iterations {
        v = &oracle * v;
        v = &diffusion * v;
    }
    v
}

pub fn dense_bv_states(n: usize, a: usize) -> [DVector<C>; 4] {
    let dim = 2 << n;
    let mut psi0 = DVector::from_element(dim, c(0.0));
    psi0[0] = c(1.0);
    let hn = guess_hadamards(n);
    let psi1 = &hn * (embed(&hadamard(), n, n + 1) * (embed(&pauli_x(), n, n + 1) * &psi0));
    let psi2 = controlled_not_matrix(n, |x| (x & a).count_ones() % 2 == 1) * &psi1;
    let psi3 = &hn * &psi2;
    [psi0, psi1, psi2, psi3]
}

/// Probability of guess `x` for an `n + 1` qubit vector.
pub fn guess_prob(v: &DVector<C>, x: usize) -> f64 {
    v[2 * x].norm_sqr() + v[2 * x + 1].norm_sqr()
}

/// Reduced density matrix on `keep` by explicit double sum over all basis
/// pairs that agree on the traced-out qubits.
pub fn brute_partial_trace(v: &[C], num_qubits: usize, keep: &[usize]) -> DMatrix<C> {
    let bit = |i: usize, q: usize| (i >> (num_qubits - 1 - q)) & 1;
    let k = keep.len();
    let mut rho = DMatrix::from_element(1 << k, 1 << k, c(0.0));
    let dim = v.len();
    for i in 0..dim {
        for j in 0..dim {
            let same_rest = (0..num_qubits)
                .filter(|q| !keep.contains(q))
                .all(|q| bit(i, q) == bit(j, q));
            if !same_rest {
                continue;
            }
            let ri = keep.iter().fold(0, |acc, &q| (acc << 1) | bit(i, q));
            let rj = keep.iter().fold(0, |acc, &q| (acc << 1) | bit(j, q));
            rho[(ri, rj)] += v[i] * v[j].conj();
        }
    }
    rho
}

/// Schmidt coefficients via SVD of the coefficient matrix `ψ[side][rest]`.
pub fn svd_schmidt(v: &[C], num_qubits: usize, side: &[usize]) -> Vec<f64> {
    let rest: Vec<usize> = (0..num_qubits).filter(|q| !side.contains(q)).collect();
    let bit = |i: usize, q: usize| (i >> (num_qubits - 1 - q)) & 1;
    let mut m = DMatrix::from_element(1 << side.len(), 1 << rest.len(), c(0.0));
    for (i, a) in v.iter().enumerate() {
        let r = side.iter().fold(0, |acc, &q| (acc << 1) | bit(i, q));
        let s = rest.iter().fold(0, |acc, &q| (acc << 1) | bit(i, q));
        m[(r, s)] = *a;
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Greedy product test: peel the leading qubit off as a factor, repeatedly.
/// Returns true when every qubit factors out with residual below `tol`.
pub fn greedy_is_product(v: &[C], tol: f64) -> bool {
    let mut cur: Vec<C> = v.to_vec();
    while cur.len() > 2 {
        let half = cur.len() / 2;
        let (u, w) = cur.split_at(half);
        let nu: f64 = u.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let nw: f64 = w.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let (big, small, nb) = if nu >= nw { (u, w, nu) } else { (w, u, nw) };
        let rest: Vec<C> = big.iter().map(|a| a / nb).collect();
        let overlap: C = rest.iter().zip(small).map(|(r, s)| r.conj() * s).sum();
        let residual: f64 = rest
            .iter()
            .zip(small)
            .map(|(r, s)| (s - overlap * r).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual > tol {
            return false;
        }
        cur = rest;
    }
    true
}

pub fn random_state<R: Rng>(rng: &mut R, num_qubits: usize) -> PureState {
    let amps = (0..1usize << num_qubits)
        .map(|_| C::new(rng.sample(rand_distr::StandardNormal), rng.sample(rand_distr::StandardNormal)))
        .collect();
    PureState::normalized(amps).unwrap()
}

pub fn random_product_state<R: Rng>(rng: &mut R, num_qubits: usize) -> PureState {
    let mut s = random_state(rng, 1);
    for _ in 1..num_qubits {
        s = s.tensor(&random_state(rng, 1)).unwrap();
    }
    s
}

/// Random product state with `|+⟩` on two random qubits, then a
/// controlled-`i` phase between them: entangled across both of their cuts.
pub fn random_entangled_state<R: Rng>(rng: &mut R, num_qubits: usize) -> PureState {
    let q1 = rng.random_range(0..num_qubits);
    let q2 = (q1 + rng.random_range(1..num_qubits)) % num_qubits;
    let plus = PureState::normalized(vec![c(1.0), c(1.0)]).unwrap();
    let factor = |q: usize, rng: &mut R| if q == q1 || q == q2 { plus.clone() } else { random_state(rng, 1) };
    let mut p = factor(0, rng);
    for q in 1..num_qubits {
        p = p.tensor(&factor(q, rng)).unwrap();
    }
    let bit = |i: usize, q: usize| (i >> (num_qubits - 1 - q)) & 1;
    let amps = p
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &a)| if bit(i, q1) == 1 && bit(i, q2) == 1 { a * C::new(0.0, 1.0) } else { a })
        .collect();
    PureState::from_amplitudes(amps).unwrap()
}
