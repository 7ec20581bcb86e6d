//! The same search circuits on a single `2^n`-level system.
//!
//! A [`QuditState`] is a bare amplitude vector over levels with no tensor
//! structure: it exposes level indices only, never qubit indices, and so has
//! no notion of entanglement. Every circuit layer is applied as one dense or
//! diagonal `2^n × 2^n` transform, and the runner records how many nonzero
//! entries those transforms needed.

use crate::algorithms::{default_grover_iterations, SearchResult};
use crate::entanglement::{analyze_qubit, EntanglementStatus, Tolerances};
use crate::linalg::{Amplitude, Distribution, PureState, EXACT_TOL};
use crate::oracles::{QuantumOracle, QueryLedger};
use crate::{Error, Result};

/// State of one `dim`-level particle.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState {
    amplitudes: Vec<Amplitude>,
}

impl QuditState {
    pub fn level(dim: usize, level: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!("qudit dimension {dim} < 2")));
        }
        if level >= dim {
            return Err(Error::InvalidParameter(format!(
                "level {level} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![Amplitude::new(0.0, 0.0); dim];
        amplitudes[level] = Amplitude::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidParameter("qudit dimension < 2".into()));
        }
        let s = Self { amplitudes };
        let deviation = (s.norm_sqr() - 1.0).abs();
        if deviation > EXACT_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        crate::par::chunked_sum(&self.amplitudes, |c| c.iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn distribution(&self) -> Distribution {
        Distribution::from_probabilities(self.amplitudes.iter().map(|a| a.norm_sqr()).collect())
    }

    pub fn apply(&mut self, u: &DenseUnitary) -> Result<()> {
        if u.dim != self.dim() {
            return Err(Error::InvalidParameter(format!(
                "{}-level transform on a {}-level state",
                u.dim,
                self.dim()
            )));
        }
        self.amplitudes = u.mul_vec(&self.amplitudes);
        Ok(())
    }

    /// Negate the amplitude of each listed level.
    pub fn negate_level(&mut self, level: usize) -> Result<()> {
        let dim = self.dim();
        let a = self
            .amplitudes
            .get_mut(level)
            .ok_or_else(|| Error::InvalidParameter(format!("level {level} >= {dim}")))?;
        *a = -*a;
        Ok(())
    }
}

/// Dense `dim × dim` transform, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Amplitude>,
}

impl DenseUnitary {
    /// Image of `H^{⊗n}` under the big-endian level isomorphism:
    /// entry `(i, j) = (-1)^{popcount(i & j)} / √N`.
    pub fn hadamard_image(n: usize) -> Self {
        let dim = 1usize << n;
        let s = 1.0 / (dim as f64).sqrt();
        let entries = (0..dim * dim)
            .map(|k| {
                let (i, j) = (k / dim, k % dim);
                let sign = if (i & j).count_ones() % 2 == 0 { s } else { -s };
                Amplitude::new(sign, 0.0)
            })
            .collect();
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim + col]
    }

    pub fn nonzero_entries(&self) -> u128 {
        self.entries.iter().filter(|a| a.norm_sqr() > 0.0).count() as u128
    }

    fn mul_vec(&self, v: &[Amplitude]) -> Vec<Amplitude> {
        let row = |i: usize| -> Amplitude {
            self.entries[i * self.dim..(i + 1) * self.dim]
                .iter()
                .zip(v)
                .map(|(m, x)| m * x)
                .sum()
        };
        #[cfg(feature = "parallel")]
        {
            if self.dim * self.dim >= crate::par::PAR_THRESHOLD && crate::par::enabled() {
                use rayon::prelude::*;
                return (0..self.dim).into_par_iter().map(row).collect();
            }
        }
        (0..self.dim).map(row).collect()
    }
}

/// Split `state` (guess register ⊗ ancilla on `n + 1` qubits) into its guess
/// factor and read it as a `2^n`-level state, level `x` ↔ basis string `x`.
///
/// The ancilla factor `φ` is fixed up to phase by making its larger component
/// real and positive, so `Σ_x |x⟩ (|0⟩ - |1⟩)/√(2N)` embeds as the uniform
/// state with positive amplitudes.
pub fn embed_as_qudit(state: &PureState, tol: &Tolerances) -> Result<QuditState> {
    let n = state.num_qubits() - 1;
    if n == 0 {
        return Err(Error::DegenerateCut);
    }
    let ancilla = analyze_qubit(state, n, tol)?;
    if !ancilla.is_product {
        return Err(Error::NotFactorable {
            purity: ancilla.purity,
        });
    }
    let rho = crate::linalg::single_qubit_reduction(state, n)?;
    let (r00, r11) = (rho.entry(0, 0).re, rho.entry(1, 1).re);
    let phi = if r00 >= r11 {
        [Amplitude::new(r00.sqrt(), 0.0), rho.entry(1, 0) / r00.sqrt()]
    } else {
        [rho.entry(0, 1) / r11.sqrt(), Amplitude::new(r11.sqrt(), 0.0)]
    };
    let amps = state.amplitudes();
    let guess: Vec<Amplitude> = (0..1usize << n)
        .map(|x| phi[0].conj() * amps[2 * x] + phi[1].conj() * amps[2 * x + 1])
        .collect();
    QuditState::from_amplitudes(guess)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuditAlgorithm {
    Grover,
    BernsteinVazirani,
}

/// Nonzero entries of every transform a qudit run applied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpecificationCensus {
    pub dense_layers: u64,
    pub diagonal_layers: u64,
    pub nonzero_entries: u128,
}

#[derive(Debug, Clone)]
pub struct QuditSearchResult {
    pub distribution: Distribution,
    pub top_guess: usize,
    pub success_probability: f64,
    pub ledger: QueryLedger,
    pub iterations: usize,
    pub census: SpecificationCensus,
    pub final_state: QuditState,
}

impl QuditSearchResult {
    /// Always [`EntanglementStatus::NotApplicable`].
    pub fn entanglement(&self) -> EntanglementStatus {
        EntanglementStatus::NotApplicable
    }

    /// Largest per-outcome difference from a qubit-register run.
    pub fn max_deviation_from(&self, qubit_run: &SearchResult) -> f64 {
        self.distribution.max_abs_diff(&qubit_run.distribution)
    }
}

/// Run Grover (with `iterations`, default `⌊(π/4)√N⌋`) or Bernstein-Vazirani
/// on a single `2^n`-level system. Database queries go through the oracle's
/// phase image; the diffusion reflection about level 0 is a diagonal flip.
pub fn run_on_qudit<O: QuantumOracle + ?Sized>(
    algorithm: QuditAlgorithm,
    n: usize,
    oracle: &mut O,
    iterations: Option<usize>,
) -> Result<QuditSearchResult> {
    if n != oracle.width() {
        return Err(Error::WidthMismatch {
            expected: oracle.width(),
            found: n,
        });
    }
    let dim = 1usize << n;
    let hadamard = DenseUnitary::hadamard_image(n);
    let h_entries = hadamard.nonzero_entries();
    let mut census = SpecificationCensus::default();
    let dense = |state: &mut QuditState, census: &mut SpecificationCensus| -> Result<()> {
        state.apply(&hadamard)?;
        census.dense_layers += 1;
        census.nonzero_entries += h_entries;
        Ok(())
    };
    let diagonal = |census: &mut SpecificationCensus| {
        census.diagonal_layers += 1;
        census.nonzero_entries += dim as u128;
    };

    let mut state = QuditState::level(dim, 0)?;
    dense(&mut state, &mut census)?;
    let iterations = match algorithm {
        QuditAlgorithm::BernsteinVazirani => {
            oracle.apply_phase(&mut state.amplitudes)?;
            diagonal(&mut census);
            dense(&mut state, &mut census)?;
            1
        }
        QuditAlgorithm::Grover => {
            let k = iterations.unwrap_or_else(|| default_grover_iterations(n));
            for _ in 0..k {
                oracle.apply_phase(&mut state.amplitudes)?;
                diagonal(&mut census);
                dense(&mut state, &mut census)?;
                state.negate_level(0)?;
                diagonal(&mut census);
                dense(&mut state, &mut census)?;
            }
            k
        }
    };
    let distribution = state.distribution();
    let top_guess = distribution.most_likely();
    Ok(QuditSearchResult {
        success_probability: distribution.prob(top_guess),
        distribution,
        top_guess,
        ledger: oracle.ledger(),
        iterations,
        census,
        final_state: state,
    })
}

/// Resources for realizing a `2^n`-level register directly.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionReport {
    pub n: usize,
    pub detuning_exponent: f64,
    /// Smallest adjacent-level spacing, `N^{-p}` in relative units.
    pub min_level_spacing: f64,
    /// `1 / min_level_spacing`.
    pub required_resolution: f64,
    /// `log2(required_resolution) = p·n`.
    pub resolution_bits: f64,
    /// Nonzero entries of the dense Bernstein-Vazirani layers on the qudit:
    /// two Hadamard images (`N²` each) and the oracle phase diagonal (`N`).
    pub nontrivial_amplitude_count: u128,
    /// Bounded-size gates on the guess register of the qubit circuit
    /// (two Hadamard layers of `n` gates).
    pub poly_local_gate_count: u64,
    /// Gates per Hadamard layer in the qubit circuit.
    pub gates_per_layer: u64,
    /// Entries of those gates (4 per 2×2 gate).
    pub poly_local_entry_count: u64,
}

impl PrecisionReport {
    /// `nontrivial_amplitude_count / poly_local_entry_count`.
    pub fn census_ratio(&self) -> f64 {
        self.nontrivial_amplitude_count as f64 / self.poly_local_entry_count as f64
    }
}

/// Physical resources not quantified by [`precision_cost`].
pub const UNMODELED_RESOURCES: &[&str] = &["energy"];

/// Default detuning exponent (hydrogenic level spacing falls as the inverse
/// cube of the principal quantum number).
pub const DEFAULT_DETUNING_EXPONENT: f64 = 3.0;

pub fn precision_cost(n: usize, p: f64) -> Result<PrecisionReport> {
    if n == 0 || n > 60 {
        return Err(Error::InvalidParameter(format!("n = {n} outside 1..=60")));
    }
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "detuning exponent {p} must be positive"
        )));
    }
    let records = 1u128 << n;
    let min_level_spacing = (-(p * n as f64)).exp2();
    let required_resolution = 1.0 / min_level_spacing;
    let gates_per_layer = n as u64;
    Ok(PrecisionReport {
        n,
        detuning_exponent: p,
        min_level_spacing,
        required_resolution,
        resolution_bits: required_resolution.log2(),
        nontrivial_amplitude_count: 2 * records * records + records,
        poly_local_gate_count: 2 * gates_per_layer,
        gates_per_layer,
        poly_local_entry_count: 8 * gates_per_layer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{run_bv, run_grover, PSI1, PSI2};
    use crate::oracles::{NaiveOracle, SophisticatedOracle};

    #[test]
    fn embeds_uniform_and_sign_patterns() {
        let tol = Tolerances::default();
        let mut o = SophisticatedOracle::new(2, 0b11).unwrap();
        let r = run_bv(2, &mut o).unwrap();
        let q = embed_as_qudit(r.trajectory.get(PSI1).unwrap(), &tol).unwrap();
        assert!(q.amplitudes().iter().all(|a| (a - Amplitude::new(0.5, 0.0)).norm() < EXACT_TOL));
        let q = embed_as_qudit(r.trajectory.get(PSI2).unwrap(), &tol).unwrap();
        let re: Vec<f64> = q.amplitudes().iter().map(|a| a.re).collect();
        for (got, want) in re.iter().zip([0.5, -0.5, -0.5, 0.5]) {
            assert!((got - want).abs() < EXACT_TOL);
        }
    }

    #[test]
    fn embeds_basis_state_as_level() {
        let s = PureState::basis(4, 2 * 0b101).unwrap();
        let q = embed_as_qudit(&s, &Tolerances::default()).unwrap();
        assert_eq!(q, QuditState::level(8, 0b101).unwrap());
    }

    #[test]
    fn refuses_entangled_ancilla() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Amplitude::new(0.0, 0.0);
        let bell = PureState::from_amplitudes(vec![Amplitude::new(h, 0.0), z, z, Amplitude::new(h, 0.0)]).unwrap();
        assert!(matches!(
            embed_as_qudit(&bell, &Tolerances::default()),
            Err(Error::NotFactorable { .. })
        ));
    }

    #[test]
    fn qudit_runs_match_qubit_runs() {
        let mut o = SophisticatedOracle::new(3, 0b101).unwrap();
        let q = run_on_qudit(QuditAlgorithm::BernsteinVazirani, 3, &mut o, None).unwrap();
        assert_eq!(q.top_guess, 0b101);
        assert!((q.success_probability - 1.0).abs() < EXACT_TOL);
        assert_eq!(q.ledger.quantum_queries, 1);
        assert_eq!(q.entanglement(), EntanglementStatus::NotApplicable);

        let mut o = NaiveOracle::new(2, 2).unwrap();
        let q = run_on_qudit(QuditAlgorithm::Grover, 2, &mut o, None).unwrap();
        let mut o = NaiveOracle::new(2, 2).unwrap();
        let r = run_grover(2, &mut o, None).unwrap();
        assert!(q.max_deviation_from(&r) < EXACT_TOL);
        assert!((q.distribution.prob(2) - 1.0).abs() < EXACT_TOL);

        let mut o = SophisticatedOracle::new(1, 1).unwrap();
        let q = run_on_qudit(QuditAlgorithm::BernsteinVazirani, 1, &mut o, None).unwrap();
        let mut o = SophisticatedOracle::new(1, 1).unwrap();
        let r = run_bv(1, &mut o).unwrap();
        assert!(q.max_deviation_from(&r) < EXACT_TOL);
    }

    #[test]
    fn run_census_matches_report() {
        for n in 1..=6 {
            let mut o = SophisticatedOracle::new(n, 0).unwrap();
            let q = run_on_qudit(QuditAlgorithm::BernsteinVazirani, n, &mut o, None).unwrap();
            let p = precision_cost(n, 3.0).unwrap();
            assert_eq!(q.census.nonzero_entries, p.nontrivial_amplitude_count);
            assert_eq!(q.census.dense_layers, 2);
        }
    }

    #[test]
    fn precision_examples() {
        let r = precision_cost(1, 3.0).unwrap();
        assert_eq!(r.resolution_bits, 3.0);
        let r = precision_cost(3, 3.0).unwrap();
        assert_eq!(r.required_resolution, 512.0);
        assert_eq!(r.gates_per_layer, 3);
        assert_eq!(r.required_resolution, 1.0 / r.min_level_spacing);
        let (a, b) = (precision_cost(4, 3.0).unwrap(), precision_cost(8, 3.0).unwrap());
        assert_eq!(b.resolution_bits, 2.0 * a.resolution_bits);
        assert_eq!(b.required_resolution, a.required_resolution * a.required_resolution);
        assert!(precision_cost(0, 3.0).is_err());
        assert!(precision_cost(3, 0.0).is_err());
        assert!(precision_cost(3, f64::NAN).is_err());
    }

    #[test]
    fn width_mismatch() {
        let mut o = NaiveOracle::new(2, 0).unwrap();
        assert!(run_on_qudit(QuditAlgorithm::Grover, 3, &mut o, None).is_err());
    }
}
