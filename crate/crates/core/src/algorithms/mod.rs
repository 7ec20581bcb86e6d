//! Circuit drivers for Grover and Bernstein-Vazirani search, classical
//! baselines, and the closed-form Grover success probability used to
//! cross-check the simulator.

mod bv;
mod classical;
mod grover;
mod trajectory;

pub use bv::{run_bv, run_bv_observed};
pub use classical::{classical_naive_search, classical_sophisticated_search, ClassicalResult};
pub use grover::{default_grover_iterations, grover_analytic_success, run_grover, run_grover_observed};
pub use trajectory::{Snapshot, Trajectory};

use crate::linalg::{measurement_distribution, Amplitude, Distribution, PureState};
use crate::oracles::QueryLedger;
use crate::{Error, Result};

/// Output of a quantum search run. The driver never sees the answer, so
/// `success_probability` is the probability of `top_guess`; harnesses compare
/// it with `distribution.prob(answer)`.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub distribution: Distribution,
    pub top_guess: usize,
    pub success_probability: f64,
    pub ledger: QueryLedger,
    /// Iterations of the repeated block (1 oracle call each for Grover; the
    /// single query for Bernstein-Vazirani).
    pub iterations: usize,
    /// Phase of the final state relative to `|top_guess⟩ ⊗ (|0⟩ - |1⟩)/√2`.
    /// Unobservable; reported for completeness.
    pub global_phase: Amplitude,
    /// Every labeled snapshot. Empty for the `*_observed` variants.
    pub trajectory: Trajectory,
}

/// Labels of the snapshots every driver records.
pub const PSI0: &str = "psi0";
pub const PSI1: &str = "psi1";
pub const PSI2: &str = "psi2";
pub const PSI3: &str = "psi3";

pub fn post_oracle_label(iteration: usize) -> String {
    format!("iter{iteration}:post-oracle")
}

pub fn post_diffusion_label(iteration: usize) -> String {
    format!("iter{iteration}:post-diffusion")
}

fn check_width(n: usize, oracle_width: usize) -> Result<()> {
    if n != oracle_width {
        return Err(Error::WidthMismatch {
            expected: oracle_width,
            found: n,
        });
    }
    Ok(())
}

fn guess_register(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn finish(
    state: &PureState,
    n: usize,
    ledger: QueryLedger,
    iterations: usize,
    trajectory: Trajectory,
) -> Result<SearchResult> {
    let distribution = measurement_distribution(state, &guess_register(n))?;
    let top_guess = distribution.most_likely();
    let success_probability = distribution.prob(top_guess);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let overlap = state.amplitude(2 * top_guess) * s - state.amplitude(2 * top_guess + 1) * s;
    let global_phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Amplitude::new(1.0, 0.0)
    };
    Ok(SearchResult {
        distribution,
        top_guess,
        success_probability,
        ledger,
        iterations,
        global_phase,
        trajectory,
    })
}

/// `|0…0, 0⟩ → Σ_x |x⟩ (|0⟩ - |1⟩)/√(2N)`: X then H on the ancilla, H on
/// every guess qubit.
fn prepare_uniform(state: &mut PureState, n: usize) -> Result<()> {
    use crate::linalg::Gate2;
    state.apply(&Gate2::pauli_x(), n)?;
    state.apply(&Gate2::hadamard(), n)?;
    state.apply_layer(&Gate2::hadamard(), &guess_register(n))
}
