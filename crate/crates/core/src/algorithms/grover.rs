use std::f64::consts::FRAC_PI_4;

use super::{
    check_width, finish, guess_register, post_diffusion_label, post_oracle_label,
    prepare_uniform, SearchResult, Trajectory, PSI0, PSI1,
};
use crate::linalg::{Gate2, PureState};
use crate::oracles::{zero_reflection_apply, QuantumOracle};
use crate::{Error, Result};

/// `⌊(π/4)√N⌋` for `N = 2^n`.
pub fn default_grover_iterations(n: usize) -> usize {
    (FRAC_PI_4 * ((1u64 << n) as f64).sqrt()).floor() as usize
}

/// `sin²((2k + 1)·arcsin(1/√N))`. Independent of the simulator; used only to
/// check it.
pub fn grover_analytic_success(records: u64, k: usize) -> Result<f64> {
    if records < 2 {
        return Err(Error::InvalidParameter(format!(
            "database size {records} must be at least 2"
        )));
    }
    let theta = (1.0 / (records as f64).sqrt()).asin();
    Ok(((2 * k + 1) as f64 * theta).sin().powi(2))
}

/// Run the Grover circuit and keep every snapshot.
pub fn run_grover<O: QuantumOracle>(
    n: usize,
    oracle: &mut O,
    iterations: Option<usize>,
) -> Result<SearchResult> {
    let mut trajectory = Trajectory::new();
    let mut result = run_grover_observed(n, oracle, iterations, &mut |label, state| {
        trajectory.push(label, state.clone())
    })?;
    result.trajectory = trajectory;
    Ok(result)
}

/// Run the Grover circuit, handing each snapshot to `observe` instead of
/// storing it.
///
/// Layers: X and H on the ancilla, H on the guess register (`psi1`); then per
/// iteration the database query (`iterK:post-oracle`) followed by the
/// diffusion block H⊗ⁿ · f_0-CNOT · H⊗ⁿ (`iterK:post-diffusion`). With the
/// ancilla in `(|0⟩ - |1⟩)/√2` the block acts on the guess register as
/// `-(2|s⟩⟨s| - I)`, so each iteration contributes a global phase of `-1`.
pub fn run_grover_observed<O, F>(
    n: usize,
    oracle: &mut O,
    iterations: Option<usize>,
    observe: &mut F,
) -> Result<SearchResult>
where
    O: QuantumOracle + ?Sized,
    F: FnMut(&str, &PureState) -> Result<()> + ?Sized,
{
    check_width(n, oracle.width())?;
    let iterations = iterations.unwrap_or_else(|| default_grover_iterations(n));
    let guess = guess_register(n);
    let hadamard = Gate2::hadamard();

    let mut state = PureState::basis(n + 1, 0)?;
    observe(PSI0, &state)?;
    prepare_uniform(&mut state, n)?;
    observe(PSI1, &state)?;

    let mut reflections = 0;
    for k in 1..=iterations {
        oracle.apply(&mut state)?;
        observe(&post_oracle_label(k), &state)?;
        state.apply_layer(&hadamard, &guess)?;
        zero_reflection_apply(&mut state)?;
        reflections += 1;
        state.apply_layer(&hadamard, &guess)?;
        observe(&post_diffusion_label(k), &state)?;
    }

    let mut ledger = oracle.ledger();
    ledger.reflections += reflections;
    finish(&state, n, ledger, iterations, Trajectory::new())
}
