use super::{check_width, finish, guess_register, prepare_uniform, SearchResult, Trajectory, PSI0, PSI1, PSI2, PSI3};
use crate::linalg::{Gate2, PureState};
use crate::oracles::QuantumOracle;
use crate::Result;

/// Bernstein-Vazirani with one database query, keeping `psi0..psi3`.
pub fn run_bv<O: QuantumOracle + ?Sized>(n: usize, oracle: &mut O) -> Result<SearchResult> {
    let mut trajectory = Trajectory::new();
    let mut result = run_bv_observed(n, oracle, &mut |label, state| {
        trajectory.push(label, state.clone())
    })?;
    result.trajectory = trajectory;
    Ok(result)
}

pub fn run_bv_observed<O, F>(n: usize, oracle: &mut O, observe: &mut F) -> Result<SearchResult>
where
    O: QuantumOracle + ?Sized,
    F: FnMut(&str, &PureState) -> Result<()> + ?Sized,
{
    check_width(n, oracle.width())?;
    let mut state = PureState::basis(n + 1, 0)?;
    observe(PSI0, &state)?;
    prepare_uniform(&mut state, n)?;
    observe(PSI1, &state)?;
    oracle.apply(&mut state)?;
    observe(PSI2, &state)?;
    state.apply_layer(&Gate2::hadamard(), &guess_register(n))?;
    observe(PSI3, &state)?;
    finish(&state, n, oracle.ledger(), 1, Trajectory::new())
}
