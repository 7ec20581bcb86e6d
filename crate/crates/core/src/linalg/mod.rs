//! Complex linear algebra on pure qubit registers.
//!
//! Qubit 0 is the top wire of a circuit diagram and the most significant bit
//! of the basis index. For search circuits on `n + 1` qubits the guess
//! register `x` occupies qubits `0..n` and the ancilla `b` is qubit `n`, so
//! the composite index is `2x + b`.

mod density;
mod gate;
pub mod kernels;
mod measure;
mod state;

pub use density::{partial_trace, purity, schmidt_coefficients, single_qubit_reduction, DensityMatrix};
pub use gate::Gate2;
pub use measure::{measurement_distribution, Distribution};
pub use state::{
    apply_hadamard_layer, apply_one_qubit_gate, make_basis_state, PureState, MAX_QUBITS,
};

/// Complex amplitude (`re`, `im` as `f64`).
pub type Amplitude = num_complex::Complex64;

/// Tolerance for exact algebraic identities (norms, unitarity, round trips).
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance for quantities obtained from eigen-decompositions.
pub const EIGEN_TOL: f64 = 1e-10;

pub(crate) fn check_qubits(qubits: &[usize], num_qubits: usize) -> crate::Result<()> {
    let mut seen = 0u64;
    for &q in qubits {
        if q >= num_qubits {
            return Err(crate::Error::QubitOutOfRange { qubit: q, num_qubits });
        }
        if seen & (1 << q) != 0 {
            return Err(crate::Error::DuplicateQubit(q));
        }
        seen |= 1 << q;
    }
    Ok(())
}

/// Gather the bits of `index` belonging to `qubits` into a big-endian
/// integer in the listed order.
#[inline]
pub(crate) fn gather_bits(index: usize, qubits: &[usize], num_qubits: usize) -> usize {
    qubits.iter().fold(0, |acc, &q| {
        (acc << 1) | ((index >> (num_qubits - 1 - q)) & 1)
    })
}
