use super::{check_qubits, kernels, Amplitude, Gate2, EXACT_TOL};
use crate::{Error, Result};

/// Registers wider than this are rejected up front.
pub const MAX_QUBITS: usize = 30;

/// Normalized state vector of a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

impl PureState {
    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, num_qubits });
        }
        let mut amplitudes = vec![Amplitude::new(0.0, 0.0); dim];
        amplitudes[index] = Amplitude::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wrap an amplitude vector. The length must be a power of two and the
    /// vector must already be normalized within `1e-12`.
    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "amplitude vector length {dim} is not a power of two >= 2"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        check_width(num_qubits)?;
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite amplitude".into()));
        }
        let state = Self {
            num_qubits,
            amplitudes,
        };
        let deviation = (state.norm_sqr() - 1.0).abs();
        if deviation > EXACT_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(state)
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(mut amplitudes: Vec<Amplitude>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::from_amplitudes(amplitudes)
    }

    /// Tensor product `self ⊗ other`; `self` supplies the leading qubits.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        check_width(self.num_qubits + other.num_qubits)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(PureState {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amplitudes[index]
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amplitudes
    }

    /// Mutable access for kernels that preserve the norm (permutations,
    /// phase flips). Callers are responsible for unitarity.
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Amplitude] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        crate::par::chunked_sum(&self.amplitudes, |c| c.iter().map(|a| a.norm_sqr()).sum())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Amplitude> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::WidthMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        let re = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        let im = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a.conj() * b).im)
            .sum();
        Ok(Amplitude::new(re, im))
    }

    /// Largest per-amplitude modulus difference.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Apply a single-qubit gate to `target` in place.
    pub fn apply(&mut self, gate: &Gate2, target: usize) -> Result<()> {
        check_qubits(&[target], self.num_qubits)?;
        gate.check_unitary()?;
        let stride = self.stride(target);
        kernels::apply_2x2(&mut self.amplitudes, gate.entries(), stride);
        Ok(())
    }

    /// Apply `gate` to each listed qubit.
    pub fn apply_layer(&mut self, gate: &Gate2, targets: &[usize]) -> Result<()> {
        check_qubits(targets, self.num_qubits)?;
        gate.check_unitary()?;
        for &t in targets {
            let stride = self.stride(t);
            kernels::apply_2x2(&mut self.amplitudes, gate.entries(), stride);
        }
        Ok(())
    }

    /// Distance between paired amplitudes when `target` flips.
    #[inline]
    pub fn stride(&self, target: usize) -> usize {
        1 << (self.num_qubits - 1 - target)
    }
}

fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "register width {num_qubits} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

pub fn make_basis_state(num_qubits: usize, index: usize) -> Result<PureState> {
    PureState::basis(num_qubits, index)
}

pub fn apply_one_qubit_gate(mut state: PureState, gate: &Gate2, target: usize) -> Result<PureState> {
    state.apply(gate, target)?;
    Ok(state)
}

pub fn apply_hadamard_layer(mut state: PureState, targets: &[usize]) -> Result<PureState> {
    state.apply_layer(&Gate2::hadamard(), targets)?;
    Ok(state)
}
