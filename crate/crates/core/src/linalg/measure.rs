use rand::Rng;

use super::{check_qubits, gather_bits, PureState};
use crate::Result;

/// Exact outcome probabilities for measuring a list of qubits.
/// Outcome `y` is big-endian in the order the qubits were listed.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probabilities: Vec<f64>,
}

impl Distribution {
    pub fn from_probabilities(probabilities: Vec<f64>) -> Self {
        Self { probabilities }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn prob(&self, outcome: usize) -> f64 {
        self.probabilities.get(outcome).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Most likely outcome; ties resolve to the smallest index.
    pub fn most_likely(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probabilities.iter().enumerate() {
            if p > self.probabilities[best] {
                best = i;
            }
        }
        best
    }

    /// Largest per-outcome absolute difference.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        let len = self.len().max(other.len());
        (0..len)
            .map(|i| (self.prob(i) - other.prob(i)).abs())
            .fold(0.0, f64::max)
    }

    /// Draw one outcome. For demonstration output only; all checks use the
    /// exact probabilities.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random::<f64>() * self.total();
        let mut acc = 0.0;
        for (i, &p) in self.probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        self.probabilities.len() - 1
    }
}

pub fn measurement_distribution(state: &PureState, subset: &[usize]) -> Result<Distribution> {
    let n = state.num_qubits();
    check_qubits(subset, n)?;
    let amps = state.amplitudes();
    let k = subset.len();
    // Leading qubits in order: outcome is the index with the low bits dropped.
    if subset.iter().enumerate().all(|(i, &q)| i == q) {
        let group = 1usize << (n - k);
        let probabilities = amps
            .chunks_exact(group)
            .map(|g| g.iter().map(|a| a.norm_sqr()).sum())
            .collect();
        return Ok(Distribution { probabilities });
    }
    let mut probabilities = vec![0.0; 1 << k];
    for (i, a) in amps.iter().enumerate() {
        probabilities[gather_bits(i, subset, n)] += a.norm_sqr();
    }
    Ok(Distribution { probabilities })
}
