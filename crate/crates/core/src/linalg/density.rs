use nalgebra::DMatrix;

use super::{check_qubits, gather_bits, Amplitude, PureState, EIGEN_TOL, EXACT_TOL};
use crate::{Error, Result};

/// Reduced density matrix of a pure state, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Amplitude>,
}

impl DensityMatrix {
    /// Build from row-major entries, checking the Hermitian, unit-trace and
    /// positive-semidefinite invariants.
    pub fn new(dim: usize, entries: Vec<Amplitude>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not form a {dim}×{dim} matrix",
                entries.len()
            )));
        }
        let rho = Self { dim, entries };
        let herm = rho.hermiticity_deviation();
        if herm > EXACT_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > EXACT_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        if let Some(&min) = rho.eigenvalues().first() {
            if min < -EIGEN_TOL {
                return Err(Error::InvalidParameter(format!(
                    "density matrix has negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entry(i, i).re).sum()
    }

    fn hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.entry(i, j) - self.entry(j, i).conj()).norm());
            }
        }
        dev
    }

    /// `Tr(ρ²)`, computed as the squared Frobenius norm of a Hermitian matrix.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals = if self.dim == 2 {
            let [a, b, _, d] = [self.entries[0], self.entries[1], self.entries[2], self.entries[3]];
            eigenvalues_2x2(a.re, d.re, b).to_vec()
        } else {
            let m = DMatrix::from_row_slice(self.dim, self.dim, &self.entries);
            m.symmetric_eigenvalues().iter().copied().collect()
        };
        vals.sort_by(f64::total_cmp);
        vals
    }
}

/// Eigenvalues `(small, large)` of the Hermitian matrix `[[a, b], [b*, d]]`.
/// The small one is recovered from the determinant to keep relative accuracy
/// near zero.
pub(crate) fn eigenvalues_2x2(a: f64, d: f64, b: Amplitude) -> [f64; 2] {
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let large = half_tr + disc;
    let det = a * d - b.norm_sqr();
    let small = if large > 0.0 { det / large } else { half_tr - disc };
    [small, large]
}

/// Reduced density matrix on the listed qubits; row/column indices are
/// big-endian in the listed order.
pub fn partial_trace(state: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.num_qubits();
    check_qubits(keep, n)?;
    if keep.is_empty() || keep.len() == n {
        return Err(Error::DegenerateCut);
    }
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dr = 1usize << rest.len();
    // Coefficient matrix M[k][r] = ψ(k, r); ρ = M M†.
    let mut m = vec![Amplitude::new(0.0, 0.0); dk * dr];
    for (i, &a) in state.amplitudes().iter().enumerate() {
        let k = gather_bits(i, keep, n);
        let r = gather_bits(i, &rest, n);
        m[k * dr + r] = a;
    }
    let mut entries = vec![Amplitude::new(0.0, 0.0); dk * dk];
    for i in 0..dk {
        let row_i = &m[i * dr..(i + 1) * dr];
        for j in i..dk {
            let row_j = &m[j * dr..(j + 1) * dr];
            let v: Amplitude = row_i.iter().zip(row_j).map(|(x, y)| x * y.conj()).sum();
            entries[i * dk + j] = v;
            entries[j * dk + i] = v.conj();
        }
    }
    Ok(DensityMatrix { dim: dk, entries })
}

/// Reduced density matrix of one qubit as `[ρ00, ρ01, ρ10, ρ11]`, in O(2^n).
pub fn single_qubit_reduction(state: &PureState, qubit: usize) -> Result<DensityMatrix> {
    let n = state.num_qubits();
    check_qubits(&[qubit], n)?;
    if n < 2 {
        return Err(Error::DegenerateCut);
    }
    let stride = state.stride(qubit);
    let amps = state.amplitudes();
    let (mut p0, mut p1) = (0.0, 0.0);
    let mut off = Amplitude::new(0.0, 0.0);
    for block in amps.chunks_exact(2 * stride) {
        let (lo, hi) = block.split_at(stride);
        for (a, b) in lo.iter().zip(hi) {
            p0 += a.norm_sqr();
            p1 += b.norm_sqr();
            off += a * b.conj();
        }
    }
    Ok(DensityMatrix {
        dim: 2,
        entries: vec![Amplitude::new(p0, 0.0), off, off.conj(), Amplitude::new(p1, 0.0)],
    })
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Schmidt coefficients of `state` across the cut `side | complement`,
/// descending, computed from the smaller side's reduced density matrix.
pub fn schmidt_coefficients(state: &PureState, side: &[usize]) -> Result<Vec<f64>> {
    let n = state.num_qubits();
    check_qubits(side, n)?;
    if side.is_empty() || side.len() == n {
        return Err(Error::DegenerateCut);
    }
    let smaller: Vec<usize> = if 2 * side.len() <= n {
        side.to_vec()
    } else {
        (0..n).filter(|q| !side.contains(q)).collect()
    };
    let rho = if smaller.len() == 1 {
        single_qubit_reduction(state, smaller[0])?
    } else {
        partial_trace(state, &smaller)?
    };
    let mut coeffs: Vec<f64> = rho
        .eigenvalues()
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    coeffs.sort_by(|a, b| b.total_cmp(a));
    Ok(coeffs)
}
