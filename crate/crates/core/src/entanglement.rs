//! Product-state certification for pure states.
//!
//! A pure state is a full product state iff every single-qubit reduction is
//! pure, so each snapshot is checked on its `n` single-qubit-vs-rest cuts.
//! Every cut is judged by three witnesses (purity, Schmidt rank, entropy),
//! which must agree.

use crate::algorithms::Trajectory;
use crate::linalg::{
    partial_trace, schmidt_coefficients, single_qubit_reduction, Gate2, PureState,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A cut is product when `purity >= 1 - purity`.
    pub purity: f64,
    /// A cut is product when its entropy is at most this many bits.
    pub entropy_bits: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            purity: 1e-10,
            entropy_bits: 1e-8,
        }
    }
}

impl Tolerances {
    /// Reduced-density eigenvalues above this count toward the Schmidt rank.
    /// `purity = 1 - 2λ(1 - λ)` for a qubit, so `λ ≈ tol/2` sits on the
    /// purity threshold.
    pub fn rank_threshold(&self) -> f64 {
        0.5 * self.purity
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutVerdict {
    /// Qubits on one side of the cut.
    pub cut: Vec<usize>,
    pub purity: f64,
    pub schmidt_rank: usize,
    pub entropy: f64,
    pub is_product: bool,
}

fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

fn verdict(cut: Vec<usize>, purity: f64, eigenvalues: &[f64], tol: &Tolerances) -> Result<CutVerdict> {
    let schmidt_rank = eigenvalues
        .iter()
        .filter(|&&l| l > tol.rank_threshold())
        .count()
        .max(1);
    let entropy = entropy_bits(eigenvalues);
    let by_purity = purity >= 1.0 - tol.purity;
    let by_rank = schmidt_rank == 1;
    let by_entropy = entropy <= tol.entropy_bits;
    if by_purity != by_rank || by_purity != by_entropy {
        return Err(Error::WitnessDisagreement {
            cut,
            purity,
            rank: schmidt_rank,
            entropy,
        });
    }
    Ok(CutVerdict {
        cut,
        purity,
        schmidt_rank,
        entropy,
        is_product: by_purity,
    })
}

/// Verdict for the cut `{qubit} | rest`.
pub fn analyze_qubit(state: &PureState, qubit: usize, tol: &Tolerances) -> Result<CutVerdict> {
    let rho = single_qubit_reduction(state, qubit)?;
    verdict(vec![qubit], rho.purity(), &rho.eigenvalues(), tol)
}

/// Verdict for an arbitrary bipartition `side | complement`.
pub fn analyze_cut(state: &PureState, side: &[usize], tol: &Tolerances) -> Result<CutVerdict> {
    let rho = partial_trace(state, side)?;
    let eigenvalues: Vec<f64> = schmidt_coefficients(state, side)?
        .into_iter()
        .map(|c| c * c)
        .collect();
    verdict(side.to_vec(), rho.purity(), &eigenvalues, tol)
}

/// One verdict per qubit, for every single-qubit-vs-rest cut.
pub fn analyze_state(state: &PureState, tol: &Tolerances) -> Result<Vec<CutVerdict>> {
    if state.num_qubits() < 2 {
        return Err(Error::DegenerateCut);
    }
    (0..state.num_qubits())
        .map(|q| analyze_qubit(state, q, tol))
        .collect()
}

pub fn is_fully_product(state: &PureState, tol: &Tolerances) -> Result<bool> {
    Ok(analyze_state(state, tol)?.iter().all(|v| v.is_product))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotVerdicts {
    pub label: String,
    pub cuts: Vec<CutVerdict>,
    pub fully_product: bool,
}

impl SnapshotVerdicts {
    pub fn min_purity(&self) -> f64 {
        self.cuts.iter().map(|c| c.purity).fold(1.0, f64::min)
    }
}

/// Per-snapshot verdicts plus the ancilla (last qubit) cut series.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EntanglementReport {
    pub snapshots: Vec<SnapshotVerdicts>,
    pub ancilla: Vec<(String, CutVerdict)>,
}

impl EntanglementReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Analyze one more snapshot and append it.
    pub fn observe(&mut self, label: &str, state: &PureState, tol: &Tolerances) -> Result<()> {
        let cuts = analyze_state(state, tol)?;
        self.append(label, cuts);
        Ok(())
    }

    fn append(&mut self, label: &str, cuts: Vec<CutVerdict>) {
        let fully_product = cuts.iter().all(|c| c.is_product);
        if let Some(last) = cuts.last() {
            self.ancilla.push((label.to_string(), last.clone()));
        }
        self.snapshots.push(SnapshotVerdicts {
            label: label.to_string(),
            cuts,
            fully_product,
        });
    }

    pub fn get(&self, label: &str) -> Option<&SnapshotVerdicts> {
        self.snapshots.iter().find(|s| s.label == label)
    }

    pub fn all_fully_product(&self) -> bool {
        self.snapshots.iter().all(|s| s.fully_product)
    }
}

/// Analyze every snapshot. Snapshots are independent and may be analyzed
/// concurrently; the report keeps trajectory order.
pub fn analyze_trajectory(traj: &Trajectory, tol: &Tolerances) -> Result<EntanglementReport> {
    let snaps = traj.snapshots();
    #[cfg(feature = "parallel")]
    let cuts: Vec<Result<Vec<CutVerdict>>> = if crate::par::enabled() {
        use rayon::prelude::*;
        snaps.par_iter().map(|s| analyze_state(&s.state, tol)).collect()
    } else {
        snaps.iter().map(|s| analyze_state(&s.state, tol)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cuts: Vec<Result<Vec<CutVerdict>>> =
        snaps.iter().map(|s| analyze_state(&s.state, tol)).collect();

    let mut report = EntanglementReport::new();
    for (snap, cuts) in snaps.iter().zip(cuts) {
        report.append(&snap.label, cuts?);
    }
    Ok(report)
}

/// Apply one local gate per qubit and check that every single-qubit cut
/// purity is unchanged within `1e-10`.
pub fn local_unitary_invariance_check(
    state: &PureState,
    gates: &[Gate2],
    tol: &Tolerances,
) -> Result<bool> {
    if gates.len() != state.num_qubits() {
        return Err(Error::InvalidParameter(format!(
            "{} gates for {} qubits",
            gates.len(),
            state.num_qubits()
        )));
    }
    let before = analyze_state(state, tol)?;
    let mut rotated = state.clone();
    for (q, g) in gates.iter().enumerate() {
        rotated.apply(g, q)?;
    }
    let after = analyze_state(&rotated, tol)?;
    Ok(before
        .iter()
        .zip(&after)
        .all(|(b, a)| (b.purity - a.purity).abs() <= 1e-10 && b.is_product == a.is_product))
}


/// Entanglement status attached to a run. Single-qudit runs have no tensor
/// structure, so they report `NotApplicable` rather than `FullyProduct`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntanglementStatus {
    NotApplicable,
    FullyProduct,
    Entangled,
}

impl EntanglementStatus {
    pub fn of_report(report: &EntanglementReport) -> Self {
        if report.all_fully_product() {
            Self::FullyProduct
        } else {
            Self::Entangled
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::NotApplicable => "not applicable",
            Self::FullyProduct => "product",
            Self::Entangled => "entangled",
        }
    }
}
