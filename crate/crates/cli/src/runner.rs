//! Sweep execution and claim evaluation.

use std::time::{Duration, Instant};

use qsearch::algorithms::{
    classical_naive_search, classical_sophisticated_search, grover_analytic_success, run_bv_observed,
    run_grover_observed, PSI2, PSI3,
};
use qsearch::entanglement::{analyze_state, local_unitary_invariance_check, EntanglementStatus, Tolerances};
use qsearch::linalg::{Amplitude, Gate2, PureState};
use qsearch::oracles::{AdversarialNaiveOracle, ClassicalOracle, NaiveOracle, SophisticatedOracle};
use qsearch::qudit::{precision_cost, run_on_qudit, QuditAlgorithm, UNMODELED_RESOURCES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::claims::registry;
use crate::config::{AnswerMode, Algorithm, ExperimentConfig};
use crate::report::{
    ClaimReport, CutPoint, LedgerRow, Meta, PrecisionRow, Report, RunRow, RunSeries, SnapshotSeries,
};
use crate::CliResult;

/// BV final states are kept for the orthogonality check up to this width.
const ORTHOGONALITY_MAX_N: usize = 6;

/// Worst-case quantities of one run that claims aggregate over a sweep point.
#[derive(Debug, Clone, Default)]
struct Metrics {
    queries: u64,
    answer_probability: f64,
    analytic_gap: Option<f64>,
    non_product_snapshots: u64,
    non_product_initial: u64,
    max_deficit_after_psi1: f64,
    non_product_ancilla_after_psi1: u64,
    max_norm_deviation: f64,
    local_inference_failures: u64,
    qudit_deviation: Option<f64>,
    qudit_not_applicable: Option<bool>,
    classical_correct: Option<bool>,
}

struct RunRecord {
    n: usize,
    row: RunRow,
    ledger: LedgerRow,
    snapshots: Vec<SnapshotSeries>,
    metrics: Metrics,
    final_state: Option<(usize, Vec<Amplitude>)>,
    runtime: Duration,
}

/// Distinct stream per (seed, n, answer, purpose). `seed_from_u64` mixes
/// the bits further.
fn stream(seed: u64, n: usize, answer: usize, purpose: u64) -> ChaCha8Rng {
    let k = seed
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (answer as u64).wrapping_add(1).wrapping_mul(0xD1B5_4A32_D192_ED03)
        ^ purpose.wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(k)
}

fn answers(config: &ExperimentConfig, n: usize) -> Vec<usize> {
    match config.answer {
        AnswerMode::Exhaustive => (0..1usize << n).collect(),
        AnswerMode::Fixed => vec![config.answer_value.expect("validated")],
        AnswerMode::Random => {
            let mut rng = stream(config.seed, n, 0, 0);
            (0..config.trials).map(|_| rng.random_range(0..1usize << n)).collect()
        }
    }
}

fn sweep_points(config: &ExperimentConfig) -> Vec<(usize, usize)> {
    config
        .widths()
        .flat_map(|n| {
            let list = match config.algorithm {
                // the adversary picks the answer
                Algorithm::ClassicalNaive => vec![0],
                _ => answers(config, n),
            };
            list.into_iter().map(move |a| (n, a))
        })
        .collect()
}

fn tolerances(config: &ExperimentConfig) -> Tolerances {
    Tolerances {
        purity: config.tol_purity,
        entropy_bits: config.tol_entropy,
    }
}

fn ledger_row(run: &str, l: qsearch::oracles::QueryLedger) -> LedgerRow {
    LedgerRow {
        run: run.to_string(),
        classical_queries: l.classical_queries,
        quantum_queries: l.quantum_queries,
        reflections: l.reflections,
    }
}

fn run_point(config: &ExperimentConfig, n: usize, answer: usize) -> qsearch::Result<RunRecord> {
    let start = Instant::now();
    let mut record = match config.algorithm {
        Algorithm::Grover | Algorithm::Bv => run_qubit(config, n, answer)?,
        Algorithm::QuditGrover | Algorithm::QuditBv => run_qudit(config, n, answer)?,
        Algorithm::ClassicalNaive | Algorithm::ClassicalSophisticated => run_classical(config, n, answer)?,
    };
    record.runtime = start.elapsed();
    Ok(record)
}

fn run_qubit(config: &ExperimentConfig, n: usize, answer: usize) -> qsearch::Result<RunRecord> {
    let tol = tolerances(config);
    let bv = config.algorithm == Algorithm::Bv;
    let run = format!("{}/n={n}/a={answer}", config.algorithm.name());
    let mut m = Metrics::default();
    let mut snapshots = Vec::new();
    let mut final_state = None;
    let mut psi2_product = None;
    let mut gate_rng = stream(config.seed, n, answer, 1);

    let mut observe = |label: &str, state: &PureState| -> qsearch::Result<()> {
        let cuts = analyze_state(state, &tol)?;
        let index = snapshots.len();
        let product = cuts.iter().all(|c| c.is_product);
        m.max_norm_deviation = m.max_norm_deviation.max((state.norm_sqr() - 1.0).abs());
        if !product {
            m.non_product_snapshots += 1;
            if index < 2 {
                m.non_product_initial += 1;
            }
        }
        if index >= 2 {
            let deficit = cuts.iter().map(|c| 1.0 - c.purity).fold(0.0, f64::max);
            m.max_deficit_after_psi1 = m.max_deficit_after_psi1.max(deficit);
            if !cuts[n].is_product {
                m.non_product_ancilla_after_psi1 += 1;
            }
        }
        if bv && label == PSI2 {
            let gates: Vec<Gate2> = (0..=n).map(|_| Gate2::haar_random(&mut gate_rng)).collect();
            if !local_unitary_invariance_check(state, &gates, &tol)? {
                m.local_inference_failures += 1;
            }
            psi2_product = Some(product);
        }
        if bv && label == PSI3 {
            if psi2_product != Some(product) {
                m.local_inference_failures += 1;
            }
            if n <= ORTHOGONALITY_MAX_N {
                final_state = Some((answer, state.amplitudes().to_vec()));
            }
        }
        snapshots.push(SnapshotSeries {
            label: label.to_string(),
            cuts: cuts
                .iter()
                .map(|c| CutPoint {
                    qubit: c.cut[0],
                    purity: c.purity,
                    entropy: c.entropy,
                    rank: c.schmidt_rank,
                    product: c.is_product,
                })
                .collect(),
        });
        Ok(())
    };

    let (result, analytic) = if bv {
        let mut oracle = SophisticatedOracle::new(n, answer)?;
        (run_bv_observed(n, &mut oracle, &mut observe)?, None)
    } else {
        let mut oracle = NaiveOracle::new(n, answer)?;
        let r = run_grover_observed(n, &mut oracle, config.iterations, &mut observe)?;
        let analytic = grover_analytic_success(1u64 << n, r.iterations)?;
        (r, Some(analytic))
    };
    let p = result.distribution.prob(answer);
    m.queries = result.ledger.quantum_queries;
    m.answer_probability = p;
    m.analytic_gap = analytic.map(|a| (p - a).abs());
    let status = if m.non_product_snapshots == 0 {
        EntanglementStatus::FullyProduct
    } else {
        EntanglementStatus::Entangled
    };
    Ok(RunRecord {
        n,
        row: RunRow {
            run: run.clone(),
            algorithm: config.algorithm.name().into(),
            n,
            answer: Some(answer),
            top_guess: result.top_guess,
            answer_probability: p,
            analytic_probability: analytic,
            iterations: Some(result.iterations),
            entanglement: status.as_str().into(),
        },
        ledger: ledger_row(&run, result.ledger),
        snapshots,
        metrics: m,
        final_state,
        runtime: Duration::ZERO,
    })
}

fn run_qudit(config: &ExperimentConfig, n: usize, answer: usize) -> qsearch::Result<RunRecord> {
    let run = format!("{}/n={n}/a={answer}", config.algorithm.name());
    let mut noop = |_: &str, _: &PureState| Ok(());
    let (qubit, qudit) = if config.algorithm == Algorithm::QuditBv {
        let qubit = run_bv_observed(n, &mut SophisticatedOracle::new(n, answer)?, &mut noop)?;
        let mut oracle = SophisticatedOracle::new(n, answer)?;
        (qubit, run_on_qudit(QuditAlgorithm::BernsteinVazirani, n, &mut oracle, None)?)
    } else {
        let qubit =
            run_grover_observed(n, &mut NaiveOracle::new(n, answer)?, config.iterations, &mut noop)?;
        let mut oracle = NaiveOracle::new(n, answer)?;
        (qubit, run_on_qudit(QuditAlgorithm::Grover, n, &mut oracle, config.iterations)?)
    };
    let p = qudit.distribution.prob(answer);
    let status = qudit.entanglement();
    let m = Metrics {
        queries: qudit.ledger.quantum_queries,
        answer_probability: p,
        qudit_deviation: Some(qudit.max_deviation_from(&qubit)),
        qudit_not_applicable: Some(status == EntanglementStatus::NotApplicable),
        ..Metrics::default()
    };
    Ok(RunRecord {
        n,
        row: RunRow {
            run: run.clone(),
            algorithm: config.algorithm.name().into(),
            n,
            answer: Some(answer),
            top_guess: qudit.top_guess,
            answer_probability: p,
            analytic_probability: None,
            iterations: Some(qudit.iterations),
            entanglement: status.as_str().into(),
        },
        ledger: ledger_row(&run, qudit.ledger),
        snapshots: Vec::new(),
        metrics: m,
        final_state: None,
        runtime: Duration::ZERO,
    })
}

fn run_classical(config: &ExperimentConfig, n: usize, answer: usize) -> qsearch::Result<RunRecord> {
    let (run, found, truth, ledger) = if config.algorithm == Algorithm::ClassicalNaive {
        let mut oracle = AdversarialNaiveOracle::new(n)?;
        let r = classical_naive_search(&mut oracle)?;
        let truth = oracle.reveal_answer();
        (format!("classical-naive/n={n}"), r.answer, truth, oracle.ledger())
    } else {
        let mut oracle = SophisticatedOracle::new(n, answer)?;
        let r = classical_sophisticated_search(&mut oracle)?;
        (format!("classical-sophisticated/n={n}/a={answer}"), r.answer, Some(answer), oracle.ledger())
    };
    let correct = truth == Some(found);
    let m = Metrics {
        queries: ledger.classical_queries,
        answer_probability: if correct { 1.0 } else { 0.0 },
        classical_correct: Some(correct),
        ..Metrics::default()
    };
    Ok(RunRecord {
        n,
        row: RunRow {
            run: run.clone(),
            algorithm: config.algorithm.name().into(),
            n,
            answer: truth,
            top_guess: found,
            answer_probability: m.answer_probability,
            analytic_probability: None,
            iterations: None,
            entanglement: "none".into(),
        },
        ledger: ledger_row(&run, ledger),
        snapshots: Vec::new(),
        metrics: m,
        final_state: None,
        runtime: Duration::ZERO,
    })
}

#[cfg(feature = "parallel")]
fn execute(config: &ExperimentConfig, points: &[(usize, usize)]) -> Vec<qsearch::Result<RunRecord>> {
    use rayon::prelude::*;
    points.par_iter().map(|&(n, a)| run_point(config, n, a)).collect()
}

#[cfg(not(feature = "parallel"))]
fn execute(config: &ExperimentConfig, points: &[(usize, usize)]) -> Vec<qsearch::Result<RunRecord>> {
    points.iter().map(|&(n, a)| run_point(config, n, a)).collect()
}

fn max_overlap(states: &[(usize, Vec<Amplitude>)]) -> Option<f64> {
    let mut distinct: Vec<&(usize, Vec<Amplitude>)> = Vec::new();
    for s in states {
        if !distinct.iter().any(|d| d.0 == s.0) {
            distinct.push(s);
        }
    }
    if distinct.len() < 2 {
        return None;
    }
    let mut worst = 0.0f64;
    for (i, a) in distinct.iter().enumerate() {
        for b in &distinct[i + 1..] {
            let ip: Amplitude = a.1.iter().zip(&b.1).map(|(x, y)| x.conj() * y).sum();
            worst = worst.max(ip.norm());
        }
    }
    Some(worst)
}

/// The number a claim compares with its bound, or `None` when this sweep
/// point has nothing to measure.
fn measure(id: &str, config: &ExperimentConfig, n: usize, runs: &[&RunRecord]) -> Option<f64> {
    let metrics = || runs.iter().map(|r| &r.metrics);
    let max = |f: fn(&Metrics) -> f64| metrics().map(f).fold(0.0, f64::max);
    let sum = |f: fn(&Metrics) -> u64| metrics().map(f).sum::<u64>() as f64;
    let precision = || precision_cost(n, config.detuning_exponent).expect("validated width and exponent");
    Some(match id {
        "bv.single_query" | "grover.iterations" | "classical.naive_queries"
        | "classical.sophisticated_queries" => max(|m| m.queries as f64),
        "bv.probability_one" => metrics().map(|m| m.answer_probability).fold(f64::INFINITY, f64::min),
        "bv.no_entanglement" | "grover.two_records_unentangled" => sum(|m| m.non_product_snapshots),
        "bv.local_unitary_inference" => sum(|m| m.local_inference_failures),
        "bv.orthogonal_outputs" => {
            let states: Vec<_> = runs.iter().filter_map(|r| r.final_state.clone()).collect();
            max_overlap(&states)?
        }
        "grover.analytic_agreement" => max(|m| m.analytic_gap.unwrap_or(f64::INFINITY)),
        "grover.initial_product" => sum(|m| m.non_product_initial),
        "grover.entanglement_onset" => {
            metrics().map(|m| m.max_deficit_after_psi1).fold(f64::INFINITY, f64::min)
        }
        "grover.ancilla_product" => sum(|m| m.non_product_ancilla_after_psi1),
        "simulator.norm" => max(|m| m.max_norm_deviation),
        "classical.sophisticated_correct" => {
            metrics().filter(|m| m.classical_correct == Some(true)).count() as f64 / runs.len() as f64
        }
        "qudit.distribution_equivalence" => max(|m| m.qudit_deviation.unwrap_or(f64::INFINITY)),
        "qudit.not_applicable" => metrics().filter(|m| m.qudit_not_applicable != Some(true)).count() as f64,
        "qudit.resolution_bits" => precision().resolution_bits,
        "qudit.census_gap" => precision().census_ratio() / (1u64 << n) as f64,
        other => panic!("no measurement for registry claim {other:?}"),
    })
}

/// Run every sweep point and check every applicable registry claim.
///
/// Sweep points run in parallel (with the `parallel` feature); results are
/// merged in config order, so the report depends only on the config.
pub fn run_experiment(config: &ExperimentConfig) -> CliResult<Report> {
    config.validate()?;
    let points = sweep_points(config);
    let mut records = Vec::with_capacity(points.len());
    for r in execute(config, &points) {
        records.push(r?);
    }

    let mut claims = Vec::new();
    let mut precision = Vec::new();
    for n in config.widths() {
        let runs: Vec<&RunRecord> = records.iter().filter(|r| r.n == n).collect();
        let runtime: Duration = runs.iter().map(|r| r.runtime).sum();
        for spec in registry().claims.iter().filter(|c| c.applies(config.algorithm, n)) {
            let t = Instant::now();
            let Some(measured) = measure(&spec.id, config, n, &runs) else {
                continue;
            };
            let (expected, verdict) = spec.bound.evaluate(measured, config, n);
            claims.push(ClaimReport {
                claim_id: format!("{}[n={n}]", spec.id),
                anchor: spec.anchor.clone(),
                measured,
                expected,
                verdict,
                runtime_ms: (runtime + t.elapsed()).as_secs_f64() * 1e3,
            });
        }
        if matches!(config.algorithm, Algorithm::QuditGrover | Algorithm::QuditBv) {
            let p = precision_cost(n, config.detuning_exponent)?;
            precision.push(PrecisionRow {
                n,
                detuning_exponent: p.detuning_exponent,
                min_level_spacing: p.min_level_spacing,
                resolution_bits: p.resolution_bits,
                nontrivial_amplitude_count: p.nontrivial_amplitude_count,
                poly_local_entry_count: p.poly_local_entry_count,
                census_ratio: p.census_ratio(),
                unmodeled_resources: UNMODELED_RESOURCES.iter().map(|s| s.to_string()).collect(),
            });
        }
    }

    let mut report = Report {
        meta: Meta {
            tool: "qsearch".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            schema_version: crate::report::SCHEMA_VERSION,
            seed: config.seed,
            config: config.clone(),
        },
        claims,
        runs: Vec::new(),
        series: Vec::new(),
        ledgers: Vec::new(),
        precision: Vec::new(),
    };
    if !config.claims_only {
        for r in records {
            if !r.snapshots.is_empty() {
                report.series.push(RunSeries {
                    run: r.row.run.clone(),
                    snapshots: r.snapshots,
                });
            }
            report.ledgers.push(r.ledger);
            report.runs.push(r.row);
        }
        report.precision = precision;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    fn config(alg: Algorithm, n: usize) -> ExperimentConfig {
        Overrides {
            algorithm: Some(alg),
            n: Some(n),
            answer: Some(AnswerMode::Exhaustive),
            ..Default::default()
        }
        .resolve()
        .unwrap()
    }

    #[test]
    fn every_registry_claim_is_measurable() {
        use clap::ValueEnum;
        for &alg in Algorithm::value_variants() {
            for n in 1..=4 {
                let c = config(alg, n);
                let points = sweep_points(&c);
                let recs: Vec<RunRecord> = points.iter().map(|&(n, a)| run_point(&c, n, a).unwrap()).collect();
                let refs: Vec<&RunRecord> = recs.iter().collect();
                for spec in registry().claims.iter().filter(|s| s.applies(alg, n)) {
                    measure(&spec.id, &c, n, &refs);
                }
            }
        }
    }

    #[test]
    fn random_answers_depend_on_seed_and_width() {
        let mut c = config(Algorithm::Grover, 8);
        c.answer = AnswerMode::Random;
        c.trials = 20;
        let a = answers(&c, 8);
        assert_eq!(a, answers(&c, 8));
        c.seed = 1;
        assert_ne!(a, answers(&c, 8));
    }
}
