//! Report data and its three renderings.
//!
//! JSON layout (schema version [`SCHEMA_VERSION`]):
//!
//! ```text
//! { meta:      { tool, version, schema_version, seed, config },
//!   claims:    [ { claim_id, anchor, measured, expected, verdict, runtime_ms } ],
//!   runs:      [ { run, algorithm, n, answer, top_guess, answer_probability,
//!                  analytic_probability, iterations, entanglement } ],
//!   series:    [ { run, snapshots: [ { label, cuts: [ { qubit, purity,
//!                  entropy, rank, product } ] } ] } ],
//!   ledgers:   [ { run, classical_queries, quantum_queries, reflections } ],
//!   precision: [ { n, detuning_exponent, ... } ] }
//! ```
//!
//! With `claims-only` everything after `claims` is omitted. `runtime_ms` is
//! the only field that varies between identical runs.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::claims::Verdict;
use crate::config::{ExperimentConfig, Format};
use crate::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 6] = ["claim_id", "anchor", "measured", "expected", "verdict", "runtime_ms"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub seed: u64,
    pub config: ExperimentConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    /// Registry id with the sweep point, e.g. `bv.single_query[n=3]`.
    pub claim_id: String,
    pub anchor: String,
    pub measured: f64,
    pub expected: String,
    pub verdict: Verdict,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub run: String,
    pub algorithm: String,
    pub n: usize,
    /// Hidden answer; for the adversarial database, the record it committed to.
    pub answer: Option<usize>,
    pub top_guess: usize,
    pub answer_probability: f64,
    pub analytic_probability: Option<f64>,
    pub iterations: Option<usize>,
    /// `entangled`, `product`, `not applicable`, or `none` for
    /// classical runs.
    pub entanglement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutPoint {
    pub qubit: usize,
    pub purity: f64,
    pub entropy: f64,
    pub rank: usize,
    pub product: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotSeries {
    pub label: String,
    pub cuts: Vec<CutPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSeries {
    pub run: String,
    pub snapshots: Vec<SnapshotSeries>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub run: String,
    pub classical_queries: u64,
    pub quantum_queries: u64,
    pub reflections: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrecisionRow {
    pub n: usize,
    pub detuning_exponent: f64,
    pub min_level_spacing: f64,
    pub resolution_bits: f64,
    pub nontrivial_amplitude_count: u128,
    pub poly_local_entry_count: u64,
    pub census_ratio: f64,
    pub unmodeled_resources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub claims: Vec<ClaimReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<RunRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<RunSeries>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ledgers: Vec<LedgerRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub precision: Vec<PrecisionRow>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimReport> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// JSON with every runtime field zeroed: identical for identical
    /// (config, seed).
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        for c in &mut r.claims {
            c.runtime_ms = 0.0;
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("report: {e}")))
    }
}

pub fn render(report: &Report, format: Format) -> CliResult<String> {
    if report.claims.is_empty() {
        return Err(CliError::Usage("no claims to report".into()));
    }
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(report),
        Format::Text => Ok(render_text(report)),
    }
}

/// Render and write to `path`, or stdout when `None`.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> CliResult<()> {
    let text = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("writing stdout: {e}")))
        }
    }
}

fn render_csv(report: &Report) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for c in &report.claims {
        w.write_record([
            c.claim_id.as_str(),
            c.anchor.as_str(),
            &fmt_num(c.measured),
            c.expected.as_str(),
            c.verdict.as_str(),
            &format!("{:.3}", c.runtime_ms),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
}

/// Left-aligned columns separated by two spaces.
fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (cell, w) in cells.zip(&width) {
            let _ = write!(s, "{cell:<w$}  ");
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(out, &mut header.iter().copied());
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    line(out, &mut rule.iter().map(String::as_str));
    for row in rows {
        line(out, &mut row.iter().map(String::as_str));
    }
}

/// Integers as integers, moderate values in plain decimal, the rest in
/// exponent form.
pub(crate) fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v.fract() == 0.0 && a < 1e15 || (1e-3..1e6).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn render_text(report: &Report) -> String {
    let m = &report.meta;
    let c = &m.config;
    let mut out = format!(
        "{} {} (schema {})  algorithm={} n={}..={} answer={:?} seed={}\n\n",
        m.tool,
        m.version,
        m.schema_version,
        c.algorithm.name(),
        c.n,
        c.n_max,
        c.answer,
        m.seed
    );
    let rows: Vec<Vec<String>> = report
        .claims
        .iter()
        .map(|c| {
            vec![
                c.verdict.as_str().to_uppercase(),
                c.claim_id.clone(),
                fmt_num(c.measured),
                c.expected.clone(),
                format!("{:.1}", c.runtime_ms),
            ]
        })
        .collect();
    table(&mut out, &["verdict", "claim", "measured", "expected", "ms"], &rows);
    let failed = report.failures().count();
    let _ = writeln!(out, "\n{} claims, {} failed", report.claims.len(), failed);

    if !report.runs.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = report
            .runs
            .iter()
            .zip(&report.ledgers)
            .map(|(r, l)| {
                vec![
                    r.run.clone(),
                    opt(r.answer),
                    r.top_guess.to_string(),
                    format!("{:.12}", r.answer_probability),
                    opt(r.analytic_probability.map(|p| format!("{p:.12}"))),
                    opt(r.iterations),
                    (l.classical_queries + l.quantum_queries).to_string(),
                    r.entanglement.clone(),
                ]
            })
            .collect();
        table(
            &mut out,
            &["run", "answer", "guess", "P(answer)", "analytic", "iters", "queries", "entanglement"],
            &rows,
        );
    }
    if !report.precision.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = report
            .precision
            .iter()
            .map(|p| {
                vec![
                    p.n.to_string(),
                    p.detuning_exponent.to_string(),
                    format!("{:e}", p.min_level_spacing),
                    p.resolution_bits.to_string(),
                    p.nontrivial_amplitude_count.to_string(),
                    p.poly_local_entry_count.to_string(),
                    format!("{:.3}", p.census_ratio),
                ]
            })
            .collect();
        table(
            &mut out,
            &["n", "p", "min spacing", "bits", "qudit entries", "local entries", "ratio"],
            &rows,
        );
        let _ = writeln!(out, "unmodeled: {}", report.precision[0].unmodeled_resources.join(", "));
    }
    out
}
