//! Experiment configuration. The file format uses the flag names as keys, so
//! a config file is just a saved command line.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// Largest register for qubit runs.
pub const MAX_QUBIT_N: usize = 24;
/// Largest register for single-particle runs (dense `N × N` layers).
pub const MAX_QUDIT_N: usize = 11;
/// Exhaustive answer sweeps run all `2^n` answers.
pub const MAX_EXHAUSTIVE_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Grover,
    Bv,
    ClassicalNaive,
    ClassicalSophisticated,
    QuditGrover,
    QuditBv,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Grover => "grover",
            Algorithm::Bv => "bv",
            Algorithm::ClassicalNaive => "classical-naive",
            Algorithm::ClassicalSophisticated => "classical-sophisticated",
            Algorithm::QuditGrover => "qudit-grover",
            Algorithm::QuditBv => "qudit-bv",
        }
    }

    fn is_qudit(self) -> bool {
        matches!(self, Algorithm::QuditGrover | Algorithm::QuditBv)
    }

    fn takes_iterations(self) -> bool {
        matches!(self, Algorithm::Grover | Algorithm::QuditGrover)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AnswerMode {
    /// `trials` answers drawn from the seeded generator per n.
    Random,
    /// The single answer `answer-value`.
    Fixed,
    /// Every answer in `0..2^n`.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A fully resolved, validated experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub n: usize,
    pub n_max: usize,
    pub answer: AnswerMode,
    pub answer_value: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub iterations: Option<usize>,
    pub detuning_exponent: f64,
    pub tol_purity: f64,
    pub tol_norm: f64,
    pub tol_entropy: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub claims_only: bool,
}

/// Partial configuration: a config file, or the flags given on the command
/// line. Later layers win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Overrides {
    #[arg(long, value_enum)]
    pub algorithm: Option<Algorithm>,
    /// Register width, or the first width of a sweep.
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Last width of the sweep (inclusive).
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, value_enum)]
    pub answer: Option<AnswerMode>,
    /// Answer for `--answer fixed` (implies it when `--answer` is absent).
    #[arg(long)]
    pub answer_value: Option<usize>,
    /// Random answers per n.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Grover iteration override.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Level-spacing exponent p for the precision report.
    #[arg(long)]
    pub detuning_exponent: Option<f64>,
    #[arg(long)]
    pub tol_purity: Option<f64>,
    #[arg(long)]
    pub tol_norm: Option<f64>,
    #[arg(long)]
    pub tol_entropy: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit only the claim table.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub claims_only: Option<bool>,
}

impl Overrides {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    /// `self` with every field set in `top` replaced.
    pub fn layer(self, top: Overrides) -> Overrides {
        Overrides {
            algorithm: top.algorithm.or(self.algorithm),
            n: top.n.or(self.n),
            n_max: top.n_max.or(self.n_max),
            answer: top.answer.or(self.answer),
            answer_value: top.answer_value.or(self.answer_value),
            trials: top.trials.or(self.trials),
            seed: top.seed.or(self.seed),
            iterations: top.iterations.or(self.iterations),
            detuning_exponent: top.detuning_exponent.or(self.detuning_exponent),
            tol_purity: top.tol_purity.or(self.tol_purity),
            tol_norm: top.tol_norm.or(self.tol_norm),
            tol_entropy: top.tol_entropy.or(self.tol_entropy),
            format: top.format.or(self.format),
            out: top.out.or(self.out),
            claims_only: top.claims_only.or(self.claims_only),
        }
    }

    /// Fill defaults and validate.
    pub fn resolve(self) -> CliResult<ExperimentConfig> {
        let algorithm = self
            .algorithm
            .ok_or_else(|| CliError::Usage("--algorithm is required".into()))?;
        let n = self
            .n
            .ok_or_else(|| CliError::Usage("--n is required".into()))?;
        let answer = match (self.answer, self.answer_value) {
            (Some(mode), _) => mode,
            (None, Some(_)) => AnswerMode::Fixed,
            (None, None) => AnswerMode::Random,
        };
        let config = ExperimentConfig {
            algorithm,
            n,
            n_max: self.n_max.unwrap_or(n),
            answer,
            answer_value: self.answer_value,
            trials: self.trials.unwrap_or(1),
            seed: self.seed.unwrap_or(0),
            iterations: self.iterations,
            detuning_exponent: self
                .detuning_exponent
                .unwrap_or(qsearch::qudit::DEFAULT_DETUNING_EXPONENT),
            tol_purity: self.tol_purity.unwrap_or(1e-10),
            tol_norm: self.tol_norm.unwrap_or(1e-10),
            tol_entropy: self.tol_entropy.unwrap_or(1e-8),
            format: self.format.unwrap_or(Format::Text),
            out: self.out,
            claims_only: self.claims_only.unwrap_or(false),
        };
        config.validate()?;
        Ok(config)
    }
}

impl From<ExperimentConfig> for Overrides {
    fn from(c: ExperimentConfig) -> Self {
        Overrides {
            algorithm: Some(c.algorithm),
            n: Some(c.n),
            n_max: Some(c.n_max),
            answer: Some(c.answer),
            answer_value: c.answer_value,
            trials: Some(c.trials),
            seed: Some(c.seed),
            iterations: c.iterations,
            detuning_exponent: Some(c.detuning_exponent),
            tol_purity: Some(c.tol_purity),
            tol_norm: Some(c.tol_norm),
            tol_entropy: Some(c.tol_entropy),
            format: Some(c.format),
            out: c.out,
            claims_only: Some(c.claims_only),
        }
    }
}

fn usage<T>(msg: String) -> CliResult<T> {
    Err(CliError::Usage(msg))
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn widths(&self) -> std::ops::RangeInclusive<usize> {
        self.n..=self.n_max
    }

    pub fn validate(&self) -> CliResult<()> {
        let alg = self.algorithm.name();
        if self.n == 0 {
            return usage("--n must be at least 1".into());
        }
        if self.n_max < self.n {
            return usage(format!("--n-max {} is below --n {}", self.n_max, self.n));
        }
        let cap = if self.algorithm.is_qudit() { MAX_QUDIT_N } else { MAX_QUBIT_N };
        if self.n_max > cap {
            return usage(format!("{alg} supports n <= {cap}, got {}", self.n_max));
        }
        match self.answer {
            AnswerMode::Exhaustive if self.n_max > MAX_EXHAUSTIVE_N => {
                return usage(format!(
                    "exhaustive answers need n <= {MAX_EXHAUSTIVE_N}, got {}",
                    self.n_max
                ));
            }
            AnswerMode::Fixed => match self.answer_value {
                None => return usage("--answer fixed needs --answer-value".into()),
                Some(a) if a >> self.n != 0 => {
                    return usage(format!("answer {a} does not fit in n = {} bits", self.n));
                }
                _ => {}
            },
            _ if self.answer_value.is_some() => {
                return usage("--answer-value only applies to --answer fixed".into());
            }
            _ => {}
        }
        if self.trials == 0 {
            return usage("--trials must be at least 1".into());
        }
        if self.iterations.is_some() && !self.algorithm.takes_iterations() {
            return usage(format!("--iterations does not apply to {alg}"));
        }
        if !(self.detuning_exponent.is_finite() && self.detuning_exponent > 0.0) {
            return usage(format!(
                "--detuning-exponent must be positive, got {}",
                self.detuning_exponent
            ));
        }
        for (flag, v) in [
            ("--tol-purity", self.tol_purity),
            ("--tol-norm", self.tol_norm),
            ("--tol-entropy", self.tol_entropy),
        ] {
            if !(v.is_finite() && v > 0.0 && v < 1.0) {
                return usage(format!("{flag} must lie in (0, 1), got {v}"));
            }
        }
        Ok(())
    }
}
