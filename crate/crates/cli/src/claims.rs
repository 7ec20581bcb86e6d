//! The claims registry: which checks exist, what they measure, and their
//! bounds. Lives in `docs/claims.json` so checks can be added without
//! touching the drivers.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, ExperimentConfig};
use crate::report::fmt_num;

const REGISTRY_JSON: &str = include_str!("../../../docs/claims.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Registry {
    pub schema_version: u32,
    pub claims: Vec<ClaimSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimSpec {
    pub id: String,
    pub algorithms: Vec<Algorithm>,
    pub anchor: String,
    /// What the measured number is.
    pub measured: String,
    #[serde(default)]
    pub min_n: Option<usize>,
    #[serde(default)]
    pub max_n: Option<usize>,
    pub bound: Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AtLeast,
    AtMost,
    GreaterThan,
    Within,
}

/// A literal, or a name resolved against the config and sweep point.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Value(f64),
    Named(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bound {
    pub kind: BoundKind,
    #[serde(default)]
    pub threshold: Option<Param>,
    #[serde(default)]
    pub reference: Option<Param>,
    #[serde(default)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let r: Registry = serde_json::from_str(REGISTRY_JSON).expect("docs/claims.json parses");
        for c in &r.claims {
            c.bound.check_shape(&c.id);
        }
        r
    })
}

impl ClaimSpec {
    pub fn applies(&self, algorithm: Algorithm, n: usize) -> bool {
        self.algorithms.contains(&algorithm)
            && self.min_n.is_none_or(|m| n >= m)
            && self.max_n.is_none_or(|m| n <= m)
    }
}

impl Param {
    fn resolve(&self, config: &ExperimentConfig, n: usize) -> f64 {
        match self {
            Param::Value(v) => *v,
            Param::Named(name) => match name.as_str() {
                "tol_norm" => config.tol_norm,
                "tol_purity" => config.tol_purity,
                "n" => n as f64,
                "records_minus_one" => ((1u64 << n) - 1) as f64,
                "grover_iterations" => config
                    .iterations
                    .unwrap_or_else(|| qsearch::algorithms::default_grover_iterations(n))
                    as f64,
                "p_times_n" => config.detuning_exponent * n as f64,
                other => panic!("claims registry names unknown parameter {other:?}"),
            },
        }
    }
}

impl Bound {
    fn check_shape(&self, id: &str) {
        let ok = match self.kind {
            BoundKind::Within => self.reference.is_some() && self.threshold.is_none(),
            _ => self.threshold.is_some() && self.reference.is_none(),
        };
        assert!(ok, "claim {id}: bound fields do not match kind {:?}", self.kind);
    }

    /// Expected-value text and verdict for `measured`.
    pub fn evaluate(&self, measured: f64, config: &ExperimentConfig, n: usize) -> (String, Verdict) {
        let param = self.threshold.as_ref().or(self.reference.as_ref()).expect("checked shape");
        let v = param.resolve(config, n);
        let (vs, tol) = (fmt_num(v), fmt_num(self.tolerance));
        let (text, ok) = match self.kind {
            BoundKind::AtLeast => (format!(">= {vs}"), measured >= v),
            BoundKind::AtMost => (format!("<= {vs}"), measured <= v),
            BoundKind::GreaterThan => (format!("> {vs}"), measured > v),
            BoundKind::Within => (
                format!("{vs} ± {tol}"),
                (measured - v).abs() <= self.tolerance,
            ),
        };
        (text, if ok { Verdict::Pass } else { Verdict::Fail })
    }
}
