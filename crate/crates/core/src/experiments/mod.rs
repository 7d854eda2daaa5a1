//! Named, seeded experiments and their reports.

mod output;
mod suite;

pub use output::{report, Format};

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Registered experiment names, in the order `all` runs them.
pub const EXPERIMENTS: [&str; 11] = [
    "ergotropy-oracle",
    "energy-clone",
    "energy-split",
    "mask-diagonal",
    "mask-four-party",
    "nosignal-demo",
    "nogo-clone",
    "nogo-mask-energy-preserving",
    "nogo-mask-universal",
    "nogo-bloch-radius",
    "evolution-check",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub dim: Option<usize>,
    pub seed: u64,
    pub restarts: usize,
    pub samples: usize,
    /// Grid resolution per axis for the energy-preserving scan.
    pub grid: Option<usize>,
    /// Threshold overrides keyed by metric name.
    pub tolerances: BTreeMap<String, f64>,
    /// Energy eigenvalues of a diagonal local Hamiltonian.
    pub hamiltonian: Option<Vec<f64>>,
    pub output_path: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: String::new(),
            dim: None,
            seed: 42,
            restarts: 50,
            samples: 100,
            grid: None,
            tolerances: BTreeMap::new(),
            hamiltonian: None,
            output_path: None,
        }
    }
}

impl ExperimentConfig {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            ..Self::default()
        }
    }

    /// Parses TOML when the path ends in `.toml`, JSON otherwise.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml")) {
            Self::from_toml(&text)
        } else {
            Self::from_json(&text)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub(crate) fn tolerance(&self, metric: &str, default: f64) -> f64 {
        self.tolerances.get(metric).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "REPORT-ONLY")]
    ReportOnly,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ReportOnly => "REPORT-ONLY",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub metrics: BTreeMap<String, f64>,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
    pub wall_time: f64,
    pub version: String,
}

impl ExperimentReport {
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).copied()
    }
}

/// Runs one registered experiment.
///
/// Unknown names and invalid settings are rejected before any computation.
/// Numerical errors inside an experiment give a `FAIL` report with the error
/// in `diagnostics`.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if !EXPERIMENTS.contains(&config.experiment.as_str()) {
        return Err(Error::UnknownExperiment(config.experiment.clone()));
    }
    suite::validate(config)?;
    let start = Instant::now();
    let outcome = suite::execute(config);
    let wall_time = start.elapsed().as_secs_f64();
    let (metrics, verdict, diagnostics) = match outcome {
        Ok(o) => o.finish(),
        Err(e) => (BTreeMap::new(), Verdict::Fail, vec![e.to_string()]),
    };
    Ok(ExperimentReport {
        experiment: config.experiment.clone(),
        config: config.clone(),
        metrics,
        verdict,
        diagnostics,
        wall_time,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Runs `config` as given, or every registered experiment with the same
/// settings when the name is `all`.
pub fn run_named(config: &ExperimentConfig) -> Result<Vec<ExperimentReport>> {
    if config.experiment != "all" {
        return Ok(vec![run(config)?]);
    }
    EXPERIMENTS
        .iter()
        .map(|name| {
            run(&ExperimentConfig {
                experiment: name.to_string(),
                ..config.clone()
            })
        })
        .collect()
}

/// Whether any report failed; `REPORT-ONLY` does not count.
pub fn any_failed(reports: &[ExperimentReport]) -> bool {
    reports.iter().any(|r| r.verdict == Verdict::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = ExperimentConfig::from_json(r#"{"experiment": "energy-clone"}"#).unwrap();
        assert_eq!((c.seed, c.restarts, c.samples), (42, 50, 100));
        assert_eq!(c.dim, None);
    }

    #[test]
    fn toml_and_json_agree() {
        let j = ExperimentConfig::from_json(r#"{"experiment": "energy-split", "dim": 3, "seed": 7}"#).unwrap();
        let t = ExperimentConfig::from_toml("experiment = \"energy-split\"\ndim = 3\nseed = 7\n").unwrap();
        assert_eq!(j, t);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(matches!(
            ExperimentConfig::from_json(r#"{"experiment": "x", "sed": 1}"#),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn unknown_experiment_is_rejected() {
        assert!(matches!(
            run(&ExperimentConfig::new("no-such-thing")),
            Err(Error::UnknownExperiment(_))
        ));
    }

    #[test]
    fn verdict_tokens() {
        for (v, s) in [(Verdict::Pass, "PASS"), (Verdict::Fail, "FAIL"), (Verdict::ReportOnly, "REPORT-ONLY")] {
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{s}\""));
            assert_eq!(v.as_str(), s);
        }
    }

    #[test]
    fn all_expands_to_registry() {
        let mut c = ExperimentConfig::new("all");
        c.samples = 0;
        // Invalid settings stop the whole batch before anything runs.
        assert!(run_named(&c).is_err());
    }
}
