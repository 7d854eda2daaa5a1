use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::ExperimentReport;
use crate::error::{Error, Result};
use crate::json::{format_f64, to_string_precise};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidConfig(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Serializes reports as a JSON array or as CSV with one row per report and
/// one `metrics.<name>` column per metric seen in any report.
pub fn report(reports: &[ExperimentReport], format: Format) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::EmptyInput);
    }
    match format {
        Format::Json => to_string_precise(reports).map_err(|e| Error::Format(e.to_string())),
        Format::Csv => csv_document(reports),
    }
}

fn csv_document(reports: &[ExperimentReport]) -> Result<String> {
    let names: BTreeSet<&str> = reports
        .iter()
        .flat_map(|r| r.metrics.keys().map(String::as_str))
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["experiment", "verdict", "seed", "dim", "restarts", "samples", "grid"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(names.iter().map(|n| format!("metrics.{n}")));
    header.extend(["diagnostics", "wall_time", "version"].map(String::from));
    let csv_err = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in reports {
        let c = &r.config;
        let mut row = vec![
            r.experiment.clone(),
            r.verdict.as_str().to_string(),
            c.seed.to_string(),
            opt(c.dim),
            c.restarts.to_string(),
            c.samples.to_string(),
            opt(c.grid),
        ];
        row.extend(names.iter().map(|n| r.metric(n).map(format_f64).unwrap_or_default()));
        row.push(r.diagnostics.join("; "));
        row.push(format_f64(r.wall_time));
        row.push(r.version.clone());
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{ExperimentConfig, Verdict};
    use std::collections::BTreeMap;

    fn sample(name: &str, metric: &str, value: f64) -> ExperimentReport {
        ExperimentReport {
            experiment: name.into(),
            config: ExperimentConfig::new(name),
            metrics: BTreeMap::from([(metric.to_string(), value)]),
            verdict: Verdict::Pass,
            diagnostics: vec![],
            wall_time: 0.25,
            version: "0.1.0".into(),
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(report(&[], Format::Json), Err(Error::EmptyInput));
    }

    #[test]
    fn json_round_trips() {
        let value = 0.1 + 0.2;
        let r = vec![sample("energy-clone", "max_marginal_energy_error", value)];
        let text = report(&r, Format::Json).unwrap();
        let back: Vec<ExperimentReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("3.0000000000000004e-1"));
    }

    #[test]
    fn csv_has_header_and_one_row_per_report() {
        let r = vec![sample("a", "x", 1.0), sample("b", "y", 2.0)];
        let text = report(&r, Format::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].contains("metrics.x,metrics.y"));
        assert!(lines[1].starts_with("a,PASS,42,,50,100,,1.0000000000000000e0,,"));
    }

    #[test]
    fn format_parses() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
