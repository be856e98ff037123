//! Grid verification of the algebraic and analytic identities, with JSON/CSV reports.

mod suites;

pub use suites::SUITES;

use crate::error::{Error, Result};
use crate::hp::{self, Engine};
use rug::Complex;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::str::FromStr;

/// Grid size selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Small,
    Full,
}

impl FromStr for Grid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Grid::Small),
            "full" => Ok(Grid::Full),
            _ => Err(Error::InvalidArgument(format!("unknown grid '{}' (small|full)", s))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format '{}' (json|csv)", s))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Flip the sign that relates the two sides of the symmetry identity; a harness self-test.
    pub corrupt_sign: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub parameters: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub skipped_singular: bool,
    pub notes: String,
}

impl Case {
    pub fn numeric(id: String, parameters: String, lhs: &Complex, rhs: &Complex, tol: f64, digits: usize) -> Case {
        let abs_err = hp::abs_f64(&Complex::with_val(lhs.prec().0, lhs - rhs));
        Case {
            id,
            parameters,
            lhs: hp::format_complex(lhs, digits),
            rhs: hp::format_complex(rhs, digits),
            abs_err,
            tol,
            pass: abs_err <= tol,
            skipped_singular: false,
            notes: String::new(),
        }
    }

    pub fn exact(id: String, parameters: String, lhs: String, rhs: String) -> Case {
        let pass = lhs == rhs;
        Case {
            id,
            parameters,
            lhs,
            rhs,
            abs_err: if pass { 0.0 } else { 1.0 },
            tol: 0.0,
            pass,
            skipped_singular: false,
            notes: String::new(),
        }
    }

    pub fn skipped(id: String, parameters: String, reason: String) -> Case {
        Case {
            id,
            parameters,
            lhs: String::new(),
            rhs: String::new(),
            abs_err: 0.0,
            tol: 0.0,
            pass: true,
            skipped_singular: true,
            notes: reason,
        }
    }

    /// An evaluation error other than a singular parameter set.
    pub fn errored(id: String, parameters: String, err: &Error) -> Case {
        Case {
            id,
            parameters,
            lhs: String::new(),
            rhs: String::new(),
            abs_err: f64::MAX,
            tol: 0.0,
            pass: false,
            skipped_singular: false,
            notes: err.to_string(),
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Case {
        self.notes = notes.into();
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped_singular: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineInfo {
    pub digits: u32,
    pub eps: f64,
    pub nmax: usize,
    pub version: String,
}

impl From<&Engine> for EngineInfo {
    fn from(e: &Engine) -> Self {
        EngineInfo {
            digits: e.digits,
            eps: e.eps,
            nmax: e.nmax,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub grid: Grid,
    pub options: SuiteOptions,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub engine: EngineInfo,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Sorts cases by id and recomputes the summary.
    pub fn new(suite: &str, grid: Grid, options: SuiteOptions, mut cases: Vec<Case>, engine: &Engine, notes: Vec<String>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary {
            total: cases.len(),
            ..Summary::default()
        };
        for c in &cases {
            if c.skipped_singular {
                summary.skipped_singular += 1;
            } else if c.pass {
                summary.passed += 1;
            } else {
                summary.failed += 1;
            }
        }
        VerificationReport {
            suite: suite.to_string(),
            grid,
            options,
            cases,
            summary,
            engine: engine.into(),
            notes,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Largest `abs_err / tol` over evaluated cases (`abs_err` itself where `tol = 0`).
    pub fn worst_ratio(&self) -> f64 {
        self.cases
            .iter()
            .filter(|c| !c.skipped_singular)
            .map(|c| if c.tol > 0.0 { c.abs_err / c.tol } else { c.abs_err })
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One row per case: `id,abs_err,tol,pass`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["id", "abs_err", "tol", "pass"]).map_err(io)?;
        for c in &self.cases {
            w.write_record([c.id.clone(), c.abs_err.to_string(), c.tol.to_string(), c.pass.to_string()])
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

pub fn emit(report: &VerificationReport, format: Format, path: &Path) -> Result<()> {
    let body = match format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv()?,
    };
    std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

/// Runs one named suite over its grid.
pub fn run_suite(name: &str, grid: Grid, engine: &Engine) -> Result<VerificationReport> {
    run_suite_with(name, grid, engine, &SuiteOptions::default())
}

pub fn run_suite_with(name: &str, grid: Grid, engine: &Engine, options: &SuiteOptions) -> Result<VerificationReport> {
    engine.validate()?;
    let (cases, notes) = suites::dispatch(name, grid, engine, options)?;
    Ok(VerificationReport::new(name, grid, options.clone(), cases, engine, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> Engine {
        Engine::with_digits(30)
    }

    #[test]
    fn empty_report_serializes() {
        let r = VerificationReport::new("x", Grid::Small, SuiteOptions::default(), vec![], &engine(), vec![]);
        let j = r.to_json().unwrap();
        assert!(j.contains("\"total\": 0"));
        assert_eq!(VerificationReport::from_json(&j).unwrap(), r);
    }

    #[test]
    fn csv_rows_and_json_roundtrip() {
        let p = 100;
        let a = Complex::with_val(p, (1.0, 0.5));
        let cases = vec![
            Case::numeric("b".into(), "p".into(), &a, &a, 1e-10, 20),
            Case::exact("a".into(), "q".into(), "x".into(), "y".into()),
        ];
        let r = VerificationReport::new("t", Grid::Full, SuiteOptions::default(), cases, &engine(), vec!["n".into()]);
        assert_eq!(r.cases[0].id, "a");
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1, skipped_singular: 0 });
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(csv.lines().next().unwrap(), "id,abs_err,tol,pass");
        assert_eq!(VerificationReport::from_json(&r.to_json().unwrap()).unwrap(), r);
        assert!(!r.all_passed());
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(run_suite("nope", Grid::Small, &engine()).is_err());
        assert!("medium".parse::<Grid>().is_err());
        assert!(run_suite("haberland", Grid::Small, &Engine::with_digits(3)).is_err());
    }

    #[test]
    fn roundtrip_is_exact() {
        let r = run_suite("roundtrip", Grid::Small, &engine()).unwrap();
        assert!(r.all_passed());
        assert!(r.cases.iter().all(|c| c.abs_err == 0.0));
    }

    #[test]
    fn corrupted_symmetry_fails() {
        let opts = SuiteOptions { corrupt_sign: true };
        let r = run_suite_with("symmetry", Grid::Small, &engine(), &opts).unwrap();
        assert!(r.summary.failed > 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("haberland", Grid::Small, &engine()).unwrap().to_json().unwrap();
        let b = run_suite("haberland", Grid::Small, &engine()).unwrap().to_json().unwrap();
        assert_eq!(a, b);
    }
}
