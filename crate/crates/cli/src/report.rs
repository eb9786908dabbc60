//! Check entries, the JSON report and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    /// Short statement of the property being checked.
    pub anchor: String,
    /// `None` when the computation itself failed.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when `residual < tolerance`.
    pub fn below(check: &str, anchor: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            check: check.into(),
            anchor: anchor.into(),
            residual: Some(residual),
            tolerance,
            verdict: if residual < tolerance { Verdict::Pass } else { Verdict::Fail },
            note: None,
        }
    }

    /// Passes when `residual > threshold`; used for negative controls and
    /// positivity.
    pub fn above(check: &str, anchor: &str, residual: f64, threshold: f64) -> Self {
        Self {
            verdict: if residual > threshold { Verdict::Pass } else { Verdict::Fail },
            ..Self::below(check, anchor, residual, threshold)
        }
    }

    pub fn failed(check: &str, anchor: &str, tolerance: f64, note: impl ToString) -> Self {
        Self {
            check: check.into(),
            anchor: anchor.into(),
            residual: None,
            tolerance,
            verdict: Verdict::Fail,
            note: Some(note.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl ToString) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub metric: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(experiment: &str, metric: &str, seed: u64, checks: Vec<Check>) -> Self {
        Self {
            experiment: experiment.into(),
            metric: metric.into(),
            seed,
            passed: checks.iter().all(Check::passed),
            checks,
        }
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("report serializes");
        out.push(b'\n');
        out
    }
}

/// `{:.16e}`: seventeen significant digits, enough to round-trip an `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// A small CSV builder producing UTF-8 text with a header row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    text: String,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: header.join(",") + "\n",
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.text.into_bytes()
    }
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert!(Check::below("a", "b", 1e-9, 1e-8).passed());
        assert!(!Check::below("a", "b", 1e-8, 1e-8).passed());
        assert!(!Check::below("a", "b", f64::NAN, 1e-8).passed());
        assert!(Check::above("a", "b", 0.5, 0.1).passed());
        assert!(!Check::failed("a", "b", 1.0, "boom").passed());
    }

    #[test]
    fn report_json_shape() {
        let r = Report::new("geodesic", "euclidean", 7, vec![Check::below("c", "anchor", 0.0, 1.0)]);
        let v: serde_json::Value = serde_json::from_slice(&r.to_json()).unwrap();
        assert_eq!(v["passed"], true);
        let entry = &v["checks"][0];
        for key in ["check", "anchor", "residual", "tolerance", "verdict"] {
            assert!(entry.get(key).is_some(), "{key}");
        }
        assert_eq!(entry["verdict"], "pass");
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
