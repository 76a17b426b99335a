//! Built-in fixture corpus and JSON-pointer assertions over its reports.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::{analyze_spec, AnalysisReport, Header};
use crate::specstr::parse_spec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub spec: &'static str,
    pub truncation: usize,
}

pub fn fixtures() -> Vec<Fixture> {
    let f = |name, spec, truncation| Fixture {
        name,
        spec,
        truncation,
    };
    vec![
        f("gevrey-1", "gevrey:alpha=1", 100_000),
        f("gevrey-1.5", "gevrey:alpha=1.5", 100_000),
        f("gevrey-2", "gevrey:alpha=2", 100_000),
        f("gevrey-log-1-2", "gevrey-log:alpha=1,beta=2", 1_000_000),
        f("qgevrey-2", "qgevrey:q=2", 100_000),
        f("paper-example", "paper-example", 1_000_000),
    ]
}

/// Log-convex and strongly regular, but `log m_p / log p` oscillates between
/// 10/3 and 17/3 forever, so `d(t)` is not a proximate order.
/// Blocks are placed so the tail windows at `10^5` and `10^6` straddle a block edge.
pub const NEGATIVE_CONTROL_SPEC: &str = "log-blocks:low=1,high=8,start=1.25";

/// A check on one fixture's report: exactly one of `approx`, `equals`, `len`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub fixture: String,
    /// JSON pointer into the report, e.g. `/indices/omega/value`.
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equals: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
}

impl Assertion {
    fn approx(fixture: &str, path: &str, value: f64, tol: f64) -> Self {
        Assertion {
            fixture: fixture.into(),
            path: path.into(),
            approx: Some(value),
            tol: Some(tol),
            equals: None,
            len: None,
        }
    }

    fn equals(fixture: &str, path: &str, value: Value) -> Self {
        Assertion {
            fixture: fixture.into(),
            path: path.into(),
            approx: None,
            tol: None,
            equals: Some(value),
            len: None,
        }
    }

    fn len(fixture: &str, path: &str, len: usize) -> Self {
        Assertion {
            fixture: fixture.into(),
            path: path.into(),
            approx: None,
            tol: None,
            equals: None,
            len: Some(len),
        }
    }

    /// `Ok(())` or a description of the mismatch.
    pub fn check(&self, report: &Value) -> std::result::Result<(), String> {
        let kinds = [
            self.approx.is_some(),
            self.equals.is_some(),
            self.len.is_some(),
        ];
        if kinds.iter().filter(|&&k| k).count() != 1 {
            return Err("assertion needs exactly one of approx, equals, len".into());
        }
        let got = report
            .pointer(&self.path)
            .ok_or_else(|| format!("{} not found", self.path))?;
        if let Some(want) = self.approx {
            let tol = self.tol.unwrap_or(crate::tolerances::TOL_IDX);
            let v = got
                .as_f64()
                .ok_or_else(|| format!("{} is {got}, not a number", self.path))?;
            if (v - want).abs() > tol {
                return Err(format!("{} = {v}, expected {want} ± {tol}", self.path));
            }
        }
        if let Some(want) = &self.equals {
            if got != want {
                return Err(format!("{} = {got}, expected {want}", self.path));
            }
        }
        if let Some(want) = self.len {
            let n = got.as_array().map(Vec::len);
            if n != Some(want) {
                return Err(format!("{} has length {n:?}, expected {want}", self.path));
            }
        }
        Ok(())
    }
}

/// Expectations that hold for the default corpus truncations.
pub fn builtin_assertions() -> Vec<Assertion> {
    let mut v = Vec::new();
    for (name, a) in [("gevrey-1", 1.0), ("gevrey-1.5", 1.5), ("gevrey-2", 2.0)] {
        v.push(Assertion::approx(name, "/indices/omega/value", a, 5e-3));
        v.push(Assertion::approx(name, "/gamma/value", a, 0.02));
        v.push(Assertion::approx(name, "/regular_variation/index", a, 5e-3));
        v.push(Assertion::equals(
            name,
            "/proximate_order/agreement",
            json!(true),
        ));
        v.push(Assertion::equals(
            name,
            "/properties/strongly_regular/status",
            json!("holds"),
        ));
    }
    v.push(Assertion::equals(
        "gevrey-log-1-2",
        "/properties/strongly_regular/status",
        json!("holds"),
    ));
    v.push(Assertion::equals(
        "qgevrey-2",
        "/properties/mg/status",
        json!("fails"),
    ));
    v.push(Assertion::equals(
        "qgevrey-2",
        "/properties/lc/status",
        json!("holds"),
    ));
    v.push(Assertion::equals(
        "qgevrey-2",
        "/properties/snq/status",
        json!("holds"),
    ));
    v.push(Assertion::equals(
        "qgevrey-2",
        "/indices/omega/value",
        json!("+inf"),
    ));
    v.push(Assertion::approx(
        "paper-example",
        "/indices/omega/value",
        1.5,
        1e-2,
    ));
    v.push(Assertion::equals(
        "paper-example",
        "/proximate_order/verdict",
        json!("proximate_order"),
    ));
    v.push(Assertion::len(
        "paper-example",
        "/proximate_order/step_limit/clusters",
        2,
    ));
    v.push(Assertion::approx(
        "paper-example",
        "/proximate_order/step_limit/clusters/0/center",
        1.0,
        1e-2,
    ));
    v.push(Assertion::approx(
        "paper-example",
        "/proximate_order/step_limit/clusters/1/center",
        2.0,
        1e-2,
    ));
    v
}

pub fn read_assertions(path: &Path) -> Result<Vec<Assertion>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Clone, Debug, Default)]
pub struct CorpusOptions {
    /// Caps every fixture's truncation (for quick runs).
    pub max_truncation: Option<usize>,
    /// `None` disables assertion mode.
    pub assertions: Option<Vec<Assertion>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub fixture: String,
    pub spec: String,
    pub truncation: usize,
    pub report: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub header: Header,
    pub fixtures: Vec<CorpusEntry>,
    pub assertions_checked: usize,
    pub assertion_failures: Vec<String>,
}

impl CorpusIndex {
    pub fn passed(&self) -> bool {
        self.assertion_failures.is_empty()
    }
}

/// Analyzes every fixture concurrently, writes `<name>.json` reports and then `index.json`.
///
/// The index is written last and atomically, so a failed run leaves no index behind.
pub fn run_corpus(out_dir: &Path, opts: &CorpusOptions) -> Result<CorpusIndex> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let fx = fixtures();
    let reports: Vec<(Fixture, AnalysisReport)> = fx
        .par_iter()
        .map(|f| {
            let n = opts
                .max_truncation
                .map_or(f.truncation, |c| c.min(f.truncation));
            let spec = parse_spec(f.spec)?;
            analyze_spec(&spec, f.name, n).map(|r| (f.clone(), r))
        })
        .collect::<Result<_>>()?;

    let mut entries = Vec::new();
    let mut values = Vec::new();
    for (f, r) in &reports {
        let file = format!("{}.json", f.name);
        let path = out_dir.join(&file);
        std::fs::write(&path, r.to_json()? + "\n").map_err(|e| Error::io(&path, e))?;
        entries.push(CorpusEntry {
            fixture: f.name.into(),
            spec: f.spec.into(),
            truncation: r.truncation,
            report: file,
        });
        values.push((f.name, serde_json::to_value(r)?));
    }

    let mut failures = Vec::new();
    let mut checked = 0;
    for a in opts.assertions.iter().flatten() {
        checked += 1;
        let outcome = match values.iter().find(|(n, _)| *n == a.fixture) {
            Some((_, v)) => a.check(v),
            None => Err("no such fixture".into()),
        };
        if let Err(msg) = outcome {
            failures.push(format!("{}: {msg}", a.fixture));
        }
    }
    let index = CorpusIndex {
        header: Header::default(),
        fixtures: entries,
        assertions_checked: checked,
        assertion_failures: failures,
    };
    write_atomic(
        &out_dir.join("index.json"),
        &(serde_json::to_string_pretty(&index)? + "\n"),
    )?;
    Ok(index)
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp: PathBuf = path.with_extension("json.partial");
    std::fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::io(path, e)
    })
}
