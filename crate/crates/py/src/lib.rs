//! Python bindings. Structured results come back as plain dicts (the report JSON shape).

use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use regseq::corpus::{builtin_assertions, run_corpus as run_corpus_core, CorpusOptions};
use regseq::growthfn::GrowthEvaluator;
use regseq::indices::{
    lambda_exponent, moricz_scan as moricz_core, omega, proximate_order_verdict,
};
use regseq::regvar::{gamma_index, omega_equals_gamma_check, regularize_quotients, rv_test};
use regseq::seqcore::{check_lc, check_mg, check_snq, check_strongly_regular, read_table_file};
use regseq::tolerances::{MORICZ_LOWER, MORICZ_UPPER, SNQ_KMAX};
use regseq::{materialize, parse_spec, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn table_from_spec(spec: &str, n: usize) -> PyResult<regseq::SeqTable> {
    materialize(&parse_spec(spec).map_err(to_py)?, n).map_err(to_py)
}

/// A truncated sequence held as log-quotients.
#[pyclass(name = "SeqTable", module = "regseq", frozen)]
struct SeqTable {
    inner: regseq::SeqTable,
    label: String,
}

#[pymethods]
impl SeqTable {
    /// Materialize `n` quotients of a spec string such as `"gevrey:alpha=2"`.
    #[staticmethod]
    fn from_spec(spec: &str, n: usize) -> PyResult<Self> {
        Ok(SeqTable {
            inner: table_from_spec(spec, n)?,
            label: spec.to_string(),
        })
    }

    #[staticmethod]
    fn from_log_quotients(logm: Vec<f64>) -> PyResult<Self> {
        Ok(SeqTable {
            inner: regseq::SeqTable::from_log_quotients(logm).map_err(to_py)?,
            label: "table".into(),
        })
    }

    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        let logm = read_table_file(&path).map_err(to_py)?;
        Ok(SeqTable {
            inner: regseq::SeqTable::from_log_quotients(logm).map_err(to_py)?,
            label: format!("file:{}", path.display()),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("SeqTable({:?}, n={})", self.label, self.inner.n())
    }

    fn logm(&self) -> Vec<f64> {
        self.inner.logm().to_vec()
    }

    fn log_big_m(&self) -> Vec<f64> {
        self.inner.log_big_m().to_vec()
    }

    fn lc<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &check_lc(&self.inner))
    }

    fn mg<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &check_mg(&self.inner))
    }

    fn snq<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &check_snq(&self.inner, SNQ_KMAX))
    }

    fn strongly_regular<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &check_strongly_regular(&self.inner))
    }

    /// Number of quotients `m_p <= t`, given `log t`.
    fn nu(&self, log_t: f64) -> PyResult<usize> {
        GrowthEvaluator::new(&self.inner).nu(log_t).map_err(to_py)
    }

    /// Associated function `M(t)` at `log t`.
    fn big_m(&self, log_t: f64) -> PyResult<f64> {
        GrowthEvaluator::new(&self.inner)
            .big_m(log_t)
            .map_err(to_py)
    }

    fn d_m(&self, log_t: f64) -> PyResult<f64> {
        GrowthEvaluator::new(&self.inner).d_m(log_t).map_err(to_py)
    }

    fn omega<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &omega(&self.inner).map_err(to_py)?)
    }

    fn lambda_exponent<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &lambda_exponent(&self.inner).map_err(to_py)?)
    }

    fn gamma_index<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &gamma_index(&self.inner).map_err(to_py)?)
    }

    fn rv_test<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &rv_test(&self.inner).map_err(to_py)?)
    }

    fn proximate_order<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &proximate_order_verdict(&self.inner))
    }

    fn omega_equals_gamma<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &omega_equals_gamma_check(&self.inner))
    }

    /// Table whose `(p + 1)^-gamma m_p` is nondecreasing.
    fn regularize(&self, gamma: f64) -> SeqTable {
        SeqTable {
            inner: regularize_quotients(&self.inner, gamma),
            label: format!("{} regularized at {gamma}", self.label),
        }
    }

    /// Multiplies every quotient by `exp(log_c)`.
    fn shift_quotients(&self, log_c: f64) -> SeqTable {
        SeqTable {
            inner: self.inner.shift_quotients(log_c),
            label: format!("{} shifted by {log_c}", self.label),
        }
    }

    #[pyo3(signature = (label = None))]
    fn analyze<'py>(&self, py: Python<'py>, label: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let label = label.unwrap_or(&self.label).to_string();
        let report = py
            .detach(|| regseq::analyze(&self.inner, &label))
            .map_err(to_py)?;
        to_dict(py, &report)
    }
}

/// Full analysis report for a spec string.
#[pyfunction]
#[pyo3(signature = (spec, n = regseq::tolerances::DEFAULT_N))]
fn analyze<'py>(py: Python<'py>, spec: &str, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let t = table_from_spec(spec, n)?;
    let report = py.detach(|| regseq::analyze(&t, spec)).map_err(to_py)?;
    to_dict(py, &report)
}

#[pyfunction]
#[pyo3(signature = (spec, spec_b, n = regseq::tolerances::DEFAULT_N))]
fn compare<'py>(
    py: Python<'py>,
    spec: &str,
    spec_b: &str,
    n: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let a = table_from_spec(spec, n)?;
    let b = table_from_spec(spec_b, n)?;
    let report = py
        .detach(|| regseq::compare(&a, &b, spec, spec_b))
        .map_err(to_py)?;
    to_dict(py, &report)
}

/// TSV rows `log_t, M, d_M`.
#[pyfunction]
#[pyo3(signature = (spec, n = regseq::tolerances::DEFAULT_N))]
fn plot_data(spec: &str, n: usize) -> PyResult<String> {
    Ok(regseq::plot_data(&table_from_spec(spec, n)?, spec))
}

#[pyfunction]
fn riesz_mean<'py>(py: Python<'py>, values: Vec<f64>) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &regseq::indices::riesz_mean(&values).map_err(to_py)?)
}

#[pyfunction]
#[pyo3(signature = (values, lambdas = None))]
fn moricz_scan<'py>(
    py: Python<'py>,
    values: Vec<f64>,
    lambdas: Option<Vec<f64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let lambdas =
        lambdas.unwrap_or_else(|| MORICZ_UPPER.iter().chain(&MORICZ_LOWER).copied().collect());
    to_dict(py, &moricz_core(&values, &lambdas).map_err(to_py)?)
}

/// Runs the built-in corpus into `out`; returns the index.
#[pyfunction]
#[pyo3(signature = (out, max_truncation = None, check = false))]
fn run_corpus<'py>(
    py: Python<'py>,
    out: PathBuf,
    max_truncation: Option<usize>,
    check: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = CorpusOptions {
        max_truncation,
        assertions: check.then(builtin_assertions),
    };
    let index = py.detach(|| run_corpus_core(&out, &opts)).map_err(to_py)?;
    to_dict(py, &index)
}

#[pymodule]
#[pyo3(name = "regseq")]
fn regseq_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SeqTable>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(plot_data, m)?)?;
    m.add_function(wrap_pyfunction!(riesz_mean, m)?)?;
    m.add_function(wrap_pyfunction!(moricz_scan, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
