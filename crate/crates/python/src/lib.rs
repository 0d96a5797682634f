//! Python bindings for `popmatch`.
//!
//! Instances are wrapped as classes; reports come back as plain dicts with
//! the same layout as the CLI's JSON output.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use popmatch::census::{self as census_mod, CPolicy};
use popmatch::error::Error;
use popmatch::experiment::{self, TrialConfig};
use popmatch::fsgraph::build;
use popmatch::instance::{self, Instance, WeightConfig};
use popmatch::popularity::{self, DEFAULT_CAP};
use popmatch::wellformed;

fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "ReducedInstance", module = "pypopmatch", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyReduced(instance::ReducedInstance);

#[pymethods]
impl PyReduced {
    #[new]
    #[pyo3(signature = (m, f1, s1, f2, s2, w1 = 2, w2 = 1))]
    fn new(
        m: usize,
        f1: Vec<usize>,
        s1: Vec<usize>,
        f2: Vec<usize>,
        s2: Vec<usize>,
        w1: u64,
        w2: u64,
    ) -> PyResult<Self> {
        let weights = WeightConfig::new(w1, w2).map_err(to_py)?;
        let r = instance::ReducedInstance::new(m, weights, f1, s1, f2, s2).map_err(to_py)?;
        let violations = instance::validate(&r);
        if !violations.is_empty() {
            return Err(to_py(Error::InvalidInstance(violations)));
        }
        Ok(PyReduced(r))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyReduced(Instance::from_json(text).map_err(to_py)?.to_reduced()))
    }

    fn to_json(&self) -> String {
        Instance::Reduced(self.0.clone()).to_json()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn n1(&self) -> usize {
        self.0.n1()
    }

    #[getter]
    fn n2(&self) -> usize {
        self.0.n2()
    }

    #[getter]
    fn f1(&self) -> Vec<usize> {
        self.0.f1().to_vec()
    }

    #[getter]
    fn s1(&self) -> Vec<usize> {
        self.0.s1().to_vec()
    }

    #[getter]
    fn f2(&self) -> Vec<usize> {
        self.0.f2().to_vec()
    }

    #[getter]
    fn s2(&self) -> Vec<usize> {
        self.0.s2().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "ReducedInstance(m={}, f1={:?}, s1={:?}, f2={:?}, s2={:?})",
            self.0.m(),
            self.0.f1(),
            self.0.s1(),
            self.0.f2(),
            self.0.s2()
        )
    }
}

#[pyclass(name = "FullInstance", module = "pypopmatch", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFull(instance::FullInstance);

#[pymethods]
impl PyFull {
    #[new]
    #[pyo3(signature = (m, prefs_a1, prefs_a2, w1 = 2, w2 = 1))]
    fn new(m: usize, prefs_a1: Vec<Vec<usize>>, prefs_a2: Vec<Vec<usize>>, w1: u64, w2: u64) -> PyResult<Self> {
        let weights = WeightConfig::new(w1, w2).map_err(to_py)?;
        Ok(PyFull(
            instance::FullInstance::new(m, prefs_a1, prefs_a2, weights).map_err(to_py)?,
        ))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match Instance::from_json(text).map_err(to_py)? {
            Instance::Full(f) => Ok(PyFull(f)),
            Instance::Reduced(_) => Err(PyValueError::new_err("expected a full instance")),
        }
    }

    fn to_json(&self) -> String {
        Instance::Full(self.0.clone()).to_json()
    }

    fn reduce(&self) -> PyReduced {
        PyReduced(instance::reduce(&self.0))
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn prefs_a1(&self) -> Vec<Vec<usize>> {
        self.0.prefs_a1().to_vec()
    }

    #[getter]
    fn prefs_a2(&self) -> Vec<Vec<usize>> {
        self.0.prefs_a2().to_vec()
    }
}

#[pyfunction]
fn gen_full(n1: usize, n2: usize, m: usize, seed: u64) -> PyResult<PyFull> {
    Ok(PyFull(instance::gen_full(n1, n2, m, seed).map_err(to_py)?))
}

#[pyfunction]
fn gen_reduced(n1: usize, n2: usize, m: usize, seed: u64) -> PyResult<PyReduced> {
    Ok(PyReduced(instance::gen_reduced(n1, n2, m, seed).map_err(to_py)?))
}

/// Whether a 2-weighted popular matching exists (requires w1 >= 2 w2).
#[pyfunction]
fn exists_2wpm(instance: &PyReduced) -> PyResult<bool> {
    wellformed::exists_2wpm(&instance.0).map_err(to_py)
}

/// `{feasible, weights_dominant, matching, witness}`.
#[pyfunction]
fn check<'py>(py: Python<'py>, instance: &PyReduced) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &wellformed::check(&instance.0).map_err(to_py)?)
}

/// Brute-force popularity search: `{popular_exists, matching, popular_count, matchings_enumerated}`.
#[pyfunction]
#[pyo3(signature = (instance, cap = DEFAULT_CAP))]
fn find_popular<'py>(py: Python<'py>, instance: &PyFull, cap: u128) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| popularity::find_popular(&instance.0, cap))
        .map_err(to_py)?;
    to_dict(py, &report)
}

#[pyfunction]
fn census<'py>(py: Python<'py>, instance: &PyReduced) -> PyResult<Bound<'py, PyAny>> {
    let graph = build(&instance.0).map_err(to_py)?;
    to_dict(py, &census_mod::census(&instance.0, &graph))
}

/// Exact bounds; each rational is `{"exact": "p/q", "approx": float}`.
#[pyfunction]
#[pyo3(signature = (n1, n2, m, c = "auto"))]
fn bounds<'py>(py: Python<'py>, n1: u64, n2: u64, m: u64, c: &str) -> PyResult<Bound<'py, PyAny>> {
    let policy: CPolicy = c.parse().map_err(to_py)?;
    to_dict(py, &census_mod::bounds(n1, n2, m, &policy).map_err(to_py)?)
}

#[pyfunction]
#[pyo3(signature = (n1, n2, m, trials, seed, jobs = 0))]
fn run_trials<'py>(
    py: Python<'py>,
    n1: usize,
    n2: usize,
    m: usize,
    trials: usize,
    seed: u64,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let config = TrialConfig {
        jobs,
        ..TrialConfig::new(n1, n2, m, trials, seed)
    };
    let record = py.detach(|| experiment::run_trials(&config)).map_err(to_py)?;
    to_dict(py, &record)
}

#[pyfunction]
#[pyo3(signature = (n1, n2, trials, seed, target = 0.5, jobs = 0))]
fn threshold_search<'py>(
    py: Python<'py>,
    n1: usize,
    n2: usize,
    trials: usize,
    seed: u64,
    target: f64,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let t = py
        .detach(|| experiment::threshold_search(n1, n2, trials, seed, target, jobs))
        .map_err(to_py)?;
    to_dict(py, &t)
}

#[pymodule]
fn pypopmatch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReduced>()?;
    m.add_class::<PyFull>()?;
    m.add_function(wrap_pyfunction!(gen_full, m)?)?;
    m.add_function(wrap_pyfunction!(gen_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(exists_2wpm, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(find_popular, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(run_trials, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_search, m)?)?;
    Ok(())
}
