//! Python bindings for `bchfam`.

use std::path::Path;
use std::sync::Arc;

use bchfam::analysis::{Analyzer, Cache};
use bchfam::bounds::certify_distance_optimal;
use bchfam::codes::{DistanceStatus, DEFAULT_BUDGET};
use bchfam::cosets::{all_cosets, odd_cosets};
use bchfam::gf::{make_field, FieldDesc};
use bchfam::{families, tables, DefiningSet, Elem, Kind, LinearCode};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: bchfam::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn analyzer(budget: u64, cache: Option<&str>) -> PyResult<Analyzer> {
    Ok(match cache {
        Some(path) => Analyzer::with_cache(budget, Cache::open(Path::new(path)).map_err(err)?),
        None => Analyzer::new(budget),
    })
}

/// Finite field `F_{p^m}`. Elements are integers in `0..q`.
#[pyclass(name = "Field", frozen)]
struct PyField {
    inner: Arc<FieldDesc>,
}

impl PyField {
    fn elem(&self, x: u32) -> PyResult<Elem> {
        self.inner
            .elem(x)
            .ok_or_else(|| PyValueError::new_err(format!("{x} is not an element of F_{}", self.inner.q())))
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m = 1))]
    fn new(p: u64, m: u32) -> PyResult<Self> {
        Ok(PyField {
            inner: make_field(p, m).map_err(err)?,
        })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.add(self.elem(a)?, self.elem(b)?).code())
    }

    fn sub(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.sub(self.elem(a)?, self.elem(b)?).code())
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.mul(self.elem(a)?, self.elem(b)?).code())
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.elem(a)?, e).code())
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.inv(self.elem(a)?).map_err(err)?.code())
    }

    fn __repr__(&self) -> String {
        format!("Field({}, {})", self.inner.p(), self.inner.m())
    }
}

/// Linear code held as a canonical generator matrix.
#[pyclass(name = "Code", frozen)]
struct PyCode {
    inner: LinearCode,
}

fn wrap(r: bchfam::Result<LinearCode>) -> PyResult<PyCode> {
    r.map(|inner| PyCode { inner }).map_err(err)
}

#[pymethods]
impl PyCode {
    /// Cyclic (or negacyclic) code whose defining set is the union of the
    /// cosets with the given representatives.
    #[staticmethod]
    #[pyo3(signature = (q, n, reps, negacyclic = false))]
    fn from_cosets(q: u64, n: u64, reps: Vec<u64>, negacyclic: bool) -> PyResult<Self> {
        let kind = if negacyclic { Kind::Negacyclic } else { Kind::Cyclic };
        let t = DefiningSet::from_reps(q, n, kind, &reps).map_err(err)?;
        let f = bchfam::gf::field_of_order(q).map_err(err)?;
        wrap(LinearCode::from_defining_set(&f, &t))
    }

    #[staticmethod]
    fn from_family(id: &str, param: &str) -> PyResult<Self> {
        let spec = families::find(id).map_err(err)?;
        let param = spec.parse_param(param).map_err(err)?;
        wrap(families::instantiate(id, &param).map(|(code, _)| code))
    }

    #[staticmethod]
    fn from_generator_matrix(q: u64, n: usize, rows: Vec<Vec<u32>>) -> PyResult<Self> {
        let f = bchfam::gf::field_of_order(q).map_err(err)?;
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| f.elem(x).ok_or_else(|| PyValueError::new_err(format!("{x} is not in F_{q}"))))
                    .collect::<PyResult<Vec<Elem>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        wrap(LinearCode::from_generator_matrix(&f, n, &rows))
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn bch_bound(&self) -> Option<u64> {
        self.inner.bch_bound()
    }

    #[getter]
    fn boston_bound(&self) -> Option<u64> {
        self.inner.boston_bound()
    }

    #[getter]
    fn lower_bound(&self) -> u64 {
        self.inner.lower_bound()
    }

    fn generator_matrix(&self) -> Vec<Vec<u32>> {
        self.inner
            .generator_matrix()
            .into_iter()
            .map(|r| r.into_iter().map(Elem::code).collect())
            .collect()
    }

    fn dual(&self) -> PyResult<Self> {
        wrap(self.inner.dual())
    }

    fn shorten(&self, position: usize) -> PyResult<Self> {
        wrap(self.inner.shorten(position))
    }

    fn puncture(&self, position: usize) -> PyResult<Self> {
        wrap(self.inner.puncture(position))
    }

    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn construction_y1(&self, budget: u64) -> PyResult<Self> {
        wrap(self.inner.construction_y1(budget))
    }

    /// Weight counts `[A_0, ..., A_n]`, or `None` when neither the code nor
    /// its dual fits in `budget`.
    #[pyo3(signature = (budget = DEFAULT_BUDGET, cache = None))]
    fn weight_distribution<'py>(&self, py: Python<'py>, budget: u64, cache: Option<&str>) -> PyResult<Option<Bound<'py, PyAny>>> {
        let a = analyzer(budget, cache)?;
        let dist = py.detach(|| a.distribution(&self.inner)).map_err(err)?;
        if !dist.is_exact() {
            return Ok(None);
        }
        let int = py.import("builtins")?.getattr("int")?;
        let counts = dist
            .counts()
            .iter()
            .map(|c| int.call1((c.to_string(),)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Some(pyo3::types::PyList::new(py, counts)?.into_any()))
    }

    /// `(d, exact)`. Without enumeration `d` is the best lower bound.
    #[pyo3(signature = (budget = DEFAULT_BUDGET, cache = None))]
    fn min_distance(&self, py: Python<'_>, budget: u64, cache: Option<&str>) -> PyResult<(Option<u64>, bool)> {
        let a = analyzer(budget, cache)?;
        let (md, _) = py.detach(|| a.min_distance(&self.inner)).map_err(err)?;
        Ok((md.d, md.status == DistanceStatus::Exact))
    }

    fn contains(&self, word: Vec<u32>) -> PyResult<bool> {
        let f = self.inner.field();
        let word = word
            .into_iter()
            .map(|x| f.elem(x).ok_or_else(|| PyValueError::new_err(format!("{x} is not a field element"))))
            .collect::<PyResult<Vec<_>>>()?;
        self.inner.contains(&word).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Code([{}, {}]_{})", self.inner.n(), self.inner.k(), self.inner.q())
    }
}

/// Cyclotomic cosets of `Z_n`, or the odd cosets of `Z_{2n}` when
/// `negacyclic` is set.
#[pyfunction]
#[pyo3(signature = (q, n, negacyclic = false))]
fn cosets(q: u64, n: u64, negacyclic: bool) -> PyResult<Vec<Vec<u64>>> {
    let cs = if negacyclic { odd_cosets(q, 2 * n) } else { all_cosets(q, n) }.map_err(err)?;
    Ok(cs.iter().map(|c| c.elems().to_vec()).collect())
}

#[pyfunction]
fn certify<'py>(py: Python<'py>, q: u64, n: usize, k: usize, d: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &certify_distance_optimal(q, n, k, d).map_err(err)?)
}

#[pyfunction]
fn family_ids() -> Vec<&'static str> {
    families::catalog().iter().map(|s| s.id).collect()
}

#[pyfunction]
#[pyo3(signature = (id, param, budget = DEFAULT_BUDGET, cache = None))]
fn verify_instance<'py>(py: Python<'py>, id: &str, param: &str, budget: u64, cache: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let param = families::find(id).and_then(|s| s.parse_param(param)).map_err(err)?;
    let a = analyzer(budget, cache)?;
    let report = py.detach(|| families::verify_instance_with(id, &param, &a)).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (id, max_n = 255, exact_max_n = 255, budget = DEFAULT_BUDGET, cache = None))]
fn verify_family<'py>(
    py: Python<'py>,
    id: &str,
    max_n: u64,
    exact_max_n: u64,
    budget: u64,
    cache: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let a = analyzer(budget, cache)?;
    let reports = py
        .detach(|| families::verify_family_with(id, max_n, exact_max_n, &a))
        .map_err(err)?;
    to_py(py, &reports)
}

#[pyfunction]
#[pyo3(signature = (table, budget = DEFAULT_BUDGET, cache = None))]
fn regenerate_table<'py>(py: Python<'py>, table: u8, budget: u64, cache: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let a = analyzer(budget, cache)?;
    let report = py.detach(|| tables::regenerate(table, &a)).map_err(err)?;
    to_py(py, &report)
}

/// Runs the command-line tool with `argv` (without the program name) and
/// returns its exit code.
#[pyfunction]
fn run_cli(py: Python<'_>, argv: Vec<String>) -> i32 {
    let full: Vec<String> = std::iter::once("bchfam".to_string()).chain(argv).collect();
    py.detach(|| bchfam::cli::run(full))
}

#[pymodule(name = "bchfam")]
fn bchfam_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(cosets, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(family_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify_instance, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(regenerate_table, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
