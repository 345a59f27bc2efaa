//! Python bindings for `mckay-core`.
//!
//! Structured results (verification reports, graphs, surveys) cross the
//! boundary as JSON strings so the Python side can use `json.loads`.

use mckay_core::cli::suite_reports;
use mckay_core::diagram::{classify, Multigraph};
use mckay_core::group::FiniteSubgroup;
use mckay_core::groupspec::{parse_spec, GroupSpec};
use mckay_core::io::{dot, graph_json, group_json, read_graph_json};
use mckay_core::survey::run_survey;
use mckay_core::verify::{check_dimension_multiset, GroupAnalysis, VerificationReport};
use mckay_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(mckay, McKayError, PyException);
create_exception!(mckay, NumericError, McKayError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Input(_) => PyValueError::new_err(e.to_string()),
        e if e.is_numeric() => NumericError::new_err(e.to_string()),
        e => McKayError::new_err(e.to_string()),
    }
}

fn reports_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string(reports).expect("reports serialize")
}

/// A finite subgroup of SU(2) or SU(2)×SU(2), built from a spec string such
/// as `"2I"`, `"prod(2T, C3)"`, `"diag(2O)"` or `"gens:path.json"`.
#[pyclass(module = "mckay", frozen)]
struct Group {
    spec: GroupSpec,
    group: FiniteSubgroup,
}

#[pymethods]
impl Group {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let spec = parse_spec(spec).map_err(to_py)?;
        let group = spec.build().map_err(to_py)?;
        Ok(Group { spec, group })
    }

    #[getter]
    fn spec(&self) -> String {
        self.spec.to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.group.order()
    }

    /// `"SU2"` or `"SU2xSU2"`.
    #[getter]
    fn ambient(&self) -> &'static str {
        self.group.ambient().as_str()
    }

    /// Elements as 8-tuples `(a1, b1, c1, d1, a2, b2, c2, d2)`.
    fn elements(&self) -> Vec<[f64; 8]> {
        self.group.elements().iter().map(|p| p.coords()).collect()
    }

    fn to_json(&self) -> String {
        group_json(&self.group)
    }

    /// Character table, McKay graph and classification data.
    #[pyo3(signature = (seed = 0, tol = 1e-6))]
    fn analyze(&self, py: Python<'_>, seed: u64, tol: f64) -> PyResult<Analysis> {
        let (label, group) = (self.spec.to_string(), self.group.clone());
        let inner = py.detach(|| GroupAnalysis::new(label, group, seed, tol)).map_err(to_py)?;
        Ok(Analysis { spec: self.spec.clone(), seed, inner })
    }

    fn __len__(&self) -> usize {
        self.group.order()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', order={})", self.spec, self.group.order())
    }
}

#[pyclass(module = "mckay", frozen)]
struct Analysis {
    spec: GroupSpec,
    seed: u64,
    inner: GroupAnalysis,
}

#[pymethods]
impl Analysis {
    /// Irreducible degrees in table row order; the trivial row comes first.
    fn dims(&self) -> Vec<u32> {
        self.inner.dims()
    }

    fn class_sizes(&self) -> Vec<usize> {
        self.inner.table.class_sizes().to_vec()
    }

    /// Character values as `(re, im)` pairs, one row per irreducible.
    fn character_table(&self) -> Vec<Vec<(f64, f64)>> {
        self.inner.table.rows().iter().map(|r| r.iter().map(|z| (z.re, z.im)).collect()).collect()
    }

    fn has_minus_one(&self) -> bool {
        self.inner.has_minus_one()
    }

    fn graph_json(&self) -> String {
        graph_json(&self.inner.graph)
    }

    fn dot(&self) -> String {
        dot(&self.inner.graph)
    }

    /// Type of the whole diagram, e.g. `"ExtE(8)"` for 2I.
    fn diagram_type(&self) -> PyResult<String> {
        Ok(classify(&self.inner.graph.total_graph()).map_err(to_py)?.to_string())
    }

    /// Runs a suite (`su2`, `parity`, `so4`, `apps` or `all`) and returns the
    /// reports as a JSON array.
    #[pyo3(signature = (suite = "all"))]
    fn verify(&self, py: Python<'_>, suite: &str) -> PyResult<String> {
        let reports = py
            .detach(|| suite_reports(&self.inner, &self.spec, suite, self.seed, self.inner.tol))
            .map_err(to_py)?;
        Ok(reports_json(&reports))
    }
}

/// Normalized form of a spec string; raises `ValueError` with the offset.
#[pyfunction]
fn normalize_spec(spec: &str) -> PyResult<String> {
    Ok(parse_spec(spec).map_err(to_py)?.to_string())
}

/// Classifies each connected component of each colour of a graph given as
/// JSON. Returns `(color, vertex ids, type)` triples.
#[pyfunction]
fn classify_graph(json: &str) -> PyResult<Vec<(u8, Vec<usize>, String)>> {
    let g = read_graph_json(json).map_err(to_py)?;
    let mut out = Vec::new();
    for &color in g.colors() {
        let layer: Multigraph = g.layer(color);
        for comp in layer.components() {
            let t = classify(&layer.induced(&comp)).map_err(to_py)?;
            out.push((color, comp, t.to_string()));
        }
    }
    Ok(out)
}

/// Necessary conditions on a list of irreducible dimensions, as a JSON report.
#[pyfunction]
fn check_dimensions(dims: Vec<u32>) -> PyResult<String> {
    let r = check_dimension_multiset(&dims).map_err(to_py)?;
    Ok(reports_json(std::slice::from_ref(&r)))
}

/// Runs every applicable suite over the corpus up to `max_order`.
#[pyfunction]
#[pyo3(signature = (max_order, seed = 0, tol = 1e-6))]
fn survey(py: Python<'_>, max_order: u64, seed: u64, tol: f64) -> String {
    py.detach(|| run_survey(max_order, seed, tol).to_json())
}

#[pymodule]
fn mckay(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Analysis>()?;
    m.add_function(wrap_pyfunction!(normalize_spec, m)?)?;
    m.add_function(wrap_pyfunction!(classify_graph, m)?)?;
    m.add_function(wrap_pyfunction!(check_dimensions, m)?)?;
    m.add_function(wrap_pyfunction!(survey, m)?)?;
    m.add("McKayError", m.py().get_type::<McKayError>())?;
    m.add("NumericError", m.py().get_type::<NumericError>())?;
    Ok(())
}
