//! Python module `induced_c4`: graphs, detection, witness search and
//! verification.

use induced_c4 as core;
use core::decomposition::DecompConfig;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

fn value_error(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Undirected simple graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "induced_c4", skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: core::Graph,
}

impl PyGraph {
    fn check(&self, u: usize, v: usize) -> PyResult<()> {
        if u >= self.inner.n() || v >= self.inner.n() {
            return Err(PyIndexError::new_err(format!("edge ({u}, {v}) out of range for n = {}", self.inner.n())));
        }
        if u == v {
            return Err(PyValueError::new_err(format!("self-loop on vertex {u}")));
        }
        Ok(())
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let mut g = PyGraph { inner: core::Graph::new(n) };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Generates a graph from a spec string such as `gnp:n=64,p=0.5,seed=1`.
    #[staticmethod]
    fn generate(spec: &str) -> PyResult<Self> {
        let spec: core::GraphSpec = spec.parse().map_err(value_error)?;
        Ok(PyGraph { inner: spec.generate().map_err(value_error)?.graph })
    }

    /// Parses the edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: core::load_graph(text).map_err(value_error)? })
    }

    /// Serializes to the edge-list text format.
    fn to_text(&self) -> String {
        core::write_graph(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn add_edge(&mut self, u: usize, v: usize) -> PyResult<()> {
        self.check(u, v)?;
        self.inner.add_edge(u, v);
        Ok(())
    }

    fn remove_edge(&mut self, u: usize, v: usize) -> PyResult<()> {
        self.check(u, v)?;
        self.inner.remove_edge(u, v);
        Ok(())
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check(u, v)?;
        Ok(self.inner.has_edge(u, v))
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Result of [`detect`].
#[pyclass(name = "DetectionReport", module = "induced_c4", get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyReport {
    found: bool,
    phase: String,
    witness: Option<(usize, usize, usize, usize)>,
    n: usize,
    ms_total: f64,
    fallback: String,
    line: String,
}

#[pymethods]
impl PyReport {
    fn __bool__(&self) -> bool {
        self.found
    }

    fn __str__(&self) -> String {
        self.line.clone()
    }

    fn __repr__(&self) -> String {
        format!("DetectionReport({})", self.line)
    }
}

fn tuple(w: core::C4Witness) -> (usize, usize, usize, usize) {
    let [a, b, c, d] = w.as_array();
    (a, b, c, d)
}

fn config(n0: Option<usize>) -> DecompConfig {
    let mut cfg = DecompConfig::default();
    if let Some(n0) = n0 {
        cfg.n0 = n0;
    }
    cfg
}

/// Decides whether `g` has an induced 4-cycle. `n0` overrides the size
/// below which the exact search answers directly.
#[pyfunction]
#[pyo3(signature = (g, n0 = None))]
fn detect(py: Python<'_>, g: &PyGraph, n0: Option<usize>) -> PyReport {
    let cfg = config(n0);
    let r = py.detach(|| core::detect(&g.inner, &cfg));
    PyReport {
        found: r.found,
        phase: r.phase.as_str().to_string(),
        witness: r.witness.map(tuple),
        n: r.n,
        ms_total: r.timings.total,
        fallback: r.fallback.as_str().to_string(),
        line: r.to_string(),
    }
}

/// Returns an induced 4-cycle `(a, b, c, d)` in cyclic order, or `None`.
#[pyfunction]
#[pyo3(signature = (g, n0 = None))]
fn find(py: Python<'_>, g: &PyGraph, n0: Option<usize>) -> PyResult<Option<(usize, usize, usize, usize)>> {
    let cfg = config(n0);
    let w = py.detach(|| core::find(&g.inner, &cfg)).map_err(value_error)?;
    Ok(w.map(tuple))
}

/// Exact cubic-time search.
#[pyfunction]
fn oracle_detect(py: Python<'_>, g: &PyGraph) -> Option<(usize, usize, usize, usize)> {
    py.detach(|| core::oracle_detect(&g.inner)).map(tuple)
}

/// True iff `a-b-c-d-a` is an induced 4-cycle of `g`.
#[pyfunction]
fn verify_witness(g: &PyGraph, a: usize, b: usize, c: usize, d: usize) -> bool {
    core::verify_witness(&g.inner, &core::C4Witness::new(a, b, c, d))
}

#[pymodule]
#[pyo3(name = "induced_c4")]
fn induced_c4_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(find, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_detect, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    Ok(())
}
