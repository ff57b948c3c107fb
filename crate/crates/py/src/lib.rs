//! Python bindings. Structured results cross over as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;
use zpstab::analysis::{analyze as analyze_polygon, AnalysisResult};
use zpstab::continuous::{bean, chord_campaign, ellipse, star, ChordSelection, CurveSample};
use zpstab::io::{parse_polygon, polygon_to_json};
use zpstab::oracle::counterexample::reconstruct_counterexample;
use zpstab::oracle::equivalence::{verify_zp_equivalence, PolygonPair};
use zpstab::render::{render_svg, RenderOptions};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(v).map_err(err)?;
    Ok(py.import_bound("json")?.call_method1("loads", (text,))?.unbind())
}

/// A simple polygon with integer vertices in general position.
#[pyclass(name = "Polygon", frozen)]
#[derive(Clone)]
struct PyPolygon {
    inner: zpstab::Polygon,
    decimals: u32,
}

#[pymethods]
impl PyPolygon {
    #[new]
    fn new(vertices: Vec<(i64, i64)>) -> PyResult<Self> {
        Ok(PyPolygon { inner: zpstab::Polygon::from_coords(&vertices).map_err(err)?, decimals: 0 })
    }

    /// Parses a polygon file: `{"vertices": [[x, y], ...]}`, decimal strings allowed.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let l = parse_polygon(text).map_err(err)?;
        Ok(PyPolygon { inner: l.polygon, decimals: l.decimals })
    }

    fn to_json(&self) -> String {
        polygon_to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn vertices(&self) -> Vec<(i64, i64)> {
        self.inner.vertices().iter().map(|p| (p.x, p.y)).collect()
    }

    fn is_edge(&self, a: usize, b: usize) -> bool {
        self.inner.is_edge(a, b)
    }

    /// Raw `(tail, body, head)` crossing counts of the line through `x` and `y`.
    fn stab(&self, x: usize, y: usize) -> PyResult<(u32, u32, u32)> {
        let n = self.inner.n();
        if x >= n || y >= n || x == y {
            return Err(PyValueError::new_err(format!("bad pair ({x}, {y}) for {n} vertices")));
        }
        let t = zpstab::stab_triple(&self.inner, x, y);
        Ok((t.tail, t.body, t.head))
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Polygon(n={})", self.inner.n())
    }
}

/// Stabbing table, classification and oracle comparison of one polygon.
#[pyclass(name = "Analysis", frozen)]
struct PyAnalysis {
    inner: AnalysisResult,
}

#[pymethods]
impl PyAnalysis {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn counts(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &self.inner.counts)
    }

    /// `(x, y, class, provenance, oracle)` for every visible pair.
    fn edges(&self) -> Vec<(usize, usize, String, String, String)> {
        self.inner
            .edges
            .iter()
            .map(|e| (e.pair.0, e.pair.1, format!("{:?}", e.class), e.provenance.label().to_string(), format!("{:?}", e.oracle)))
            .collect()
    }

    /// ZP letters (`z`, `o`, `e`) of Tail, Body and Head for `(x, y)`.
    fn zp(&self, x: usize, y: usize) -> PyResult<String> {
        let c = self.inner.zp_at(x, y).ok_or_else(|| PyValueError::new_err(format!("no entry ({x}, {y})")))?;
        Ok(c.iter().map(|c| c.letter()).collect())
    }

    fn ambiguous(&self) -> Vec<(usize, usize)> {
        self.inner.ambiguity.iter().map(|a| a.pair).collect()
    }

    fn table_text(&self) -> String {
        self.inner.table_text()
    }

    fn classification_text(&self) -> String {
        self.inner.classification_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &self.inner)
    }

    #[pyo3(signature = (title=None, highlight=Vec::new(), labels=true))]
    fn render_svg(&self, title: Option<String>, highlight: Vec<(usize, usize)>, labels: bool) -> String {
        render_svg(&self.inner, &RenderOptions { title, highlight, labels })
    }
}

#[pyfunction]
fn analyze(py: Python<'_>, polygon: &PyPolygon) -> PyResult<PyAnalysis> {
    let (p, d) = (polygon.inner.clone(), polygon.decimals);
    let inner = py.allow_threads(move || analyze_polygon(&p, d, false)).map_err(err)?;
    Ok(PyAnalysis { inner })
}

/// Compares the ZP tables of two polygons under a vertex correspondence
/// (identity by default).
#[pyfunction]
#[pyo3(signature = (a, b, correspondence=None))]
fn verify_pair(py: Python<'_>, a: &PyPolygon, b: &PyPolygon, correspondence: Option<Vec<usize>>) -> PyResult<PyObject> {
    let (a, b) = (a.inner.clone(), b.inner.clone());
    let pair = match correspondence {
        Some(c) => PolygonPair::new(a, b, c),
        None => PolygonPair::identity(a, b),
    }
    .map_err(err)?;
    to_py(py, &verify_zp_equivalence(&pair))
}

/// The frozen ZP-equivalent pair whose `(0, 8)` differs in class.
#[pyfunction]
fn counterexample() -> (PyPolygon, PyPolygon) {
    let p = reconstruct_counterexample();
    (PyPolygon { inner: p.a, decimals: 0 }, PyPolygon { inner: p.b, decimals: 0 })
}

/// Chord classification on a built-in curve (`ellipse`, `bean` or `star`).
#[pyfunction]
#[pyo3(signature = (shape, samples=2000, chords="random:500", seed=0))]
fn continuous(py: Python<'_>, shape: &str, samples: usize, chords: &str, seed: u64) -> PyResult<PyObject> {
    if samples < 8 {
        return Err(PyValueError::new_err("a curve needs at least 8 samples"));
    }
    let curve: CurveSample = match shape {
        "ellipse" => ellipse(2.0, 1.0, samples),
        "bean" => bean(samples),
        "star" => star(samples, 5),
        other => return Err(PyValueError::new_err(format!("unknown shape {other:?}"))),
    };
    let selection: ChordSelection = chords.parse().map_err(err)?;
    let mut r = py.allow_threads(|| chord_campaign(&curve, selection, seed));
    r.outcomes.clear();
    to_py(py, &r)
}

#[pymodule]
#[pyo3(name = "zpstab")]
fn zpstab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolygon>()?;
    m.add_class::<PyAnalysis>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pair, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(continuous, m)?)?;
    Ok(())
}
