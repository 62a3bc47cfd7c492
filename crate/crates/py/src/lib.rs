//! Python bindings: `import dpart`.

use delta_partitions::oracle;
use delta_partitions::output::{self, Format};
use delta_partitions::{
    self as core, Enumerator, ParamError, Params, PartitionView, PruneCheck, SearchStats,
};
use num_bigint::BigUint;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn params(n: usize, delta: usize) -> PyResult<Params> {
    Params::new(n, delta).map_err(value_error)
}

fn value_error(e: ParamError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn stats_dict<'py>(py: Python<'py>, stats: &SearchStats) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("nodes", stats.nodes)?;
    d.set_item("prunes_deficit", stats.prunes_deficit)?;
    d.set_item("forced_branches", stats.forced_branches)?;
    d.set_item("solutions", stats.solutions)?;
    Ok(d)
}

/// Iterator over the δ-partitions of {1..n} as lists of labels, in
/// lexicographic order.
#[pyclass(module = "dpart")]
struct DeltaPartitions {
    inner: Enumerator,
}

#[pymethods]
impl DeltaPartitions {
    #[new]
    #[pyo3(signature = (n, delta=0))]
    fn new(n: usize, delta: usize) -> PyResult<Self> {
        Ok(DeltaPartitions {
            inner: Enumerator::new(params(n, delta)?),
        })
    }

    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(&mut self) -> Option<Vec<usize>> {
        self.inner.next_solution().map(|v| v.to_vec())
    }

    /// Search counters so far: nodes, prunes_deficit, forced_branches, solutions.
    #[getter]
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        stats_dict(py, self.inner.stats())
    }
}

/// Partial assignment with incrementally maintained block sizes.
#[pyclass(module = "dpart", skip_from_py_object)]
#[derive(Clone)]
struct SearchState {
    inner: core::SearchState,
}

#[pymethods]
impl SearchState {
    #[new]
    #[pyo3(signature = (n, delta=0))]
    fn new(n: usize, delta: usize) -> PyResult<Self> {
        Ok(SearchState {
            inner: core::SearchState::new(params(n, delta)?),
        })
    }

    fn assign(&mut self, label: usize) -> PyResult<()> {
        if self.inner.is_complete() {
            return Err(PyIndexError::new_err("every element is already assigned"));
        }
        if label == 0 || label > self.inner.max_label() + 1 {
            return Err(PyValueError::new_err(format!(
                "label {label} outside 1..={}",
                self.inner.max_label() + 1
            )));
        }
        self.inner.assign(label);
        Ok(())
    }

    fn unassign(&mut self) -> PyResult<()> {
        if self.inner.assigned() == 0 {
            return Err(PyIndexError::new_err("nothing is assigned"));
        }
        self.inner.unassign();
        Ok(())
    }

    fn small_blocks(&self) -> Vec<usize> {
        self.inner.small_blocks()
    }

    /// `("continue", None)`, `("prune", None)` or `("forced", [labels])`.
    fn prune_check(&self) -> (&'static str, Option<Vec<usize>>) {
        match self.inner.prune_check() {
            PruneCheck::Continue => ("continue", None),
            PruneCheck::Prune => ("prune", None),
            PruneCheck::Forced(beta) => ("forced", Some(beta)),
        }
    }

    /// Recount everything from the labels; raises on disagreement.
    fn check_counters(&self) -> PyResult<()> {
        self.inner
            .check_counters()
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn labels(&self) -> Vec<usize> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn assigned(&self) -> usize {
        self.inner.assigned()
    }

    #[getter]
    fn max_label(&self) -> usize {
        self.inner.max_label()
    }

    #[getter]
    fn deficit(&self) -> u64 {
        self.inner.deficit()
    }

    #[getter]
    fn small_block_count(&self) -> usize {
        self.inner.small_block_count()
    }

    #[getter]
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        stats_dict(py, self.inner.stats())
    }

    fn __copy__(&self) -> Self {
        self.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchState(labels={:?}, deficit={}, small_blocks={})",
            self.inner.labels(),
            self.inner.deficit(),
            self.inner.small_block_count()
        )
    }
}

/// All δ-partitions as a list, optionally only the first `limit`.
#[pyfunction]
#[pyo3(signature = (n, delta=0, limit=None))]
fn enumerate(n: usize, delta: usize, limit: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
    let mut it = Enumerator::new(params(n, delta)?);
    let mut out = Vec::new();
    while limit.is_none_or(|l| out.len() < l) {
        match it.next_solution() {
            Some(v) => out.push(v.to_vec()),
            None => break,
        }
    }
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (n, delta=0))]
fn count(py: Python<'_>, n: usize, delta: usize) -> PyResult<BigUint> {
    let p = params(n, delta)?;
    py.detach(|| core::count(p)).map_err(value_error)
}

#[pyfunction]
fn bell_number(n: usize) -> BigUint {
    oracle::bell_number(n)
}

#[pyfunction]
fn all_partitions(n: usize) -> PyResult<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    oracle::all_partitions(n, |l| out.push(l.to_vec())).map_err(value_error)?;
    Ok(out)
}

#[pyfunction]
fn naive_delta_partitions(n: usize, delta: usize) -> PyResult<Vec<Vec<usize>>> {
    Ok(oracle::naive_delta_partitions(n, delta)
        .map_err(value_error)?
        .partitions)
}

/// Render a restricted growth string as "rgs", "blocks" or "jsonl".
#[pyfunction]
#[pyo3(signature = (labels, format="rgs"))]
fn render(labels: Vec<usize>, format: &str) -> PyResult<String> {
    let format: Format = format
        .parse()
        .map_err(|e: output::ParseError| PyValueError::new_err(e.to_string()))?;
    let mut max = 0;
    for &l in &labels {
        if l == 0 || l > max + 1 {
            return Err(PyValueError::new_err(format!(
                "{labels:?} is not a restricted growth string"
            )));
        }
        max = max.max(l);
    }
    Ok(output::render(&PartitionView::new(&labels), format))
}

#[pymodule]
fn dpart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<DeltaPartitions>()?;
    m.add_class::<SearchState>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(bell_number, m)?)?;
    m.add_function(wrap_pyfunction!(all_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(naive_delta_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    Ok(())
}
