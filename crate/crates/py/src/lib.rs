//! Python bindings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use schurlab::ci::{is_ci_subset, is_dci_group, SCAN_CAP};
use schurlab::lemmas::{run_check, Scope};
use schurlab::nets::{build_net, find_pcps};
use schurlab::rational::{analyze_matrix, primitive_rational_search, Corner};
use schurlab::sring::{complete_traces, enumerate_srings, ENUMERATION_CAP};
use schurlab::{Elem, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite abelian group `Z_{n_1} x ... x Z_{n_k}` in invariant-factor form.
#[pyclass(frozen, skip_from_py_object, module = "schurlab_py")]
#[derive(Clone)]
struct Group {
    inner: schurlab::Group,
}

#[pymethods]
impl Group {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Group { inner: schurlab::Group::parse(spec).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn factors(&self) -> Vec<u64> {
        self.inner.factors().to_vec()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    fn coords(&self, x: Elem) -> PyResult<Vec<u64>> {
        if x >= self.inner.order() {
            return Err(PyValueError::new_err("element out of range"));
        }
        Ok(self.inner.coords(x))
    }

    fn add(&self, a: Elem, b: Elem) -> PyResult<Elem> {
        if a.max(b) >= self.inner.order() {
            return Err(PyValueError::new_err("element out of range"));
        }
        Ok(self.inner.add(a, b))
    }

    /// Member lists of all subgroups.
    fn subgroups(&self) -> PyResult<Vec<Vec<Elem>>> {
        let subs = self.inner.all_subgroups(schurlab::group::DEFAULT_CAP).map_err(err)?;
        Ok(subs.iter().map(|h| h.members().to_vec()).collect())
    }

    /// All S-rings over the group.
    fn srings(&self) -> PyResult<Vec<SchurRing>> {
        let all = enumerate_srings(&self.inner, ENUMERATION_CAP).map_err(err)?;
        Ok(all.into_iter().map(|inner| SchurRing { inner }).collect())
    }

    /// The S-ring of traces.
    fn traces(&self) -> SchurRing {
        SchurRing { inner: complete_traces(&self.inner) }
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.inner.name())
    }
}

#[pyclass(frozen, module = "schurlab_py")]
struct SchurRing {
    inner: schurlab::sring::SchurRing,
}

#[pymethods]
impl SchurRing {
    /// Validates a partition of the group into basic sets.
    #[new]
    fn new(group: &Group, classes: Vec<Vec<Elem>>) -> PyResult<Self> {
        let inner = schurlab::sring::SchurRing::validate_partition(&group.inner, &classes).map_err(err)?;
        Ok(SchurRing { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn classes(&self) -> Vec<Vec<Elem>> {
        self.inner.classes().to_vec()
    }

    #[getter]
    fn group(&self) -> Group {
        Group { inner: self.inner.group().clone() }
    }

    fn is_primitive(&self) -> bool {
        self.inner.is_primitive()
    }

    fn is_schurian(&self) -> PyResult<bool> {
        self.inner.is_schurian().map_err(err)
    }

    fn a_subgroups(&self) -> Vec<Vec<Elem>> {
        self.inner.a_subgroups().iter().map(|h| h.members().to_vec()).collect()
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    fn __eq__(&self, other: &SchurRing) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("SchurRing(group='{}', rank={})", self.inner.group().name(), self.inner.rank())
    }
}

/// Whether `Cay(G, S)` is a CI-digraph.
#[pyfunction]
fn is_ci(group: &Group, set: Vec<Elem>) -> PyResult<bool> {
    Ok(is_ci_subset(&group.inner, &set).map_err(err)?.ci)
}

/// Exhaustive DCI scan, returned as a dict.
#[pyfunction]
fn dci_scan<'py>(py: Python<'py>, group: &Group) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| is_dci_group(&group.inner, SCAN_CAP, None)).map_err(err)?;
    to_py(py, &r)
}

/// Partial congruence partitions with `k` subgroups, up to automorphisms.
#[pyfunction]
fn pcps(group: &Group, k: usize) -> PyResult<Vec<Vec<Vec<Elem>>>> {
    let found = find_pcps(&group.inner, k, true).map_err(err)?;
    Ok(found.iter().map(|p| p.subgroups().iter().map(|h| h.members().to_vec()).collect()).collect())
}

/// `(v, k, lambda, mu)` of the collinearity graph of the first PCP found.
#[pyfunction]
fn net_parameters(group: &Group, k: usize) -> PyResult<(i64, i64, i64, i64)> {
    let found = find_pcps(&group.inner, k, true).map_err(err)?;
    let pcp = found.first().ok_or_else(|| PyValueError::new_err("no partial congruence partition"))?;
    let r = build_net(pcp).map_err(err)?.srg_check().map_err(err)?;
    Ok((r.v, r.degree, r.lambda, r.mu))
}

#[pyfunction]
fn analyze_corner<'py>(py: Python<'py>, p: u64, q: u64, matrix: &str) -> PyResult<Bound<'py, PyAny>> {
    let which = Corner::parse(matrix).map_err(err)?;
    to_py(py, &analyze_matrix(which, p, q).map_err(err)?)
}

#[pyfunction]
fn rational_search<'py>(py: Python<'py>, p: u64, q: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| primitive_rational_search(p, q)).map_err(err)?;
    to_py(py, &r)
}

/// Runs one statement check over its default scope.
#[pyfunction]
#[pyo3(signature = (id, p=None))]
fn check_statement<'py>(py: Python<'py>, id: &str, p: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| run_check(id, &Scope { p, ..Scope::default() })).map_err(err)?;
    to_py(py, &r)
}

/// Runs the command-line interface and returns `(code, stdout, stderr)`.
#[pyfunction]
fn cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let mut full = vec!["schurlab".to_string()];
    full.extend(args);
    let o = py.detach(|| schurlab::cli::dispatch(full));
    (o.code, o.stdout, o.stderr)
}

#[pymodule]
fn schurlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<SchurRing>()?;
    m.add_function(wrap_pyfunction!(is_ci, m)?)?;
    m.add_function(wrap_pyfunction!(dci_scan, m)?)?;
    m.add_function(wrap_pyfunction!(pcps, m)?)?;
    m.add_function(wrap_pyfunction!(net_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_corner, m)?)?;
    m.add_function(wrap_pyfunction!(rational_search, m)?)?;
    m.add_function(wrap_pyfunction!(check_statement, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
