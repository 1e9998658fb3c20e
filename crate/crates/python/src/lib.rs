//! Python bindings: graphs, groups and covers, plus the verifiers as
//! functions returning plain dictionaries.

use galois_span::cover::random_connected_voltage;
use galois_span::family::{kappa_degree_in_t, lemma_matrix_check, nonexistence_certificate, FamilySpec};
use galois_span::group::parse_group;
use galois_span::lfunction::{verify_factorization, verify_inter_rel, verify_prop_formula};
use galois_span::poset::{cyclic_poset, describe_subgroup, kernel_poset};
use galois_span::theorems::{check_table1, verify_brauer_kuroda, verify_euler_zero, verify_hmsv, verify_kuroda};
use galois_span::{CharacterTable, Cover, FiniteGroup, SerreGraph, Subgroup, VoltageAssignment};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serialized through JSON so that big integers stay decimal strings.
fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Graph", module = "galois_span_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: SerreGraph,
}

#[pymethods]
impl PyGraph {
    /// Undirected edge list on `vertices` vertices; `(v, v)` is a loop.
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: SerreGraph::build(vertices, &edges).map_err(err)?,
        })
    }

    #[staticmethod]
    fn bouquet(loops: usize) -> Self {
        PyGraph {
            inner: SerreGraph::bouquet(loops),
        }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph {
            inner: SerreGraph::cycle(n),
        }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph {
            inner: SerreGraph::complete(n),
        }
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: SerreGraph::load(path).map_err(err)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count() / 2
    }

    #[getter]
    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    /// Number of spanning trees.
    fn kappa(&self) -> PyResult<BigInt> {
        self.inner.spanning_tree_count().map_err(err)
    }

    /// Coefficients of `h_X(u)`, constant term first.
    fn ihara_h(&self) -> PyResult<Vec<BigInt>> {
        Ok(self.inner.ihara_h_poly().map_err(err)?.coeffs().to_vec())
    }

    fn hashimoto<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.hashimoto_check().map_err(err)?)
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot("X")
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.vertex_count(), self.edge_count())
    }
}

#[pyclass(name = "Group", module = "galois_span_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: FiniteGroup,
}

impl PyGroup {
    fn subgroup(&self, generators: &[String]) -> PyResult<Subgroup> {
        let ids = generators
            .iter()
            .map(|s| self.inner.element_by_label(s))
            .collect::<galois_span::Result<Vec<_>>>()
            .map_err(err)?;
        self.inner.generated_subgroup(&ids).map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    /// A specification such as `"S3"`, `"C2xC6"`, `"Q8"` or `"Dic3"`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: parse_group(spec).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_cyclic(&self) -> bool {
        self.inner.is_cyclic()
    }

    fn irreducibly_represented(&self) -> PyResult<bool> {
        Ok(CharacterTable::new(&self.inner).map_err(err)?.is_irreducibly_represented())
    }

    fn exceptional(&self) -> bool {
        galois_span::character::is_exceptional(&self.inner)
    }

    /// Every subgroup as a list of element labels.
    fn subgroups(&self) -> PyResult<Vec<Vec<String>>> {
        let subs = self.inner.all_subgroups().map_err(err)?;
        Ok(subs.iter().map(|h| self.inner.subgroup_labels(h)).collect())
    }

    fn cyclic_subgroups(&self) -> Vec<Vec<String>> {
        self.inner
            .cyclic_subgroups()
            .iter()
            .map(|h| self.inner.subgroup_labels(h))
            .collect()
    }

    fn character_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &CharacterTable::new(&self.inner).map_err(err)?.to_json())
    }

    /// Möbius values `μ(x, y)` of the kernel or cyclic-subgroup poset.
    #[pyo3(signature = (kind = "cyclic"))]
    fn mobius<'py>(&self, py: Python<'py>, kind: &str) -> PyResult<Bound<'py, PyAny>> {
        let sp = match kind {
            "cyclic" => cyclic_poset(&self.inner),
            "kernel" => kernel_poset(&self.inner, &CharacterTable::new(&self.inner).map_err(err)?),
            _ => return Err(PyValueError::new_err("kind must be 'cyclic' or 'kernel'")),
        };
        to_py(py, &sp.mobius().entries(sp.poset()))
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.name(), self.inner.order())
    }
}

#[pyclass(name = "Cover", module = "galois_span_py", frozen)]
struct PyCover {
    inner: Cover,
}

fn report<'py, T: Serialize>(py: Python<'py>, r: galois_span::Result<T>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &r.map_err(err)?)
}

#[pymethods]
impl PyCover {
    /// `voltages[i]` labels the voltage of the i-th edge of the default orientation.
    #[new]
    fn new(base: &PyGraph, group: &PyGroup, voltages: Vec<String>) -> PyResult<Self> {
        let labels: Vec<&str> = voltages.iter().map(String::as_str).collect();
        let alpha = VoltageAssignment::from_labels(base.inner.clone(), group.inner.clone(), &labels).map_err(err)?;
        Ok(PyCover { inner: alpha.derive() })
    }

    /// A seeded random connected cover.
    #[staticmethod]
    fn random(base: &PyGraph, group: &PyGroup, seed: u64) -> PyResult<Self> {
        let alpha = random_connected_voltage(&base.inner, &group.inner, seed).map_err(err)?;
        Ok(PyCover { inner: alpha.derive() })
    }

    #[staticmethod]
    fn load(base: &PyGraph, path: &str) -> PyResult<Self> {
        let alpha = VoltageAssignment::load(base.inner.clone(), path).map_err(err)?;
        Ok(PyCover { inner: alpha.derive() })
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup {
            inner: self.inner.group().clone(),
        }
    }

    #[getter]
    fn base(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.base().clone(),
        }
    }

    #[getter]
    fn derived(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.derived().clone(),
        }
    }

    fn is_galois(&self) -> bool {
        self.inner.is_galois()
    }

    fn kappa(&self) -> PyResult<BigInt> {
        self.inner.kappa().map_err(err)
    }

    /// `κ(X_H)` for the subgroup generated by `generators`.
    fn intermediate_kappa(&self, generators: Vec<String>) -> PyResult<BigInt> {
        let h = self.group().subgroup(&generators)?;
        self.inner.intermediate_graph(&h).and_then(|x| x.kappa()).map_err(err)
    }

    /// `(description, order, κ(X_H))` for every subgroup `H`.
    fn intermediates(&self) -> PyResult<Vec<(String, usize, BigInt)>> {
        let g = self.inner.group();
        let subs = g.all_subgroups().map_err(err)?;
        let kappas = self.inner.intermediate_kappas(&subs).map_err(err)?;
        Ok(subs
            .iter()
            .zip(kappas)
            .map(|(h, k)| (describe_subgroup(g, h), h.order(), k))
            .collect())
    }

    fn verify_kuroda<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, verify_kuroda(&self.inner))
    }

    fn verify_brauer_kuroda<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, verify_brauer_kuroda(&self.inner))
    }

    fn verify_hmsv<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, verify_hmsv(&self.inner))
    }

    fn verify_euler_zero<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, verify_euler_zero(&self.inner))
    }

    fn verify_prop_formula<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, verify_prop_formula(&self.inner))
    }

    fn verify_factorization<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, verify_factorization(&self.inner))
    }

    fn verify_inter_rel<'py>(&self, py: Python<'py>, generators: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        let h = self.group().subgroup(&generators)?;
        report(py, verify_inter_rel(&self.inner, &h))
    }

    fn __repr__(&self) -> String {
        format!(
            "Cover(group={:?}, vertices={})",
            self.inner.group().name(),
            self.inner.derived().vertex_count()
        )
    }
}

/// Determinant check for the family matrix `M`.
#[pyfunction]
fn lemma_matrix<'py>(py: Python<'py>, p: Vec<u64>, s: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
    report(py, lemma_matrix_check(&p, &s))
}

/// Degree in `t` of `κ` over the quotient `Z/p^a` of the family `(p, s, b)`.
#[pyfunction]
fn kappa_degree(p: Vec<u64>, s: Vec<u32>, b: Vec<u32>, a: Vec<u32>) -> PyResult<usize> {
    let f = FamilySpec::new(p, s, b).map_err(err)?;
    kappa_degree_in_t(&f, &a).map_err(err)
}

#[pyfunction]
fn nonexistence<'py>(py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyAny>> {
    report(py, nonexistence_certificate(n))
}

#[pyfunction]
fn table1<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &check_table1())
}

#[pymodule]
fn galois_span_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCover>()?;
    m.add_function(wrap_pyfunction!(lemma_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_degree, m)?)?;
    m.add_function(wrap_pyfunction!(nonexistence, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    Ok(())
}
