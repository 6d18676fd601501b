use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::treenest::complex::{nested_set_complex, order_complex, subdivide_to_order_complex};
use ::treenest::homology::reduced_betti;
use ::treenest::lattice::{build_k_equal_lattice, build_partition_lattice, irreducibles};
use ::treenest::suites::{run_suite, Suite, SuiteParams};
use ::treenest::tree::{enumerate_hanlon_k_trees, enumerate_k_equal_trees, enumerate_tn};
use ::treenest::{self as core, BuildingSet, FieldChoice, FiniteLattice, GeometricLattice, SetPartition};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An abstract simplicial complex with string vertex labels.
#[pyclass(name = "SimplicialComplex", frozen)]
struct PyComplex(core::SimplicialComplex);

#[pymethods]
impl PyComplex {
    #[new]
    fn new(facets: Vec<Vec<String>>) -> Self {
        PyComplex(core::SimplicialComplex::from_facets(facets))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyComplex).map_err(json_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(json_err)
    }

    fn vertices(&self) -> Vec<String> {
        self.0.vertices().to_vec()
    }

    /// Facets as sorted lists of vertex labels.
    fn facets(&self) -> Vec<Vec<String>> {
        self.0.facet_labels()
    }

    fn dimension(&self) -> Option<usize> {
        self.0.dimension()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.0.f_vector()
    }

    fn contains_face(&self, labels: Vec<String>) -> bool {
        self.0.contains_face_labels(&labels)
    }

    /// Reduced Betti numbers; `field` is `"rational"` or `"prime:<p>"`.
    #[pyo3(signature = (field = "rational"))]
    fn reduced_betti(&self, field: &str) -> PyResult<Vec<usize>> {
        let field: FieldChoice = field.parse().map_err(err)?;
        reduced_betti(&self.0, field).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!(
            "SimplicialComplex({} vertices, {} facets)",
            self.0.num_vertices(),
            self.0.num_facets()
        )
    }
}

/// A partition lattice or k-equal lattice on `{1..n}`, addressed by labels
/// such as `"145|23"`.
#[pyclass(name = "PartitionLattice", frozen)]
struct PyLattice {
    n: usize,
    inner: FiniteLattice<SetPartition>,
}

impl PyLattice {
    fn index(&self, label: &str) -> PyResult<usize> {
        let p = SetPartition::parse(self.n, label).map_err(err)?;
        self.inner
            .index_of(&p)
            .ok_or_else(|| PyValueError::new_err(format!("{label} is not an element")))
    }

    fn labels(&self, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
        xs.into_iter().map(|x| self.inner.label(x)).collect()
    }
}

#[pymethods]
impl PyLattice {
    /// The full partition lattice, or the k-equal lattice when `k` is given.
    #[new]
    #[pyo3(signature = (n, k = None))]
    fn new(n: usize, k: Option<usize>) -> PyResult<Self> {
        let inner = match k {
            Some(k) => build_k_equal_lattice(n, k),
            None => build_partition_lattice(n),
        }
        .map_err(err)?;
        Ok(PyLattice { n, inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn elements(&self) -> Vec<String> {
        self.labels(0..self.inner.len())
    }

    fn atoms(&self) -> Vec<String> {
        self.labels(self.inner.atoms().iter().copied())
    }

    fn rank(&self, x: &str) -> PyResult<usize> {
        Ok(self.inner.rank(self.index(x)?))
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.leq(self.index(a)?, self.index(b)?))
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.label(self.inner.join(self.index(a)?, self.index(b)?)))
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.label(self.inner.meet(self.index(a)?, self.index(b)?)))
    }

    fn is_graded(&self) -> bool {
        self.inner.is_graded()
    }

    fn irreducibles(&self) -> PyResult<Vec<String>> {
        Ok(self.labels(irreducibles(&self.inner).map_err(err)?))
    }

    /// Reduced nested set complex of the irreducible elements.
    fn nested_set_complex(&self) -> PyResult<PyComplex> {
        let g = BuildingSet::irreducibles(&self.inner).map_err(err)?;
        nested_set_complex(&self.inner, &g, true)
            .map(PyComplex)
            .map_err(err)
    }

    fn order_complex(&self) -> PyComplex {
        PyComplex(order_complex(&self.inner))
    }

    /// JSON trace of stellar subdivisions from the nested set complex to the
    /// order complex.
    fn subdivision_trace(&self) -> PyResult<String> {
        let (_, trace) = subdivide_to_order_complex(&self.inner).map_err(err)?;
        serde_json::to_string(&trace).map_err(json_err)
    }
}

/// A partition lattice with the lexicographic order on its atoms.
#[pyclass(name = "GeometricPartitionLattice", frozen)]
struct PyGeometric {
    n: usize,
    inner: GeometricLattice<SetPartition>,
}

impl PyGeometric {
    fn index(&self, label: &str) -> PyResult<usize> {
        let p = SetPartition::parse(self.n, label).map_err(err)?;
        self.inner
            .lattice()
            .index_of(&p)
            .ok_or_else(|| PyValueError::new_err(format!("{label} is not an element")))
    }

    fn indices(&self, labels: &[String]) -> PyResult<Vec<usize>> {
        labels.iter().map(|l| self.index(l)).collect()
    }

    fn labels(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.inner.lattice().label(x)).collect()
    }
}

#[pymethods]
impl PyGeometric {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        let l = build_partition_lattice(n).map_err(err)?;
        let inner = GeometricLattice::new(l, None).map_err(err)?;
        Ok(PyGeometric { n, inner })
    }

    fn nbc_bases(&self) -> Vec<Vec<String>> {
        self.inner.nbc_bases().iter().map(|b| self.labels(b)).collect()
    }

    fn decreasing_chains(&self) -> Vec<Vec<String>> {
        self.inner
            .decreasing_chains()
            .iter()
            .map(|c| self.labels(&c.chain))
            .collect()
    }

    /// The chain of joins of a basis, bottom to top.
    fn psi(&self, basis: Vec<String>) -> PyResult<Vec<String>> {
        let chain = self.inner.psi(&self.indices(&basis)?).map_err(err)?;
        Ok(self.labels(&chain.chain))
    }

    /// The proper maximal nested set of a decreasing maximal chain.
    fn theta(&self, chain: Vec<String>) -> PyResult<Vec<String>> {
        let c = self.inner.labeled_chain(&self.indices(&chain)?).map_err(err)?;
        let nested = self.inner.theta(&c).map_err(err)?;
        Ok(self.labels(&nested.members))
    }

    fn phi(&self, members: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.labels(&self.inner.phi(&self.indices(&members)?)))
    }

    /// JSON report of the nbc / chain / nested set correspondence.
    fn verify_bijections(&self) -> PyResult<String> {
        let rep = self.inner.verify_bijection_triangle().map_err(err)?;
        serde_json::to_string(&rep).map_err(json_err)
    }
}

/// A rooted tree with leaves `1..n`, written like `"((1,2),(3,4))"`.
#[pyclass(name = "RootedTree", frozen)]
struct PyTree(core::RootedTreeType);

#[pymethods]
impl PyTree {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyTree).map_err(err)
    }

    #[staticmethod]
    fn from_nested(n: usize, sets: Vec<Vec<u32>>) -> PyResult<Self> {
        core::RootedTreeType::from_nested(n, &sets)
            .map(PyTree)
            .map_err(err)
    }

    fn to_nested(&self) -> Vec<Vec<u32>> {
        self.0.to_nested()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RootedTree({:?})", self.0.to_string())
    }
}

#[pyfunction]
fn tree_complex(n: usize) -> PyResult<PyComplex> {
    enumerate_tn(n).map(PyComplex).map_err(err)
}

#[pyfunction]
fn k_trees(n: usize, k: usize) -> PyResult<PyComplex> {
    enumerate_hanlon_k_trees(n, k).map(PyComplex).map_err(err)
}

#[pyfunction]
fn k_equal_trees(n: usize, k: usize) -> PyResult<PyComplex> {
    enumerate_k_equal_trees(n, k).map(PyComplex).map_err(err)
}

/// Runs a verification suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, n = None, k = None, field = "rational", max_n = 6))]
fn verify(
    suite: &str,
    n: Option<usize>,
    k: Option<usize>,
    field: &str,
    max_n: usize,
) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let field: FieldChoice = field.parse().map_err(err)?;
    let report = run_suite(suite, &SuiteParams { n, k, field, max_n }).map_err(err)?;
    let text = serde_json::to_string(&report).map_err(json_err)?;
    Ok((report.passed, text))
}

#[pymodule]
#[pyo3(name = "treenest")]
fn treenest_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyLattice>()?;
    m.add_class::<PyGeometric>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(tree_complex, m)?)?;
    m.add_function(wrap_pyfunction!(k_trees, m)?)?;
    m.add_function(wrap_pyfunction!(k_equal_trees, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
