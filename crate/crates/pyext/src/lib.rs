//! Python bindings. Matrices cross the boundary as the same bracketed text
//! the CLI and session files use, so there is exactly one grammar to learn
//! and exact values never pass through floats.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fenring::oracle;
use fenring::sandwich::SandwichMap;
use fenring::session::parse_matrix;
use fenring::{DualSystem as CoreSystem, RingDescriptor, RingElement};

fn err(e: fenring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_descriptor(text: &str) -> PyResult<RingDescriptor> {
    let mut words = text.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("rationals"), None, _) => Ok(RingDescriptor::Rationals),
        (Some("rational_quaternions"), None, _) => Ok(RingDescriptor::RationalQuaternions),
        (Some("prime_field"), Some(p), None) => {
            let p: u64 = p
                .parse()
                .map_err(|_| PyValueError::new_err(format!("bad modulus '{}'", p)))?;
            RingDescriptor::prime_field(p).map_err(err)
        }
        _ => Err(PyValueError::new_err(format!(
            "unknown ring descriptor '{}'",
            text
        ))),
    }
}

/// A finitary endomorphism ring presented by its evaluation matrix.
#[pyclass(name = "DualSystem", skip_from_py_object)]
#[derive(Clone)]
struct PySystem {
    inner: CoreSystem,
}

#[pymethods]
impl PySystem {
    #[new]
    fn new(descriptor: &str, f: &str) -> PyResult<Self> {
        let d = parse_descriptor(descriptor)?;
        let m = parse_matrix(d, f).map_err(err)?;
        Ok(PySystem {
            inner: CoreSystem::new(m).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.space_dim()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.functional_dim()
    }

    #[getter]
    fn descriptor(&self) -> String {
        self.inner.descriptor().to_string()
    }

    fn evaluation(&self) -> String {
        self.inner.evaluation().to_string()
    }

    fn is_total(&self) -> bool {
        self.inner.is_total()
    }

    fn element(&self, coefficients: &str) -> PyResult<PyElement> {
        let m = parse_matrix(self.inner.descriptor(), coefficients).map_err(err)?;
        Ok(PyElement {
            inner: self.inner.element(m).map_err(err)?,
        })
    }

    #[pyo3(signature = (trials = 1000, seed = 0))]
    fn check_axioms(&self, trials: u64, seed: u64) -> PyResult<bool> {
        Ok(self.inner.check_axioms(trials, seed).map_err(err)?.pass())
    }

    fn __eq__(&self, other: &PySystem) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "DualSystem({}, n={}, k={}, F={})",
            self.inner.descriptor(),
            self.inner.space_dim(),
            self.inner.functional_dim(),
            self.inner.evaluation()
        )
    }
}

#[pyclass(name = "Element", skip_from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: RingElement,
}

#[pymethods]
impl PyElement {
    fn coefficients(&self) -> String {
        self.inner.coefficients().to_string()
    }

    fn trace(&self) -> String {
        self.inner.trace().to_string()
    }

    fn as_endomorphism(&self) -> String {
        self.inner.as_endomorphism().to_string()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.multiply(&other.inner).map_err(err)?,
        })
    }

    fn __neg__(&self) -> PyElement {
        PyElement {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner.coefficients())
    }
}

/// An additive map between two systems in sandwich form.
#[pyclass(name = "Map", skip_from_py_object)]
#[derive(Clone)]
struct PyMap {
    inner: SandwichMap,
}

#[pymethods]
impl PyMap {
    #[new]
    fn new(source: &PySystem, target: &PySystem, terms: Vec<(String, String)>) -> PyResult<Self> {
        let d = source.inner.descriptor();
        let terms = terms
            .into_iter()
            .map(|(a, b)| Ok((parse_matrix(d, &a).map_err(err)?, parse_matrix(d, &b).map_err(err)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyMap {
            inner: SandwichMap::new(source.inner.clone(), target.inner.clone(), terms)
                .map_err(err)?,
        })
    }

    /// One-term conjugation by an invertible pair; the target system is
    /// derived from the pair.
    #[staticmethod]
    fn conjugation(system: &PySystem, alpha: &str, beta: &str) -> PyResult<PyMap> {
        let d = system.inner.descriptor();
        let alpha = parse_matrix(d, alpha).map_err(err)?;
        let beta = parse_matrix(d, beta).map_err(err)?;
        Ok(PyMap {
            inner: SandwichMap::conjugation(&system.inner, &alpha, &beta).map_err(err)?,
        })
    }

    #[staticmethod]
    fn direct_sum(system: &PySystem, alpha1: &str, alpha2: &str) -> PyResult<PyMap> {
        let d = system.inner.descriptor();
        let alpha1 = parse_matrix(d, alpha1).map_err(err)?;
        let alpha2 = parse_matrix(d, alpha2).map_err(err)?;
        Ok(PyMap {
            inner: SandwichMap::direct_sum(&system.inner, &alpha1, &alpha2).map_err(err)?,
        })
    }

    fn source(&self) -> PySystem {
        PySystem {
            inner: self.inner.source().clone(),
        }
    }

    fn target(&self) -> PySystem {
        PySystem {
            inner: self.inner.target().clone(),
        }
    }

    fn terms(&self) -> Vec<(String, String)> {
        self.inner
            .terms()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    fn apply(&self, x: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.apply(&x.inner).map_err(err)?,
        })
    }

    fn is_homomorphism(&self) -> bool {
        self.inner.is_homomorphism().pass()
    }

    fn is_bijective(&self) -> bool {
        self.inner.is_bijective()
    }

    fn minimized(&self) -> PyMap {
        PyMap {
            inner: self.inner.minimized(),
        }
    }

    fn orthogonality(&self) -> PyResult<bool> {
        Ok(self.inner.orthogonality().map_err(err)?.pass())
    }

    fn trace_scaling_factor(&self) -> PyResult<usize> {
        self.inner.trace_scaling_factor().map_err(err)
    }

    /// Returns the pair `(alpha, beta)` as matrix strings.
    fn recover_conjugator(&self) -> PyResult<(String, String)> {
        let (a, b) = self.inner.recover_conjugator().map_err(err)?;
        Ok((a.to_string(), b.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Map({} terms)", self.inner.term_count())
    }
}

/// Brute-force isomorphism scan over a prime field; returns a dict mirroring
/// the CLI's JSON report.
#[pyfunction]
#[pyo3(signature = (p, f, g, cap = 1_000_000))]
fn scan<'py>(
    py: Python<'py>,
    p: u64,
    f: &str,
    g: &str,
    cap: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let d = RingDescriptor::prime_field(p).map_err(err)?;
    let source = CoreSystem::new(parse_matrix(d, f).map_err(err)?).map_err(err)?;
    let target = CoreSystem::new(parse_matrix(d, g).map_err(err)?).map_err(err)?;
    let report = oracle::exhaustive_isomorphism_scan(&source, &target, cap).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("total_maps", report.total_maps)?;
    out.set_item("hom_count", report.hom_count)?;
    out.set_item("iso_count", report.iso_count)?;
    out.set_item("conjugation_action_count", report.conjugation_action_count)?;
    out.set_item("pass", report.pass)?;
    Ok(out)
}

#[pymodule]
fn fenring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    Ok(())
}
