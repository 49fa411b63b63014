//! Python bindings: polynomial forms on a reference simplex plus the report
//! commands of the `feec` CLI. Structured results cross the boundary as JSON
//! strings so exact rationals stay exact.

use feec_kernel::extension::{bubble_decompose, bubble_extend, dot_extend};
use feec_kernel::polyform::{Family, PolyForm};
use feec_kernel::simplex::Face;
use feec_kernel::star::ring_star;
use feec_kernel::verify::{self, commands, rational_string, Config};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: feec_kernel::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn face(labels: Vec<usize>) -> PyResult<Face> {
    Face::new(&labels).map_err(value_err)
}

fn family(name: &str) -> PyResult<Family> {
    name.parse().map_err(value_err)
}

/// A polynomial differential form on a face of the reference simplex.
#[pyclass(name = "PolyForm", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPolyForm(PolyForm);

#[pymethods]
impl PyPolyForm {
    /// Parse `"c * l0^1 l2^1 ^ dl1 + ..."` as a k-form on the face with the given labels.
    #[staticmethod]
    fn parse(labels: Vec<usize>, k: usize, text: &str) -> PyResult<Self> {
        Ok(Self(
            PolyForm::parse(face(labels)?, k, text).map_err(value_err)?,
        ))
    }

    #[staticmethod]
    fn lam(labels: Vec<usize>, l: usize) -> PyResult<Self> {
        Ok(Self(PolyForm::lambda(face(labels)?, l).map_err(value_err)?))
    }

    #[staticmethod]
    fn whitney(labels: Vec<usize>, rho: Vec<usize>) -> PyResult<Self> {
        Ok(Self(
            PolyForm::whitney(face(labels)?, &rho).map_err(value_err)?,
        ))
    }

    #[getter]
    fn labels(&self) -> Vec<usize> {
        self.0.face().labels()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn wedge(&self, other: &Self) -> Self {
        Self(self.0.wedge(&other.0))
    }

    fn d(&self) -> Self {
        Self(self.0.d())
    }

    fn trace(&self, labels: Vec<usize>) -> PyResult<Self> {
        Ok(Self(self.0.trace(face(labels)?).map_err(value_err)?))
    }

    fn ring_star(&self) -> Self {
        Self(ring_star(&self.0))
    }

    /// Exact integral of a top-degree form, as a `"p/q"` string.
    fn integrate(&self) -> PyResult<String> {
        Ok(rational_string(&self.0.integrate().map_err(value_err)?))
    }

    fn bubble_extend(&self, labels: Vec<usize>) -> PyResult<Self> {
        Ok(Self(
            bubble_extend(&self.0, face(labels)?).map_err(value_err)?,
        ))
    }

    fn dot_extend(&self, labels: Vec<usize>) -> PyResult<Self> {
        Ok(Self(dot_extend(&self.0, face(labels)?).map_err(value_err)?))
    }

    /// Nonzero bubble components of a trace-free form, keyed by face.
    fn bubble_components(&self) -> PyResult<Vec<(Vec<usize>, Self)>> {
        let bt = bubble_decompose(&self.0).map_err(value_err)?;
        Ok(bt
            .components
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| (f.labels(), Self(c)))
            .collect())
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "PolyForm({:?}, {}, {:?})",
            self.0.face().labels(),
            self.0.k(),
            self.0.to_string()
        )
    }
}

/// Run the verification suite; `config` is the same JSON the CLI accepts.
/// Returns the report lines.
#[pyfunction]
#[pyo3(signature = (config = None))]
fn run_verify(py: Python<'_>, config: Option<&str>) -> PyResult<Vec<String>> {
    let cfg = match config {
        Some(text) => Config::from_json(text).map_err(value_err)?,
        None => Config::default(),
    };
    cfg.validate().map_err(value_err)?;
    let reports = py.detach(|| verify::run_suite(&cfg)).map_err(value_err)?;
    reports.iter().map(json).collect()
}

#[pyfunction]
fn statements() -> Vec<(String, String)> {
    verify::statements()
        .iter()
        .map(|s| (s.name.to_string(), s.about.to_string()))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (n, k, r, family = "full"))]
fn basis(n: usize, k: usize, r: u32, family: &str) -> PyResult<String> {
    json(&commands::basis_table(n, k, r, self::family(family)?).map_err(value_err)?)
}

#[pyfunction]
#[pyo3(signature = (n, k, r, family = "full"))]
fn gram(n: usize, k: usize, r: u32, family: &str) -> PyResult<String> {
    json(&commands::gram_table(n, k, r, self::family(family)?).map_err(value_err)?)
}

#[pyfunction]
fn counterexample() -> PyResult<String> {
    json(&commands::counterexample().map_err(value_err)?)
}

#[pymodule]
fn feec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolyForm>()?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(statements, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    Ok(())
}
