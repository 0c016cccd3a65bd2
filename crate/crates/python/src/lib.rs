//! Python bindings for `invsr`.
//!
//! Library errors surface as `ValueError` for malformed input and
//! `RuntimeError` for unmet preconditions.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use invsr::checks::{run_algebra_check, run_semimodule_check};
use invsr::enumerate::{self, AlgebraClass, SearchOptions, SearchSpec};
use invsr::{corpus, decide, format, semimodule, AlgebraTable, Error, Report, SemimoduleTable};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Check(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn report_tuple(r: Report) -> (bool, Option<Vec<usize>>, Option<String>) {
    (r.passed(), r.witness, r.detail)
}

/// A finite algebra given by join and multiplication tables.
#[pyclass(name = "Algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: AlgebraTable,
}

#[pymethods]
impl PyAlgebra {
    #[new]
    #[pyo3(signature = (name, join, mult, one, zero=None, lneg=None, rneg=None))]
    fn new(
        name: String,
        join: Vec<Vec<usize>>,
        mult: Vec<Vec<usize>>,
        one: usize,
        zero: Option<usize>,
        lneg: Option<Vec<usize>>,
        rneg: Option<Vec<usize>>,
    ) -> PyResult<Self> {
        let mut a = AlgebraTable::new(name, join, mult, one).map_err(to_py)?;
        if let Some(z) = zero {
            a = a.with_zero(z).map_err(to_py)?;
        }
        if let Some(l) = lneg {
            a = a.with_lneg(l).map_err(to_py)?;
        }
        if let Some(r) = rneg {
            a = a.with_rneg(r).map_err(to_py)?;
        }
        Ok(PyAlgebra { inner: a })
    }

    /// Parses the first algebra of a text block.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = format::parse_algebra_text(text).map_err(to_py)?;
        Ok(PyAlgebra { inner })
    }

    /// A built-in algebra such as `B2`, `A3`, `C4` or `L3`.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        corpus::algebra_by_name(name)
            .map(|inner| PyAlgebra { inner })
            .ok_or_else(|| PyValueError::new_err(format!("no corpus algebra `{name}`")))
    }

    fn emit(&self) -> String {
        format::emit(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn one(&self) -> usize {
        self.inner.one()
    }

    #[getter]
    fn zero(&self) -> Option<usize> {
        self.inner.zero()
    }

    fn join(&self, x: usize, y: usize) -> PyResult<usize> {
        self.bounds(&[x, y])?;
        Ok(self.inner.join(x, y))
    }

    fn mult(&self, x: usize, y: usize) -> PyResult<usize> {
        self.bounds(&[x, y])?;
        Ok(self.inner.mult(x, y))
    }

    fn leq(&self, x: usize, y: usize) -> PyResult<bool> {
        self.bounds(&[x, y])?;
        Ok(self.inner.leq(x, y))
    }

    /// Hex canonical key; equal keys mean isomorphic algebras.
    fn canonical_key(&self) -> String {
        invsr::canonical_key(&self.inner).to_hex()
    }

    /// Runs a named check, returning `(passed, witness, detail)`.
    fn check(&self, name: &str) -> PyResult<(bool, Option<Vec<usize>>, Option<String>)> {
        run_algebra_check(name, &self.inner)
            .map(report_tuple)
            .map_err(to_py)
    }

    /// Whether the algebra belongs to a class such as `1-bounded-involutive`.
    fn is_member(&self, class: &str) -> PyResult<bool> {
        let c: AlgebraClass = class.parse().map_err(to_py)?;
        Ok(c.predicate(&self.inner).map_err(to_py)?.passed())
    }

    fn regular(&self) -> PyResult<PySemimodule> {
        semimodule::regular(&self.inner)
            .map(|inner| PySemimodule { inner })
            .map_err(to_py)
    }

    fn cyclic(&self, u: usize) -> PyResult<PySemimodule> {
        semimodule::cyclic(&self.inner, u)
            .map(|inner| PySemimodule { inner })
            .map_err(to_py)
    }

    fn free(&self, k: usize) -> PyResult<PySemimodule> {
        semimodule::free(&self.inner, k)
            .map(|inner| PySemimodule { inner })
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra({:?}, size={})",
            self.inner.name(),
            self.inner.size()
        )
    }
}

impl PyAlgebra {
    fn bounds(&self, xs: &[usize]) -> PyResult<()> {
        match xs.iter().find(|&&x| x >= self.inner.size()) {
            Some(x) => Err(PyValueError::new_err(format!("element {x} out of range"))),
            None => Ok(()),
        }
    }
}

#[pyclass(name = "Semimodule", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySemimodule {
    inner: SemimoduleTable,
}

#[pymethods]
impl PySemimodule {
    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn act(&self, a: usize, x: usize) -> PyResult<usize> {
        if a >= self.inner.over().size() || x >= self.inner.size() {
            return Err(PyValueError::new_err("element out of range"));
        }
        Ok(self.inner.act(a, x))
    }

    fn is_injective(&self) -> PyResult<bool> {
        Ok(decide::is_injective(&self.inner).map_err(to_py)?.holds)
    }

    fn is_projective(&self) -> PyResult<bool> {
        Ok(decide::is_projective(&self.inner).map_err(to_py)?.holds)
    }

    fn check(&self, name: &str) -> PyResult<(bool, Option<Vec<usize>>, Option<String>)> {
        run_semimodule_check(name, &self.inner)
            .map(report_tuple)
            .map_err(to_py)
    }

    fn emit(&self) -> String {
        format::emit_semimodule(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Semimodule({:?}, size={})",
            self.inner.name(),
            self.inner.size()
        )
    }
}

/// All algebras of a class up to isomorphism with at most `max_size` elements.
#[pyfunction]
#[pyo3(signature = (class_name, max_size, limit=None))]
fn enumerate_algebras(
    class_name: &str,
    max_size: usize,
    limit: Option<usize>,
) -> PyResult<Vec<PyAlgebra>> {
    let class: AlgebraClass = class_name.parse().map_err(to_py)?;
    let mut spec = SearchSpec::new(class, max_size);
    spec.limit = limit;
    let found = enumerate::enumerate_algebras(&spec).map_err(to_py)?;
    Ok(found.into_iter().map(|inner| PyAlgebra { inner }).collect())
}

/// `(size, witness)` of the smallest non-distributive 1-bounded involutive
/// semiring, or `(None, None)`.
#[pyfunction]
fn smallest_nondistributive(max_size: usize) -> PyResult<(Option<usize>, Option<PyAlgebra>)> {
    let out =
        enumerate::smallest_nondistributive(max_size, &SearchOptions::default()).map_err(to_py)?;
    Ok((out.size, out.witness.map(|inner| PyAlgebra { inner })))
}

/// Number of corpus expectations that do not reproduce.
#[pyfunction]
fn corpus_mismatches() -> usize {
    corpus::builtin_corpus()
        .iter()
        .flat_map(|e| e.evaluate())
        .filter(|o| !o.matches())
        .count()
}

#[pymodule]
fn invsr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PySemimodule>()?;
    m.add_function(wrap_pyfunction!(enumerate_algebras, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_nondistributive, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_mismatches, m)?)?;
    Ok(())
}
