//! Python bindings: `import dp4`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use dp4_core::algebra::Field;
use dp4_core::classifier::classify_line as classify;
use dp4_core::ffcount::{self, VarietyId};
use dp4_core::grassmann::FlagLine;
use dp4_core::poincare::{self as pc, D_DEGREE, H2_DEGREE};
use dp4_core::report::{self, RunConfig};

fn err(e: dp4_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(name: &str) -> PyResult<Field> {
    match name {
        "QQ" | "Q" => Ok(Field::Rational),
        _ => {
            let p = name
                .parse()
                .map_err(|_| PyValueError::new_err(format!("unknown field `{name}`")))?;
            Field::prime(p).map_err(err)
        }
    }
}

/// Serializes through JSON into plain Python objects.
fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// A line of `Y`: a vertex point inside a plane, written as `"e0"` and `"e0,e1,e4"`.
#[pyclass(frozen, module = "dp4")]
struct Line {
    inner: FlagLine,
}

#[pymethods]
impl Line {
    #[new]
    #[pyo3(signature = (vertex, plane, field = "QQ"))]
    fn new(vertex: &str, plane: &str, field: &str) -> PyResult<Line> {
        let inner = FlagLine::parse(self::field(field)?, vertex, plane).map_err(err)?;
        Ok(Line { inner })
    }

    fn in_y(&self) -> bool {
        self.inner.line_in_y()
    }

    /// Type, normal bundle, support points on the dual conic and family dimension.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Line(vertex={:?})", self.inner.vertex().iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

/// Poincaré polynomial in `t`, stored by its even coefficients.
#[pyclass(frozen, module = "dp4", name = "PoincarePoly")]
struct PyPoincare {
    inner: pc::PoincarePoly,
}

#[pymethods]
impl PyPoincare {
    #[new]
    fn new(text: &str) -> PyResult<PyPoincare> {
        Ok(PyPoincare {
            inner: text.parse().map_err(err)?,
        })
    }

    #[staticmethod]
    fn projective(n: usize) -> PyPoincare {
        PyPoincare {
            inner: pc::pp_projective(n),
        }
    }

    #[staticmethod]
    fn blowup(x: &PyPoincare, z: &PyPoincare, codim: usize) -> PyResult<PyPoincare> {
        Ok(PyPoincare {
            inner: pc::pp_blowup(&x.inner, &z.inner, codim).map_err(err)?,
        })
    }

    #[getter]
    fn coeffs(&self) -> Vec<i64> {
        self.inner.coeffs().to_vec()
    }

    fn is_palindromic(&self) -> bool {
        self.inner.is_palindromic()
    }

    /// Value at `t^2 = q`.
    fn eval_q(&self, q: i64) -> i128 {
        self.inner.eval_q(q)
    }

    fn __add__(&self, other: &PyPoincare) -> PyPoincare {
        PyPoincare {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &PyPoincare) -> PyPoincare {
        PyPoincare {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &PyPoincare) -> PyPoincare {
        PyPoincare {
            inner: &self.inner * &other.inner,
        }
    }

    fn __eq__(&self, other: &PyPoincare) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PoincarePoly('{}')", self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (vertex, plane, field = "QQ"))]
fn classify_line<'py>(py: Python<'py>, vertex: &str, plane: &str, field: &str) -> PyResult<Bound<'py, PyAny>> {
    Line::new(vertex, plane, field)?.classify(py)
}

/// Number of `F_q`-points of a named variety such as `"dbar"` or `"h1y"`.
#[pyfunction]
fn count(py: Python<'_>, variety: &str, q: u64) -> PyResult<u64> {
    let v: VarietyId = variety.parse().map_err(err)?;
    py.detach(|| ffcount::count(v, q)).map_err(err)
}

/// Integer coefficients of the degree-`degree` polynomial through `(q, count)` samples.
#[pyfunction]
fn interpolate(samples: Vec<(u64, i128)>, degree: usize) -> PyResult<Vec<i64>> {
    Ok(ffcount::interpolate(&samples, degree).map_err(err)?.coeffs().to_vec())
}

#[pyfunction]
fn gaussian_binomial(n: u64, k: u64, q: u64) -> u64 {
    ffcount::gaussian_binomial(n, k, q)
}

/// Runs verification suites and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suites = "all", seed = 0, primes = vec![3, 5, 7, 11], samples = 100, jobs = 1))]
fn verify<'py>(
    py: Python<'py>,
    suites: &str,
    seed: u64,
    primes: Vec<u64>,
    samples: usize,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let config = RunConfig {
        primes,
        samples,
        seed,
        suites: report::parse_suites(suites).map_err(err)?,
        jobs,
    };
    let r = py.detach(|| report::run(&config)).map_err(err)?;
    to_py(py, &r)
}

/// Assembles `P(I_2(Y))` from finite-field counts and compares it with the expected polynomial.
#[pyfunction]
fn stable_maps_chain<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let chain = py.detach(|| {
        pc::run_stable_maps_chain(&pc::odd_primes(H2_DEGREE + 2), &pc::odd_primes(D_DEGREE + 2))
    });
    to_py(py, &chain)
}

#[pymodule]
mod dp4 {
    #[pymodule_export]
    use super::{
        classify_line, count, gaussian_binomial, interpolate, stable_maps_chain, verify, Line,
        PyPoincare,
    };
}
