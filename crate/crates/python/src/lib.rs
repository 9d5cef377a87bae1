//! Python bindings. Forms and matrices live over a prime field; reports come
//! back as plain dictionaries.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use bigrade_core::cohomology::{self, CohomologyResult};
use bigrade_core::survey::{self, CohomologyConfig, CurveKind, VerifyZConfig};
use bigrade_core::{basis, grid, reduction, BiForm, Error, Field, Fp, MapMatrix, DEFAULT_PRIME};

fn err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Precondition(_) | Error::FieldMismatch(..) => PyValueError::new_err(e.to_string()),
        Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn field(prime: u64) -> PyResult<Fp> {
    Fp::new(prime).map_err(err)
}

/// A bihomogeneous form on P^m x P^n with coefficients in F_p.
#[pyclass(name = "BiForm", module = "bigrade", skip_from_py_object)]
#[derive(Clone)]
struct PyBiForm {
    inner: BiForm<Fp>,
}

#[pymethods]
impl PyBiForm {
    /// Dense form with seeded uniform coefficients.
    #[staticmethod]
    #[pyo3(signature = (a, b, seed, prime = DEFAULT_PRIME, m = 1, n = 1))]
    fn random(a: usize, b: usize, seed: u64, prime: u64, m: usize, n: usize) -> PyResult<Self> {
        let f = field(prime)?;
        Ok(PyBiForm {
            inner: bigrade_core::random_biform(&f, m, n, a, b, seed),
        })
    }

    /// Form from `(x_exponents, y_exponents, coefficient)` triples.
    #[staticmethod]
    #[pyo3(signature = (a, b, terms, prime = DEFAULT_PRIME, m = 1, n = 1))]
    fn from_terms(
        a: usize,
        b: usize,
        terms: Vec<(Vec<u32>, Vec<u32>, i64)>,
        prime: u64,
        m: usize,
        n: usize,
    ) -> PyResult<Self> {
        let f = field(prime)?;
        let terms = terms.into_iter().map(|(x, y, c)| (x, y, f.from_i64(c)));
        Ok(PyBiForm {
            inner: BiForm::from_terms(f, m, n, a, b, terms).map_err(err)?,
        })
    }

    /// The curve `l(u) v^b - h(u) m(v)` through the grid `{λ_i} x {μ_j}`;
    /// `h` lists coefficients in ascending degree.
    #[staticmethod]
    #[pyo3(signature = (lambdas, mus, h, prime = DEFAULT_PRIME))]
    fn grid_curve(lambdas: Vec<i64>, mus: Vec<i64>, h: Vec<i64>, prime: u64) -> PyResult<Self> {
        let f = field(prime)?;
        let conv = |v: Vec<i64>| v.into_iter().map(|x| f.from_i64(x)).collect::<Vec<_>>();
        let (l, mu, hp) = (conv(lambdas), conv(mus), conv(h));
        let form = bigrade_core::grid_curve_form(&f, l.len(), mu.len(), &l, &mu, &hp).map_err(err)?;
        Ok(PyBiForm { inner: form })
    }

    #[getter]
    fn bidegree(&self) -> (usize, usize) {
        self.inner.bidegree()
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.inner.field().modulus()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn terms(&self) -> Vec<(Vec<u32>, Vec<u32>, u64)> {
        self.inner
            .terms()
            .map(|(mono, c)| (mono.x.entries().to_vec(), mono.y.entries().to_vec(), *c))
            .collect()
    }

    fn multiply(&self, other: &PyBiForm) -> PyResult<Self> {
        Ok(PyBiForm {
            inner: self.inner.multiply(&other.inner).map_err(err)?,
        })
    }

    fn swap_factors(&self) -> Self {
        PyBiForm {
            inner: self.inner.swap_factors(),
        }
    }

    fn evaluate(&self, x: Vec<i64>, y: Vec<i64>) -> PyResult<u64> {
        let f = *self.inner.field();
        let x: Vec<u64> = x.into_iter().map(|v| f.from_i64(v)).collect();
        let y: Vec<u64> = y.into_iter().map(|v| f.from_i64(v)).collect();
        self.inner.evaluate(&x, &y).map_err(err)
    }

    /// Matrix of `S^r V ⊗ S^t W* → S^{r+a} V ⊗ S^{t-b} W*`.
    fn mulcon(&self, r: usize, t: usize) -> PyResult<PyMapMatrix> {
        Ok(PyMapMatrix {
            inner: bigrade_core::build_mulcon_matrix(&self.inner, r, t).map_err(err)?,
        })
    }

    /// Same map with differential-operator coefficients.
    fn diff(&self, r: usize, t: usize) -> PyResult<PyMapMatrix> {
        Ok(PyMapMatrix {
            inner: bigrade_core::build_diff_matrix(&self.inner, r, t).map_err(err)?,
        })
    }

    /// `h^0`, `h^1` of `O_C(h, k)` as a dict.
    fn h0_h1<'py>(&self, py: Python<'py>, h: i64, k: i64) -> PyResult<Bound<'py, PyAny>> {
        let res: CohomologyResult = cohomology::h0_h1_routed(&self.inner, h, k).map_err(err)?;
        to_py(py, &res)
    }

    fn __repr__(&self) -> String {
        let (a, b) = self.inner.bidegree();
        format!(
            "BiForm(bidegree=({a}, {b}), terms={}, prime={})",
            self.inner.num_terms(),
            self.inner.field().modulus()
        )
    }
}

/// Sparse matrix over F_p.
#[pyclass(name = "MapMatrix", module = "bigrade")]
struct PyMapMatrix {
    inner: MapMatrix<Fp>,
}

#[pymethods]
impl PyMapMatrix {
    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    #[getter]
    fn nnz(&self) -> usize {
        self.inner.nnz()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn kernel_dim(&self) -> usize {
        self.inner.kernel_dim()
    }

    fn cokernel_dim(&self) -> usize {
        self.inner.cokernel_dim()
    }

    fn is_maximal_rank(&self) -> bool {
        self.inner.is_maximal_rank()
    }

    fn to_dense(&self) -> Vec<Vec<u64>> {
        self.inner.to_dense()
    }

    fn to_matrix_market(&self) -> PyResult<String> {
        self.inner.to_matrix_market().map_err(err)
    }

    fn __repr__(&self) -> String {
        let (r, c) = self.inner.shape();
        format!("MapMatrix({r}x{c}, nnz={})", self.inner.nnz())
    }
}

#[pyfunction]
fn dimension(m: i64, n: i64, r: i64, t: i64) -> PyResult<usize> {
    basis::dimension(m, n, r, t).map_err(err)
}

/// Maximal-rank certificate for one cell, as a dict.
#[pyfunction]
#[pyo3(signature = (a, b, r, t, prime = DEFAULT_PRIME, trials = 3, seed = 0))]
#[allow(clippy::too_many_arguments)]
fn certify(
    py: Python<'_>,
    a: usize,
    b: usize,
    r: usize,
    t: usize,
    prime: u64,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'_, PyAny>> {
    let config = survey::CertifyConfig { prime, trials, seed };
    let report = survey::cmd_certify(a, b, r, t, &config, false).map_err(err)?;
    to_py(py, &report.cells[0])
}

/// Cohomology of `O_C(h, k)` for a `"random"`, `"grid"` or
/// `"line-degenerate"` curve.
#[pyfunction]
#[pyo3(signature = (a, b, h, k, curve = "random", prime = DEFAULT_PRIME, seed = 0))]
#[allow(clippy::too_many_arguments)]
fn curve_cohomology<'py>(
    py: Python<'py>,
    a: usize,
    b: usize,
    h: i64,
    k: i64,
    curve: &str,
    prime: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let curve = match curve {
        "random" => CurveKind::Random,
        "grid" => CurveKind::Grid,
        "line-degenerate" => CurveKind::LineDegenerate,
        other => return Err(PyValueError::new_err(format!("unknown curve kind {other:?}"))),
    };
    let config = CohomologyConfig {
        a,
        b,
        h,
        k,
        curve,
        prime,
        seed,
    };
    let report = survey::cmd_cohomology(&config, false).map_err(err)?;
    to_py(py, &report.cells[0])
}

#[pyfunction]
fn genus(a: i64, b: i64) -> i64 {
    cohomology::genus(a, b)
}

#[pyfunction]
fn degree(a: i64, b: i64, h: i64, k: i64) -> i64 {
    cohomology::degree(a, b, h, k)
}

#[pyfunction]
fn serre_dual(a: i64, b: i64, h: i64, k: i64) -> (i64, i64) {
    cohomology::serre_dual(a, b, h, k)
}

#[pyfunction]
fn critical_band(a: i64, b: i64) -> PyResult<(i64, i64)> {
    reduction::critical_band(a, b).map_err(err)
}

/// `(alpha, m, beta, n)` with `h = alpha + m a`, `k = beta - n b`.
#[pyfunction]
fn decompose(a: i64, b: i64, h: i64, k: i64) -> PyResult<(i64, i64, i64, i64)> {
    let d = reduction::decompose(a, b, h, k).map_err(err)?;
    Ok((d.alpha, d.m, d.beta, d.n))
}

#[pyfunction]
fn classify(py: Python<'_>, a: i64, b: i64, h: i64, k: i64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &reduction::classify(a, b, h, k))
}

/// Edge list `(right, left)` of the balanced graph with `n` edges.
#[pyfunction]
fn bipartite_graph(r: usize, l: usize, n: usize) -> PyResult<Vec<(usize, usize)>> {
    Ok(grid::bipartite_graph(r, l, n).map_err(err)?.edges)
}

/// The subset Z on the standard `a x b` grid, with its verification.
#[pyfunction]
#[pyo3(signature = (a, b, alpha, beta, prime = DEFAULT_PRIME))]
fn construct_z(py: Python<'_>, a: usize, b: usize, alpha: i64, beta: i64, prime: u64) -> PyResult<Bound<'_, PyAny>> {
    let config = VerifyZConfig {
        a,
        b,
        alpha: Some(alpha),
        beta: Some(beta),
        prime,
    };
    let report = survey::cmd_verify_z(&config).map_err(err)?;
    to_py(py, &report.cells[0])
}

#[pyfunction]
#[pyo3(signature = (a, b, alpha, beta, prime = DEFAULT_PRIME))]
fn verify_z(a: usize, b: usize, alpha: i64, beta: i64, prime: u64) -> PyResult<bool> {
    let g = grid::Grid::standard(field(prime)?, a, b).map_err(err)?;
    let z = grid::construct_z(&g, alpha, beta).map_err(err)?;
    Ok(grid::verify_z(&z))
}

#[pymodule]
fn bigrade(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_PRIME", DEFAULT_PRIME)?;
    m.add("__version__", survey::VERSION)?;
    m.add_class::<PyBiForm>()?;
    m.add_class::<PyMapMatrix>()?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(curve_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(genus, m)?)?;
    m.add_function(wrap_pyfunction!(degree, m)?)?;
    m.add_function(wrap_pyfunction!(serre_dual, m)?)?;
    m.add_function(wrap_pyfunction!(critical_band, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_graph, m)?)?;
    m.add_function(wrap_pyfunction!(construct_z, m)?)?;
    m.add_function(wrap_pyfunction!(verify_z, m)?)?;
    Ok(())
}
