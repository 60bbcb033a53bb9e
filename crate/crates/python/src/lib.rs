//! Python bindings for `cohorder`.
//!
//! Matrices cross the boundary as nested lists of `complex`; every library
//! error surfaces as `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cohorder::linalg::{self, ComplexMatrix};
use cohorder::measures::{self, Measure};
use cohorder::ordering;
use cohorder::postulates::{self, CampaignConfig};

fn py_err(e: cohorder::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `(verdict, (a1, a2), (b1, b2))`.
type Classification = (String, (f64, f64), (f64, f64));
/// `(z1_axis, z2_axis, delta_cr)`.
type Grid = (Vec<f64>, Vec<f64>, Vec<Vec<f64>>);

fn parse_measure(name: &str) -> PyResult<Measure> {
    name.parse::<Measure>().map_err(py_err)
}

/// A validated density matrix.
#[pyclass(
    name = "DensityMatrix",
    module = "pycohorder",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyDensity {
    inner: cohorder::DensityMatrix,
}

#[pymethods]
impl PyDensity {
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let m = ComplexMatrix::from_rows(rows).map_err(py_err)?;
        let inner = cohorder::DensityMatrix::new(m).map_err(py_err)?;
        Ok(Self { inner })
    }

    /// Qubit `rho(t, z)` in canonical form.
    #[staticmethod]
    fn from_bloch(t: f64, z: f64) -> PyResult<Self> {
        let q = cohorder::BlochQubit::new(t, z).map_err(py_err)?;
        Ok(Self {
            inner: q.to_density(),
        })
    }

    #[staticmethod]
    fn from_populations(p: Vec<f64>) -> PyResult<Self> {
        let inner = cohorder::DensityMatrix::from_populations(&p).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.inner.matrix().rows()
    }

    fn populations(&self) -> Vec<f64> {
        self.inner.populations()
    }

    fn spectrum(&self) -> PyResult<Vec<f64>> {
        Ok(self.inner.spectrum().map_err(py_err)?.into_vec())
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dim={})", self.inner.dim())
    }
}

/// A normalized pure state.
#[pyclass(name = "PureState", module = "pycohorder", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPure {
    inner: cohorder::PureState,
}

#[pymethods]
impl PyPure {
    #[new]
    fn new(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        let inner = cohorder::PureState::new(amplitudes).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    fn density(&self) -> PyDensity {
        PyDensity {
            inner: self.inner.density(),
        }
    }

    fn __repr__(&self) -> String {
        format!("PureState(dim={})", self.inner.dim())
    }
}

/// Coherence of `rho` under `measure` (`l1`, `relent` or `formation`).
#[pyfunction]
fn coherence(rho: &PyDensity, measure: &str) -> PyResult<f64> {
    let m = parse_measure(measure)?;
    Ok(measures::evaluate(&rho.inner, m).map_err(py_err)?.value)
}

/// Coherence of a pure state, computed from its amplitudes.
#[pyfunction]
fn coherence_pure(phi: &PyPure, measure: &str) -> PyResult<f64> {
    let m = parse_measure(measure)?;
    Ok(measures::evaluate_pure(&phi.inner, m)
        .map_err(py_err)?
        .value)
}

#[pyfunction]
fn c_l1(rho: &PyDensity) -> f64 {
    measures::c_l1(&rho.inner).value
}

#[pyfunction]
fn c_r(rho: &PyDensity) -> PyResult<f64> {
    Ok(measures::c_r(&rho.inner).map_err(py_err)?.value)
}

#[pyfunction]
fn c_f(rho: &PyDensity) -> PyResult<f64> {
    Ok(measures::c_f(&rho.inner).map_err(py_err)?.value)
}

#[pyfunction]
fn binary_entropy(x: f64) -> PyResult<f64> {
    linalg::binary_entropy(x).map_err(py_err)
}

#[pyfunction]
fn shannon_entropy(p: Vec<f64>) -> PyResult<f64> {
    linalg::shannon_entropy(&p).map_err(py_err)
}

#[pyfunction]
fn von_neumann_entropy(rho: &PyDensity) -> PyResult<f64> {
    linalg::von_neumann_entropy(rho.inner.matrix()).map_err(py_err)
}

/// Returns `(verdict, (a1, a2), (b1, b2))` with verdict one of
/// `same-order`, `ordering-different`, `tie-at-tolerance`.
#[pyfunction]
#[pyo3(signature = (rho1, rho2, measure_a = "l1", measure_b = "relent", tol = ordering::ORDER_TOL))]
fn classify_pair(
    rho1: &PyDensity,
    rho2: &PyDensity,
    measure_a: &str,
    measure_b: &str,
    tol: f64,
) -> PyResult<Classification> {
    let (a, b) = (parse_measure(measure_a)?, parse_measure(measure_b)?);
    let v = ordering::classify_pair(&rho1.inner, &rho2.inner, a, b, tol).map_err(py_err)?;
    Ok((
        v.verdict.label().to_owned(),
        (v.value_a1, v.value_a2),
        (v.value_b1, v.value_b2),
    ))
}

/// Returns `(feasible, lhs, rhs, boundary)`.
#[pyfunction]
fn qubit_pair_feasible(t1: f64, t2: f64) -> PyResult<(bool, f64, f64, bool)> {
    let r = ordering::qubit_pair_feasible(t1, t2).map_err(py_err)?;
    Ok((r.feasible, r.lhs, r.rhs, r.boundary))
}

#[pyfunction]
fn find_witness(t1: f64, t2: f64) -> PyResult<Option<(f64, f64)>> {
    ordering::find_witness(t1, t2).map_err(py_err)
}

/// Returns `(z1_axis, z2_axis, delta_cr)` with `delta_cr[i][j]` at `(z1_axis[i], z2_axis[j])`.
#[pyfunction]
#[pyo3(signature = (t1, t2, n1 = 201, n2 = 201))]
fn scan_delta_cr(t1: f64, t2: f64, n1: usize, n2: usize) -> PyResult<Grid> {
    let g = ordering::scan_delta_cr(t1, t2, n1, n2).map_err(py_err)?;
    Ok((g.z1_axis, g.z2_axis, g.delta_cr))
}

#[pyfunction]
fn reference_qubit_pair() -> (PyDensity, PyDensity) {
    let (a, b) = ordering::reference_qubit_pair();
    (PyDensity { inner: a }, PyDensity { inner: b })
}

#[pyfunction]
fn reference_qutrit_pair() -> (PyPure, PyPure) {
    let (a, b) = ordering::reference_qutrit_pair();
    (PyPure { inner: a }, PyPure { inner: b })
}

/// Lifted pure pair in dimension `d` with real leading coefficient `alpha`.
#[pyfunction]
fn lifted_pair(d: usize, alpha: f64) -> PyResult<(PyPure, PyPure)> {
    let (a, betas) = ordering::uniform_tail(d, alpha).map_err(py_err)?;
    let (p1, p2) = ordering::build_lifted_pair(d, a, &betas).map_err(py_err)?;
    Ok((PyPure { inner: p1 }, PyPure { inner: p2 }))
}

/// Embedded mixed pair in dimension `d` with maximally mixed incoherent blocks.
#[pyfunction]
fn embedded_pair(d: usize) -> PyResult<(PyDensity, PyDensity)> {
    if d < 3 {
        return Err(PyValueError::new_err(format!(
            "embedded pairs need d >= 3, got {d}"
        )));
    }
    let delta = cohorder::DensityMatrix::maximally_mixed(d - 2);
    let (r1, r2) = ordering::build_embedded_pair(d, &delta, &delta).map_err(py_err)?;
    Ok((PyDensity { inner: r1 }, PyDensity { inner: r2 }))
}

/// Runs the postulate campaign; returns `(checks, failures, implication_violations)`.
#[pyfunction]
#[pyo3(signature = (dim, trials, seed = 0, measures = vec!["l1".to_owned(), "relent".to_owned()]))]
fn run_postulates(
    dim: usize,
    trials: usize,
    seed: u64,
    measures: Vec<String>,
) -> PyResult<(usize, usize, usize)> {
    let measures = measures
        .iter()
        .map(|m| parse_measure(m))
        .collect::<PyResult<Vec<_>>>()?;
    let report = postulates::run_campaign(&CampaignConfig {
        dim,
        trials,
        seed,
        measures,
    })
    .map_err(py_err)?;
    Ok((
        report.lines.len(),
        report.failures(),
        report.implication_violations,
    ))
}

#[pymodule]
fn pycohorder(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDensity>()?;
    m.add_class::<PyPure>()?;
    m.add_function(wrap_pyfunction!(coherence, m)?)?;
    m.add_function(wrap_pyfunction!(coherence_pure, m)?)?;
    m.add_function(wrap_pyfunction!(c_l1, m)?)?;
    m.add_function(wrap_pyfunction!(c_r, m)?)?;
    m.add_function(wrap_pyfunction!(c_f, m)?)?;
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(classify_pair, m)?)?;
    m.add_function(wrap_pyfunction!(qubit_pair_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(find_witness, m)?)?;
    m.add_function(wrap_pyfunction!(scan_delta_cr, m)?)?;
    m.add_function(wrap_pyfunction!(reference_qubit_pair, m)?)?;
    m.add_function(wrap_pyfunction!(reference_qutrit_pair, m)?)?;
    m.add_function(wrap_pyfunction!(lifted_pair, m)?)?;
    m.add_function(wrap_pyfunction!(embedded_pair, m)?)?;
    m.add_function(wrap_pyfunction!(run_postulates, m)?)?;
    Ok(())
}
