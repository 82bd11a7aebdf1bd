//! Python bindings: run verification suites and evaluate the basic symbolic
//! objects from Python. Exact coefficients cross the boundary as strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use toroidal_fock::fock::{BasisState, FockVector};
use toroidal_fock::lattice::{CartanData, LatticeElt};
use toroidal_fock::polyring::{serre_f_check, serre_poly_k1};
use toroidal_fock::report::{run, RunConfig, Suite};
use toroidal_fock::series::{qpow_homog, qpow_twisted};
use toroidal_fock::vertex::{vertex_mode as vertex_mode_rs, Sign};

fn py_err(e: toroidal_fock::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cartan(type_name: &str) -> PyResult<CartanData> {
    CartanData::builtin(type_name).map_err(py_err)
}

/// Cartan matrix of a builtin simply-laced type such as `"A2"` or `"E6"`.
#[pyfunction]
fn cartan_matrix(type_name: &str) -> PyResult<Vec<Vec<i64>>> {
    Ok(cartan(type_name)?.matrix().to_vec())
}

/// Runs the selected suites and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (type_name, suites = "all", modes = 3, degree = 5, serre_k = vec![1, 2, 3], affine = false))]
fn verify(py: Python<'_>, type_name: &str, suites: &str, modes: i64, degree: u32, serre_k: Vec<i64>, affine: bool) -> PyResult<String> {
    let mut config = RunConfig::new(cartan(type_name)?);
    config.suites = Suite::parse_list(suites).map_err(py_err)?;
    config.modes = modes;
    config.degree = degree;
    config.serre_k = serre_k;
    config.affine = affine;
    let report = py.detach(|| run(&config)).map_err(py_err)?;
    Ok(report.to_json())
}

/// The cubic Serre polynomial (`k = 1`) or the antisymmetrized `f` (`k >= 2`),
/// printed; `"0"` when it vanishes.
#[pyfunction]
fn serre_polynomial(k: i64) -> PyResult<String> {
    let p = if k == 1 { serre_poly_k1() } else { serre_f_check(k).map_err(py_err)? };
    Ok(p.to_string())
}

/// Coefficients of `(1 - z)^r_{q^2}`, or of the twisted `((1 - z)/(1 + z))^r_{q^2}`,
/// up to `z^bound`.
#[pyfunction]
#[pyo3(signature = (r, bound, twisted = false))]
fn qbinomial_series(r: i64, bound: usize, twisted: bool) -> Vec<String> {
    let s = if twisted { qpow_twisted(r, bound) } else { qpow_homog(r, bound) };
    (0..=bound).map(|n| s.coeff(n).to_string()).collect()
}

/// `X_i^{sign}(n)` applied to `a(-parts) |lattice⟩`; returns `(state, coefficient)` pairs.
#[pyfunction]
#[pyo3(signature = (type_name, node, sign, n, lattice = None, parts = vec![]))]
fn vertex_mode(
    type_name: &str,
    node: usize,
    sign: i64,
    n: i64,
    lattice: Option<Vec<i64>>,
    parts: Vec<(u32, u32)>,
) -> PyResult<Vec<(String, String)>> {
    let c = cartan(type_name)?;
    let sign = match sign {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        _ => return Err(PyValueError::new_err("sign must be 1 or -1")),
    };
    let alpha = c.root(node).map_err(py_err)?;
    let lattice = LatticeElt(lattice.unwrap_or_else(|| vec![0; c.rank()]));
    if lattice.rank() != c.rank() {
        return Err(PyValueError::new_err(format!("lattice vector must have {} entries", c.rank())));
    }
    if let Some(p) = parts.iter().find(|&&(i, m)| i == 0 || i as usize > c.rank() || m % 2 == 0) {
        return Err(PyValueError::new_err(format!("invalid creation part {p:?}: node in 1..={}, odd mode", c.rank())));
    }
    let v = FockVector::basis(BasisState::new(parts, lattice));
    let out = vertex_mode_rs(&c, &alpha, sign, n, &v);
    Ok(out.iter().map(|(s, x)| (s.to_string(), x.to_string())).collect())
}

#[pymodule]
fn pytoroidal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cartan_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(serre_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(qbinomial_series, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_mode, m)?)?;
    Ok(())
}
