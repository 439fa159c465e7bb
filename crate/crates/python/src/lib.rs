//! Python access to the q-multigamma, vertex and Chern-Simons routines.

use num::complex::Complex64;
use num::ToPrimitive;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use qbarnes::asymptotics::{macas_coefficient, macas_partial, macas_remainder, zeta3_value, zeta_prime_minus_one};
use qbarnes::chernsimons::{quantum_diameter, z_s3, CSLevelRank, DiameterMethod};
use qbarnes::cli::suites::{run_suite, SuiteConfig};
use qbarnes::multigamma::{gq_alternating, gq_nishizawa, gq_terminated, MultigammaQuery};
use qbarnes::partitions::Partition;
use qbarnes::qfuncs::macmahon_series;
use qbarnes::schur::{lr_coeff, LRKey};
use qbarnes::vertex::{conifold_graph, dt_coeffs, state_sum};

fn err(e: qbarnes::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

/// `G_q^{(d)}(z+1)`; method is "alternating" or "nishizawa".
#[pyfunction]
#[pyo3(signature = (d, z, q, method = "alternating", tol = 1e-12))]
fn gq(d: u32, z: Complex64, q: Complex64, method: &str, tol: f64) -> PyResult<Complex64> {
    let query = MultigammaQuery::new(d, z, q).map_err(err)?;
    match method {
        "alternating" => gq_alternating(query, tol).map_err(err),
        "nishizawa" => gq_nishizawa(query, tol).map_err(err),
        other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
}

/// Finite product form at a non-negative integer, valid for any q.
#[pyfunction]
fn gq_integer(d: u32, n: u32, q: Complex64) -> Complex64 {
    gq_terminated(d, n, q)
}

#[pyfunction]
fn macmahon_coefficients(q_order: i64) -> Vec<String> {
    let s = macmahon_series(q_order);
    (0..=q_order).map(|n| s.coeff_q(0, n).to_string()).collect()
}

/// Conifold vertex sum as `(a_exp, q_exp, "p/q")` triples.
#[pyfunction]
fn conifold_series(a_order: u32, q_order: i64) -> PyResult<Vec<(u32, f64, String)>> {
    let s = state_sum(&conifold_graph(), a_order, q_order).map_err(err)?;
    Ok(s.terms().map(|(&(a, u), c)| (a, u as f64 / 2.0, c.to_string())).collect())
}

#[pyfunction]
fn dt_invariants(d: u32, q_order: i64) -> PyResult<Vec<i64>> {
    let z = state_sum(&conifold_graph(), d, q_order).map_err(err)?;
    dt_coeffs(&z, d).map_err(err)
}

#[pyfunction]
fn zs3(n: u32, k: u32) -> PyResult<Complex64> {
    Ok(z_s3(CSLevelRank::new(n, k).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (n, k, closed = false))]
fn diameter_squared(n: u32, k: u32, closed: bool) -> PyResult<Complex64> {
    let ctx = CSLevelRank::new(n, k).map_err(err)?;
    let method = if closed { DiameterMethod::Closed } else { DiameterMethod::Statesum };
    Ok(quantum_diameter(ctx, method))
}

/// Coefficient of `s_lambda` in `s_mu s_nu`.
#[pyfunction]
fn littlewood_richardson(lambda: Vec<u32>, mu: Vec<u32>, nu: Vec<u32>) -> PyResult<u64> {
    let key = LRKey { lambda: partition(lambda)?, mu: partition(mu)?, nu: partition(nu)? };
    Ok(lr_coeff(&key))
}

/// Genus-g coefficient of the MacMahon expansion as (numerator, denominator).
#[pyfunction]
fn macmahon_genus_coefficient(g: u32) -> PyResult<(String, String)> {
    let r = macas_coefficient(g).map_err(err)?;
    Ok((r.numer().to_string(), r.denom().to_string()))
}

/// `(partial, remainder)` of the small-x expansion of ln M(e^{-x}).
#[pyfunction]
fn macmahon_asymptotics(x: f64, genus_max: u32) -> (f64, f64) {
    let partial = macas_partial(x, genus_max, zeta3_value(), zeta_prime_minus_one());
    (partial, macas_remainder(x, genus_max))
}

/// Runs a verification suite and returns its JSON report.
#[pyfunction]
fn verify(suite: &str) -> PyResult<String> {
    let report = run_suite(suite, SuiteConfig::default()).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn exact_to_float(frac: &str) -> PyResult<f64> {
    let r: num::BigRational = frac.parse().map_err(|_| PyValueError::new_err(format!("bad rational {frac:?}")))?;
    r.to_f64().ok_or_else(|| PyValueError::new_err("out of range"))
}

#[pymodule]
fn pyqbarnes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gq, m)?)?;
    m.add_function(wrap_pyfunction!(gq_integer, m)?)?;
    m.add_function(wrap_pyfunction!(macmahon_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(conifold_series, m)?)?;
    m.add_function(wrap_pyfunction!(dt_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(zs3, m)?)?;
    m.add_function(wrap_pyfunction!(diameter_squared, m)?)?;
    m.add_function(wrap_pyfunction!(littlewood_richardson, m)?)?;
    m.add_function(wrap_pyfunction!(macmahon_genus_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(macmahon_asymptotics, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(exact_to_float, m)?)?;
    Ok(())
}
