//! The quantum multigamma hierarchy `G_q^{(d)}`.
//!
//! Every evaluator returns `G_q^{(d)}(z+1)` for the query argument `z`, so
//! `z = 0` is the normalization point. Complex powers use the principal
//! logarithm of `q`; the negative real axis is rejected.

use num::complex::Complex64;
use num::BigInt;

use crate::qfuncs::{off_cut, qmf_log, qmf_numeric, qpolylog, QPoint};
use crate::series::TruncSeries;
use crate::stirling::{stirling_int, stirling_poly};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultigammaQuery {
    pub d: u32,
    pub z: Complex64,
    pub q: Complex64,
}

impl MultigammaQuery {
    pub fn new(d: u32, z: Complex64, q: Complex64) -> Result<Self> {
        if !off_cut(q) {
            return Err(Error::QOnCut);
        }
        if q.norm() >= 1.0 {
            return Err(Error::OutsideUnitDisk);
        }
        Ok(MultigammaQuery { d, z, q })
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `q^z` on the principal branch.
pub fn qpow(q: Complex64, z: Complex64) -> Complex64 {
    (z * q.ln()).exp()
}

/// Principal `ln(1 − x)`, with a short series near zero.
fn log1m(x: Complex64) -> Complex64 {
    if x.norm() < 1e-3 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = x;
        for k in 1..=8 {
            acc -= p / k as f64;
            p *= x;
        }
        acc
    } else {
        (one() - x).ln()
    }
}

/// `ln (q;q)^{(i)}_∞` on the branch continuous from `q = 0`: `ln(1−q)` for
/// `i = 0`, `−Li_{i+1}(q;q)` otherwise.
pub fn log_qq(i: u32, q: Complex64, tol: f64) -> Result<Complex64> {
    if i == 0 {
        Ok(log1m(q))
    } else {
        Ok(-qpolylog(i + 1, QPoint::new(q, q), tol)?)
    }
}

/// Base of the hierarchy: `G^{(0)}(z+1) = (1 − q^{z+1})/(1 − q)`.
fn gq_zero(z: Complex64, q: Complex64) -> Complex64 {
    (one() - qpow(q, z + 1.0)) / (one() - q)
}

/// Alternating formula
/// `G^{(d)}(z+1) = Π_{i≤d} (q;q)^{(i)}_∞^{(−1)^{i+1} binom(z, d−i)} · (q^{z+1};q)^{(d)}_∞^{(−1)^d}`.
pub fn gq_alternating(query: MultigammaQuery, tol: f64) -> Result<Complex64> {
    let MultigammaQuery { d, z, q } = query;
    if d == 0 {
        return Ok(gq_zero(z, q));
    }
    let mut anomaly = Complex64::new(0.0, 0.0);
    for i in 0..=d {
        let e = stirling_poly(&z, d - i);
        let e = if i % 2 == 0 { -e } else { e };
        anomaly += e * log_qq(i, q, tol)?;
    }
    // both factors can leave the range of f64 separately
    let main = qmf_log(d, QPoint::new(qpow(q, z + 1.0), q), tol)?;
    let main = if d % 2 == 0 { main } else { -main };
    Ok((anomaly + main).exp())
}

/// Logarithm of the Nishizawa product
/// `(1−q)^{−binom(z,d)} Π_{n≥1} (1−q^n)^{binom(z−n,d−1)} / (1−q^{z+n})^{binom(−n,d−1)}`,
/// summed until `max(|q|^n, |q^{z+n}|)(|z|+n)^{d−1}/(1−|q|)` is below `tol`.
pub fn log_gq_nishizawa(query: MultigammaQuery, tol: f64) -> Result<Complex64> {
    let MultigammaQuery { d, z, q } = query;
    if d == 0 {
        return Err(Error::Domain("the Nishizawa product needs d ≥ 1".into()));
    }
    let rq = q.norm();
    let qz = qpow(q, z);
    let mut acc = -stirling_poly(&z, d) * log1m(q);
    let mut qn = one();
    let mut n = 1u64;
    loop {
        qn *= q;
        let qzn = qz * qn;
        let e1 = stirling_poly(&(z - n as f64), d - 1);
        let e2 = stirling_int(-(n as i64), d - 1);
        let e2 = bigint_f64(&e2);
        acc += e1 * log1m(qn) - e2 * log1m(qzn);
        let size = qn.norm().max(qzn.norm());
        let growth = (z.norm() + n as f64).powi(d as i32 - 1) / (1.0 - rq);
        if size < 1.0 && size * growth < tol {
            break;
        }
        n += 1;
        if n > 10_000_000 {
            return Err(Error::Domain("Nishizawa product did not reach tolerance".into()));
        }
    }
    Ok(acc)
}

fn bigint_f64(n: &BigInt) -> f64 {
    use num::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

pub fn gq_nishizawa(query: MultigammaQuery, tol: f64) -> Result<Complex64> {
    if query.d == 0 {
        return Ok(gq_zero(query.z, query.q));
    }
    Ok(log_gq_nishizawa(query, tol)?.exp())
}

/// Terminated product `G^{(d)}(N+1) = (1−q)^{−binom(N,d)} Π_{n=1}^{N} (1−q^n)^{binom(N−n,d−1)}`,
/// valid for every complex `q` (including roots of unity).
pub fn gq_terminated(d: u32, n: u32, q: Complex64) -> Complex64 {
    if d == 0 {
        // G^{(0)}(N+1) = 1 + q + … + q^N
        return (0..=n).fold(Complex64::new(0.0, 0.0), |acc, j| acc + q.powu(j));
    }
    let e0: i32 = stirling_int(n as i64, d).try_into().unwrap_or(0);
    let mut v = (one() - q).powi(-e0);
    for m in 1..=n {
        let e: i32 = stirling_int((n - m) as i64, d - 1).try_into().unwrap_or(0);
        if e != 0 {
            v *= (one() - q.powu(m)).powi(e);
        }
    }
    v
}

/// Exact series of the terminated product through `q^{q_order}`.
pub fn gq_terminated_series(d: u32, n: u32, q_order: i64) -> TruncSeries {
    let uo = 2 * q_order;
    let one_minus = |m: u32| {
        let mut s = TruncSeries::one(0, uo);
        s.add_term(0, 2 * m as i64, crate::series::rat(-1));
        s
    };
    if d == 0 {
        let mut s = TruncSeries::zero(0, uo);
        for j in 0..=n {
            s.add_term(0, 2 * j as i64, crate::series::rat(1));
        }
        return s;
    }
    let e0: i64 = stirling_int(n as i64, d).try_into().unwrap_or(0);
    let mut s = one_minus(1).int_pow(-e0).expect("1 − q is invertible");
    for m in 1..=n {
        let e: i64 = stirling_int((n - m) as i64, d - 1).try_into().unwrap_or(0);
        if e != 0 {
            s = s.mul_series(&one_minus(m).int_pow(e).expect("positive power"));
        }
    }
    s
}

/// Jackson's quantum gamma in its four-factor alternating form:
/// `Γ_q(z+1) = (1−q)^{−z} (q;q)_∞ / (q^{z+1};q)_∞`.
pub fn gamma_q_explicit(z: Complex64, q: Complex64, tol: f64) -> Result<Complex64> {
    MultigammaQuery::new(1, z, q)?;
    let f0 = (-z * log1m(q)).exp();
    let f1 = qmf_numeric(1, QPoint::new(q, q), tol)?;
    let main = qmf_numeric(1, QPoint::new(qpow(q, z + 1.0), q), tol)?;
    Ok(f0 * f1 / main)
}

/// Quantum Barnes function in its four-factor alternating form:
/// `G_q(z+1) = (1−q)^{−z(z−1)/2} (q;q)_∞^z (q^{z+1};q)^{(2)}_∞ / (q;q)^{(2)}_∞`.
pub fn barnes_q_explicit(z: Complex64, q: Complex64, tol: f64) -> Result<Complex64> {
    MultigammaQuery::new(2, z, q)?;
    let f0 = (-(z * (z - 1.0) / 2.0) * log1m(q)).exp();
    let f1 = (z * log_qq(1, q, tol)?).exp();
    let f2 = qmf_numeric(2, QPoint::new(q, q), tol)?;
    let main = qmf_numeric(2, QPoint::new(qpow(q, z + 1.0), q), tol)?;
    Ok(f0 * f1 * main / f2)
}

/// Coefficient of `t^d` in `(1+t)^z Σ (−1)^i Li_{i+1}(q;q) t^i − Σ (−1)^i Li_{i+1}(q^{z+1};q) t^i`.
pub fn hierarchy_coeff(d: u32, z: Complex64, q: Complex64, tol: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=d {
        let li = qpolylog(i + 1, QPoint::new(q, q), tol)?;
        let s = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += stirling_poly(&z, d - i) * s * li;
    }
    let main = qpolylog(d + 1, QPoint::new(qpow(q, z + 1.0), q), tol)?;
    let s = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(acc - s * main)
}
