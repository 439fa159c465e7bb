//! q-multifactorials `(a;q)^{(d)}_∞`, the quantum polylogarithm and the
//! MacMahon function, as exact series and as complex numbers.

use num::complex::Complex64;
use num::{BigInt, BigRational, One};

use crate::series::TruncSeries;
use crate::stirling::stirling_int;
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-14;

/// Evaluation point `(a, q)` with the domain flags the numeric routines need.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QPoint {
    pub a: Complex64,
    pub q: Complex64,
    pub q_in_disk: bool,
    pub q_off_cut: bool,
}

impl QPoint {
    pub fn new(a: Complex64, q: Complex64) -> Self {
        QPoint { a, q, q_in_disk: q.norm() < 1.0, q_off_cut: off_cut(q) }
    }
}

/// False on the closed negative real axis and at zero, where `q^z` has no
/// principal value.
pub fn off_cut(q: Complex64) -> bool {
    !(q.im == 0.0 && q.re <= 0.0)
}

/// `C(e, j)` for a non-negative big exponent.
fn big_binom(e: &BigInt, j: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= e - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Multiplies `s` by `(1 − a^{a_deg} q^m)^e`, expanding the binomial as far
/// as the orders of `s` allow.
fn mul_factor_power(s: &TruncSeries, a_deg: u32, m: i64, e: &BigInt) -> TruncSeries {
    let mut f = TruncSeries::one(s.a_order(), s.u_order());
    let mut j = 1u32;
    while &BigInt::from(j) <= e {
        let (aj, uj) = (a_deg * j, 2 * m * j as i64);
        if aj > s.a_order() || uj > s.u_order() {
            break;
        }
        let c = big_binom(e, j);
        f.add_term(aj, uj, BigRational::from_integer(if j % 2 == 1 { -c } else { c }));
        j += 1;
    }
    s.mul_series(&f)
}

/// Exact `(q^m; q)^{(d)}_∞ = Π_{n≥0} (1 − q^{m+n})^{binom(d+n−1, n)}` through `q^{q_order}`.
pub fn qmf_series(d: u32, m: u32, q_order: i64) -> TruncSeries {
    if m == 0 {
        return TruncSeries::zero(0, 2 * q_order);
    }
    let mut s = TruncSeries::one(0, 2 * q_order);
    let top = if d == 0 { 0 } else { q_order - m as i64 };
    for n in 0..=top {
        let e = stirling_int(d as i64 + n - 1, n as u32);
        s = mul_factor_power(&s, 0, m as i64 + n, &e);
    }
    s
}

/// Exact `(a q^shift; q)^{(d)}_∞ = Π_{n≥0} (1 − a q^{shift+n})^{binom(d+n−1, n)}`;
/// `d = 0` gives the single factor `1 − a q^shift`.
pub fn qmf_bivariate(d: u32, shift: u32, a_order: u32, q_order: i64) -> TruncSeries {
    let mut s = TruncSeries::one(a_order, 2 * q_order);
    let top = if d == 0 { 0 } else { q_order - shift as i64 };
    for n in 0..=top.max(0) {
        let e = stirling_int(d as i64 + n - 1, n as u32);
        s = mul_factor_power(&s, 1, shift as i64 + n, &e);
    }
    s
}

/// Li_s(a; q) = Σ_{k≥1} a^k / (k (1 − q^k)^{s−1}), summed until the bound
/// |a|^{K+1} / ((K+1)(1−|q|)^{s−1}(1−|a|)) drops below `tol`.
pub fn qpolylog(s: u32, p: QPoint, tol: f64) -> Result<Complex64> {
    if s < 1 {
        return Err(Error::Domain("qpolylog needs s ≥ 1".into()));
    }
    let (ra, rq) = (p.a.norm(), p.q.norm());
    if ra >= 1.0 || rq >= 1.0 {
        return Err(Error::OutsideUnitDisk);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut ak = Complex64::new(1.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    let denom_bound = (1.0 - rq).powi(s as i32 - 1) * (1.0 - ra);
    let mut k = 1u64;
    loop {
        ak *= p.a;
        qk *= p.q;
        let term = ak / (k as f64 * (Complex64::new(1.0, 0.0) - qk).powi(s as i32 - 1));
        sum += term;
        let bound = ra.powi(k as i32 + 1) / ((k + 1) as f64 * denom_bound);
        if bound < tol || ak.norm() == 0.0 {
            break;
        }
        k += 1;
    }
    Ok(sum)
}

/// Above this modulus of `a`, [`qmf_numeric`] peels off a finite prefix.
const DIRECT_RADIUS: f64 = 0.9;

/// `(a; q)^{(d)}_∞ = exp(−Li_{d+1}(a; q))` for `|a| < 0.9`; larger `a` uses
/// `(a;q)^{(d)} = Π_{i<N} (aq^i;q)^{(d−1)} · (aq^N;q)^{(d)}` with the tail
/// inside the disk.
pub fn qmf_numeric(d: u32, p: QPoint, tol: f64) -> Result<Complex64> {
    if !p.q_in_disk {
        return Err(Error::OutsideUnitDisk);
    }
    let one = Complex64::new(1.0, 0.0);
    if d == 0 {
        return Ok(one - p.a);
    }
    if p.a.norm() < DIRECT_RADIUS {
        return Ok((-qpolylog(d + 1, p, tol)?).exp());
    }
    if p.q.norm() == 0.0 {
        // only the i = 0 factor survives
        return Ok(one - p.a);
    }
    let mut prod = one;
    let mut a = p.a;
    while a.norm() >= DIRECT_RADIUS {
        prod *= qmf_numeric(d - 1, QPoint::new(a, p.q), tol)?;
        a *= p.q;
    }
    Ok(prod * qmf_numeric(d, QPoint::new(a, p.q), tol)?)
}

/// A logarithm of `(a; q)^{(d)}_∞`, for values beyond the range of `f64`.
/// The branch is fixed only modulo `2πi`.
pub fn qmf_log(d: u32, p: QPoint, tol: f64) -> Result<Complex64> {
    if !p.q_in_disk {
        return Err(Error::OutsideUnitDisk);
    }
    let one = Complex64::new(1.0, 0.0);
    if d == 0 {
        return Ok((one - p.a).ln());
    }
    if p.a.norm() < DIRECT_RADIUS {
        return Ok(-qpolylog(d + 1, p, tol)?);
    }
    if p.q.norm() == 0.0 {
        return Ok((one - p.a).ln());
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut a = p.a;
    while a.norm() >= DIRECT_RADIUS {
        acc += qmf_log(d - 1, QPoint::new(a, p.q), tol)?;
        a *= p.q;
    }
    Ok(acc + qmf_log(d, QPoint::new(a, p.q), tol)?)
}

/// `(a;q)^{(d)}_N` as the ratio of infinite products.
pub fn qmf_finite_ratio(d: u32, n: u32, p: QPoint, tol: f64) -> Result<Complex64> {
    let shifted = QPoint::new(p.a * p.q.powu(n), p.q);
    Ok(qmf_numeric(d, p, tol)? / qmf_numeric(d, shifted, tol)?)
}

/// `(a;q)^{(d)}_N = Π_{i<N} (aq^i; q)^{(d−1)}_∞`.
pub fn qmf_finite_product(d: u32, n: u32, p: QPoint, tol: f64) -> Result<Complex64> {
    if d == 0 {
        return Err(Error::Domain("finite product form needs d ≥ 1".into()));
    }
    let mut prod = Complex64::new(1.0, 0.0);
    let mut a = p.a;
    for _ in 0..n {
        prod *= qmf_numeric(d - 1, QPoint::new(a, p.q), tol)?;
        a *= p.q;
    }
    Ok(prod)
}

/// ln M(e^{−x}) = Σ_k csch²(kx/2) / (4k).
pub fn macmahon_eval(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("macmahon_eval needs x > 0, got {x}")));
    }
    let r = (-x).exp();
    let mut sum = 0.0;
    let mut k = 1u64;
    loop {
        let s = (k as f64 * x / 2.0).sinh();
        let term = 1.0 / (4.0 * k as f64 * s * s);
        sum += term;
        // csch²(y) ≤ 4e^{−2y}/(1−e^{−x})² for y ≥ x/2, summed geometrically
        let rk = r.powi(k as i32 + 1);
        let tail = rk / ((k + 1) as f64 * (1.0 - r).powi(3));
        if tail < 1e-17 * sum.abs().max(1e-300) || term == 0.0 {
            break;
        }
        k += 1;
    }
    Ok(sum)
}

/// ln M(q) for real `0 < q < 1` through the product `M = 1/(q;q)^{(2)}`.
pub fn macmahon_product_log(x: f64) -> Result<f64> {
    let q = Complex64::new((-x).exp(), 0.0);
    let v = qmf_numeric(2, QPoint::new(q, q), 1e-16)?;
    Ok(-v.ln().re)
}

/// Exact MacMahon series `M(q) = Π (1 − q^n)^{−n}`.
pub fn macmahon_series(q_order: i64) -> TruncSeries {
    qmf_series(2, 1, q_order).inverse().expect("constant term 1")
}

/// Direct truncated single product `Π_{n<terms} (1 − a q^n)^{binom(d+n−1,n)}`.
pub fn qmf_direct_product(d: u32, p: QPoint, terms: u32) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 0..terms {
        let e = stirling_int(d as i64 + n as i64 - 1, n);
        let e: i32 = e.try_into().unwrap_or(i32::MAX);
        prod *= (Complex64::new(1.0, 0.0) - p.a * qn).powi(e);
        qn *= p.q;
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_examples() {
        assert_eq!(qmf_series(0, 1, 10), TruncSeries::from_q_coeffs(&[1, -1], 10));
        let m = qmf_series(2, 1, 5).inverse().unwrap();
        for (n, v) in [1, 1, 3, 6, 13, 24].iter().enumerate() {
            assert_eq!(m.coeff_q(0, n as i64), rat(*v));
        }
        let p = qmf_series(1, 1, 5).inverse().unwrap();
        for (n, v) in [1, 1, 2, 3, 5, 7].iter().enumerate() {
            assert_eq!(p.coeff_q(0, n as i64), rat(*v));
        }
    }

    #[test]
    fn bivariate_examples() {
        let s = qmf_bivariate(2, 1, 3, 12);
        for n in 0..=12 {
            assert_eq!(s.coeff_q(1, n), rat(-n));
        }
        let base = qmf_bivariate(0, 0, 3, 12);
        let mut expect = TruncSeries::one(3, 24);
        expect.add_term(1, 0, rat(-1));
        assert_eq!(base, expect);
        let shifted = qmf_bivariate(0, 1, 3, 12);
        assert_eq!(shifted.coeff_q(1, 1), rat(-1));
        assert_eq!(shifted.num_terms(), 2);
        let one = qmf_bivariate(1, 1, 3, 12);
        for n in 1..=12 {
            assert_eq!(one.coeff_q(1, n), rat(-1));
        }
        assert_eq!(one.coeff_q(1, 0), rat(0));
    }

    #[test]
    fn polylog_examples() {
        let a = c(0.3, 0.2);
        let li1 = qpolylog(1, QPoint::new(a, c(0.5, 0.1)), 1e-15).unwrap();
        assert!((li1 + (c(1.0, 0.0) - a).ln()).norm() < 1e-13);
        let q = c(0.4, -0.3);
        let li2 = qpolylog(2, QPoint::new(q, q), 1e-15).unwrap();
        let direct = qmf_direct_product(1, QPoint::new(q, q), 200);
        assert!((li2 + direct.ln()).norm() < 1e-12);
        assert_eq!(qpolylog(3, QPoint::new(c(0.0, 0.0), q), 1e-15).unwrap(), c(0.0, 0.0));
        assert_eq!(qpolylog(2, QPoint::new(c(1.0, 0.0), q), 1e-15), Err(Error::OutsideUnitDisk));
    }

    #[test]
    fn numeric_examples() {
        let p = QPoint::new(c(0.2, 0.1), c(0.3, 0.3));
        assert_eq!(qmf_numeric(0, p, DEFAULT_TOL).unwrap(), c(0.8, -0.1));
        let p = QPoint::new(c(0.3, 0.0), c(0.3, 0.0));
        let v = qmf_numeric(2, p, DEFAULT_TOL).unwrap();
        let direct = qmf_direct_product(2, p, 40);
        assert!(((v - direct) / direct).norm() < 1e-12);
        let (a, q) = (c(0.5, 0.2), c(0.1, 0.6));
        let v = qmf_finite_ratio(1, 3, QPoint::new(a, q), DEFAULT_TOL).unwrap();
        let one = c(1.0, 0.0);
        let explicit = (one - a) * (one - a * q) * (one - a * q * q);
        assert!(((v - explicit) / explicit).norm() < 1e-12);
    }

    #[test]
    fn numeric_outside_disk_in_a() {
        let (a, q) = (c(1.7, -0.4), c(0.5, 0.3));
        let v = qmf_numeric(2, QPoint::new(a, q), DEFAULT_TOL).unwrap();
        let direct = qmf_direct_product(2, QPoint::new(a, q), 200);
        assert!(((v - direct) / direct).norm() < 1e-11);
    }

    #[test]
    fn macmahon_examples() {
        let a = macmahon_eval(1.0).unwrap();
        let b = macmahon_product_log(1.0).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(macmahon_eval(60.0).unwrap() < 1e-25);
        assert!(macmahon_eval(0.0).is_err());
        assert!(macmahon_eval(-1.0).is_err());
    }
}
