//! Truncated Laurent series over the rationals in `u` (with `u² = q`) and an
//! optional degree variable `a`.
//!
//! A series is known exactly for every monomial `a^i u^j` with
//! `i ≤ a_order` and `j ≤ u_order`. Negative `u` exponents are allowed, and
//! products lower the retained `u_order` accordingly, so no operation claims
//! a coefficient it does not know.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::stirling::rational_to_f64;
use crate::{Error, Result};

/// Order used for exact (polynomial) data that is never truncated.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    a_order: u32,
    u_order: i64,
    coeffs: BTreeMap<(u32, i64), BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncSeries {
    pub fn zero(a_order: u32, u_order: i64) -> Self {
        TruncSeries { a_order, u_order, coeffs: BTreeMap::new() }
    }

    pub fn one(a_order: u32, u_order: i64) -> Self {
        Self::monomial(BigRational::one(), 0, 0, a_order, u_order)
    }

    pub fn monomial(c: BigRational, a: u32, u: i64, a_order: u32, u_order: i64) -> Self {
        let mut s = Self::zero(a_order, u_order);
        s.add_term(a, u, c);
        s
    }

    /// Univariate series in `q` from integer coefficients `c_0, c_1, …`.
    pub fn from_q_coeffs(coeffs: &[i64], q_order: i64) -> Self {
        let mut s = Self::zero(0, 2 * q_order);
        for (n, &c) in coeffs.iter().enumerate() {
            s.add_term(0, 2 * n as i64, rat(c));
        }
        s
    }

    pub fn a_order(&self) -> u32 {
        self.a_order
    }

    pub fn u_order(&self) -> i64 {
        self.u_order
    }

    /// Highest integral power of `q` that is known.
    pub fn q_order(&self) -> i64 {
        self.u_order.div_euclid(2)
    }

    /// Adds `c·a^a u^u`, ignoring anything beyond the retained orders.
    pub fn add_term(&mut self, a: u32, u: i64, c: BigRational) {
        if a > self.a_order || u > self.u_order || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((a, u)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(a, u));
        }
    }

    pub fn coeff(&self, a: u32, u: i64) -> BigRational {
        self.coeffs.get(&(a, u)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `a^a q^n`.
    pub fn coeff_q(&self, a: u32, n: i64) -> BigRational {
        self.coeff(a, 2 * n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i64), &BigRational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest `u` exponent present, over all `a` degrees.
    pub fn u_valuation(&self) -> Option<i64> {
        self.coeffs.keys().map(|&(_, u)| u).min()
    }

    pub fn truncate(&self, a_order: u32, u_order: i64) -> Self {
        let a_order = a_order.min(self.a_order);
        let u_order = u_order.min(self.u_order);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&(a, u), _)| a <= a_order && u <= u_order)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        TruncSeries { a_order, u_order, coeffs }
    }

    /// Same coefficients, declared with more `a` room (exact in `a` when the
    /// series genuinely has no `a` dependence).
    pub fn with_a_order(&self, a_order: u32) -> Self {
        let mut s = self.clone();
        if a_order < s.a_order {
            return s.truncate(a_order, s.u_order);
        }
        s.a_order = a_order;
        s
    }

    /// Coefficients of `a^i` as a univariate series.
    pub fn a_part(&self, i: u32) -> Self {
        let mut s = Self::zero(0, self.u_order);
        for (&(a, u), c) in &self.coeffs {
            if a == i {
                s.add_term(0, u, c.clone());
            }
        }
        s
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut s = Self::zero(self.a_order, self.u_order);
        if c.is_zero() {
            return s;
        }
        for (k, v) in &self.coeffs {
            s.coeffs.insert(*k, v * c);
        }
        s
    }

    /// Multiplication by `u^k`; the known range shifts with it.
    pub fn shift_u(&self, k: i64) -> Self {
        let u_order = if self.u_order >= EXACT / 2 { EXACT } else { self.u_order + k };
        let coeffs = self.coeffs.iter().map(|(&(a, u), v)| ((a, u + k), v.clone())).collect();
        TruncSeries { a_order: self.a_order, u_order, coeffs }
    }

    /// Substitutes `a → c·a`.
    pub fn scale_a(&self, c: &BigRational) -> Self {
        let mut s = Self::zero(self.a_order, self.u_order);
        for (&(a, u), v) in &self.coeffs {
            let mut f = BigRational::one();
            for _ in 0..a {
                f *= c;
            }
            s.add_term(a, u, v * f);
        }
        s
    }

    /// True when every stored `u` exponent is even, i.e. the series lives in
    /// integral powers of `q`.
    pub fn is_integral_in_q(&self) -> bool {
        self.coeffs.keys().all(|&(_, u)| u % 2 == 0)
    }

    fn combine(&self, rhs: &Self, sign: bool) -> Self {
        let a_order = self.a_order.min(rhs.a_order);
        let u_order = self.u_order.min(rhs.u_order);
        let mut s = self.truncate(a_order, u_order);
        for (&(a, u), c) in &rhs.coeffs {
            s.add_term(a, u, if sign { c.clone() } else { -c });
        }
        s
    }

    pub fn mul_series(&self, rhs: &Self) -> Self {
        let a_order = self.a_order.min(rhs.a_order);
        let va = self.u_valuation().unwrap_or(0).min(0);
        let vb = rhs.u_valuation().unwrap_or(0).min(0);
        let u_order = (self.u_order.saturating_add(vb)).min(rhs.u_order.saturating_add(va));
        let mut out: BTreeMap<(u32, i64), BigRational> = BTreeMap::new();
        for (&(a1, u1), c1) in &self.coeffs {
            if a1 > a_order {
                continue;
            }
            for (&(a2, u2), c2) in &rhs.coeffs {
                let (a, u) = (a1 + a2, u1 + u2);
                if a > a_order || u > u_order {
                    continue;
                }
                *out.entry((a, u)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        out.retain(|_, v| !v.is_zero());
        TruncSeries { a_order, u_order, coeffs: out }
    }

    /// Leading monomial `c u^v` of the `a⁰` part.
    fn a0_lead(&self) -> Option<(i64, BigRational)> {
        self.coeffs
            .iter()
            .find(|(&(a, _), _)| a == 0)
            .map(|(&(_, u), c)| (u, c.clone()))
    }

    /// Multiplicative inverse. Requires the `a⁰` part to be nonzero; its
    /// leading monomial may carry any power of `u`.
    pub fn inverse(&self) -> Result<Self> {
        let (v, c) = self.a0_lead().ok_or(Error::NotInvertible)?;
        if self.coeffs.len() == 1 {
            let order = if self.u_order >= EXACT / 2 { EXACT } else { self.u_order - 2 * v };
            return Ok(Self::monomial(BigRational::one() / c, 0, -v, self.a_order, order));
        }
        if self.u_order >= EXACT / 2 && self.coeffs.len() > 1 {
            return Err(Error::Domain("inverse of an untruncated polynomial".into()));
        }
        let cinv = BigRational::one() / &c;
        let normalized = self.scale(&cinv).shift_u(-v);
        if self.coeffs.keys().all(|&(a, _)| a == 0) {
            return Ok(normalized.inverse_unit_univariate().shift_u(-v).scale(&cinv));
        }
        // s = c u^v (1 + r), 1/s = c⁻¹ u^{−v} Σ (−r)^k
        let mut r = normalized.clone();
        r.add_term(0, 0, -BigRational::one());
        let minus_r = -&r;
        let mut acc = Self::one(r.a_order, r.u_order);
        let mut term = acc.clone();
        loop {
            term = term.mul_series(&minus_r);
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc.shift_u(-v).scale(&cinv))
    }

    /// 1/s for univariate `s` with `s = 1 + O(u)`.
    fn inverse_unit_univariate(&self) -> Self {
        let n = self.u_order;
        let mut inv: Vec<BigRational> = Vec::with_capacity(n.max(0) as usize + 1);
        let s: Vec<(i64, &BigRational)> =
            self.coeffs.iter().filter(|(&(_, u), _)| u > 0).map(|(&(_, u), c)| (u, c)).collect();
        for m in 0..=n.max(-1) {
            if m == 0 {
                inv.push(BigRational::one());
                continue;
            }
            let mut acc = BigRational::zero();
            for &(k, c) in &s {
                if k > m {
                    break;
                }
                let g = &inv[(m - k) as usize];
                if !g.is_zero() {
                    acc -= c * g;
                }
            }
            inv.push(acc);
        }
        let mut out = Self::zero(self.a_order, n);
        for (m, c) in inv.into_iter().enumerate() {
            out.add_term(0, m as i64, c);
        }
        out
    }

    fn check_nonnegative(&self, what: &str) -> Result<()> {
        if self.u_order >= EXACT / 2 {
            return Err(Error::LogExpDomain(format!("{what} of an untruncated series")));
        }
        if self.u_valuation().is_some_and(|v| v < 0) {
            return Err(Error::LogExpDomain(format!("{what} needs non-negative u exponents")));
        }
        Ok(())
    }

    /// Degree operator a∂_a + u∂_u.
    fn euler(&self) -> Self {
        let mut s = Self::zero(self.a_order, self.u_order);
        for (&(a, u), c) in &self.coeffs {
            s.add_term(a, u, c * rat(a as i64 + u));
        }
        s
    }

    fn euler_inverse(&self) -> Self {
        let mut s = Self::zero(self.a_order, self.u_order);
        for (&(a, u), c) in &self.coeffs {
            s.add_term(a, u, c / rat(a as i64 + u));
        }
        s
    }

    /// Formal logarithm of a series with constant term 1, via
    /// θ ln s = θs / s for the total-degree operator θ.
    pub fn log(&self) -> Result<Self> {
        self.check_nonnegative("log")?;
        if self.coeff(0, 0) != BigRational::one() {
            return Err(Error::LogExpDomain("log needs constant term 1".into()));
        }
        Ok(self.euler().mul_series(&self.inverse()?).euler_inverse())
    }

    /// Formal exponential of a series with zero constant term, by the graded
    /// recurrence n·E_n = Σ_k (θf)_k E_{n−k}.
    pub fn exp(&self) -> Result<Self> {
        self.check_nonnegative("exp")?;
        if !self.coeff(0, 0).is_zero() {
            return Err(Error::LogExpDomain("exp needs constant term 0".into()));
        }
        let w_max = self.a_order as i64 + self.u_order;
        let mut tf: Vec<Vec<((u32, i64), BigRational)>> = vec![Vec::new(); w_max as usize + 1];
        for (&(a, u), c) in &self.coeffs {
            let w = a as i64 + u;
            tf[w as usize].push(((a, u), c * rat(w)));
        }
        let mut e: Vec<BTreeMap<(u32, i64), BigRational>> = vec![BTreeMap::new(); w_max as usize + 1];
        e[0].insert((0, 0), BigRational::one());
        for w in 1..=w_max as usize {
            let mut piece: BTreeMap<(u32, i64), BigRational> = BTreeMap::new();
            for k in 1..=w {
                for ((a1, u1), c1) in &tf[k] {
                    for (&(a2, u2), c2) in &e[w - k] {
                        let (a, u) = (a1 + a2, u1 + u2);
                        if a > self.a_order || u > self.u_order {
                            continue;
                        }
                        *piece.entry((a, u)).or_insert_with(BigRational::zero) += c1 * c2;
                    }
                }
            }
            let wq = rat(w as i64);
            piece.retain(|_, v| !v.is_zero());
            for v in piece.values_mut() {
                *v /= &wq;
            }
            e[w] = piece;
        }
        let mut out = Self::zero(self.a_order, self.u_order);
        for piece in e {
            for ((a, u), c) in piece {
                out.add_term(a, u, c);
            }
        }
        Ok(out)
    }

    /// Integer power by repeated squaring; negative powers invert first.
    pub fn int_pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(self.a_order, self.u_order);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_series(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul_series(&sq);
            }
        }
        Ok(acc)
    }

    /// Numeric value at `u = q^{1/2}` and `a`, summing the retained terms.
    pub fn eval(&self, a: Complex64, u: Complex64) -> Complex64 {
        self.coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, (&(i, j), c)| {
            acc + rational_to_f64(c) * a.powi(i as i32) * u.powi(j as i32)
        })
    }

    /// Records `{a_exp, q_exp, numerator, denominator}` sorted by `(a, q)`.
    /// `q_exp` is in halves; numerators and denominators that overflow `i64`
    /// are emitted as decimal strings.
    pub fn to_json(&self) -> Value {
        let recs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&(a, u), c)| {
                let q_exp = if u % 2 == 0 { json!(u / 2) } else { json!(u as f64 / 2.0) };
                json!({
                    "a_exp": a,
                    "q_exp": q_exp,
                    "numerator": big_json(c.numer()),
                    "denominator": big_json(c.denom()),
                })
            })
            .collect();
        Value::Array(recs)
    }

    /// Largest absolute coefficient difference against `other` over the
    /// common known range (zero means exact agreement).
    pub fn max_abs_diff(&self, other: &Self) -> BigRational {
        let a_order = self.a_order.min(other.a_order);
        let u_order = self.u_order.min(other.u_order);
        let d = &self.truncate(a_order, u_order) - &other.truncate(a_order, u_order);
        d.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

fn big_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[a≤{}, u≤{}](", self.a_order, self.u_order)?;
        for (i, ((a, u), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})a^{a}u^{u}")?;
        }
        write!(f, ")")
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, true)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, false)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(&-BigRational::one())
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: TruncSeries) -> TruncSeries {
        &self + &rhs
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: TruncSeries) -> TruncSeries {
        &self - &rhs
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        &self * &rhs
    }
}

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        -&self
    }
}
