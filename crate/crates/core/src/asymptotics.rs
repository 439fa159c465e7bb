//! Bernoulli numbers, zeta values, and the small-`x` expansion
//! `ln M(e^{−x}) ~ ζ(3)/x² + (ln x)/12 + ζ'(−1) + Σ_{g≥2} r_g x^{2g−2}`.
//!
//! Remainders of the expansion are far below double precision, so the
//! functions that measure them work at 384 bits.

use std::sync::{Mutex, OnceLock};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use nalgebra::{DMatrix, DVector};
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::partitions::binomial;
use crate::qfuncs::macmahon_eval;
use crate::stirling::rational_to_f64;
use crate::{Error, Result};

fn table() -> &'static Mutex<Vec<BigRational>> {
    static T: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// `B_n` from `Σ_{j≤n} C(n+1, j) B_j = 0`, so `B₁ = −1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    let mut t = table().lock().expect("bernoulli table poisoned");
    while t.len() <= n {
        let m = t.len();
        let mut acc = BigRational::zero();
        for (j, b) in t.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(BigInt::from(binomial(m as u64 + 1, j as u64)));
            }
        }
        t.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    t[n].clone()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// `ζ(−k)`.
pub fn zeta_negative(k: u32) -> BigRational {
    if k == 0 {
        return r(-1, 2);
    }
    -bernoulli(k as usize + 1) / r(k as i64 + 1, 1)
}

/// `r_g = (2g−1) B_{2g} B_{2g−2} / ((2g−2)(2g)!)`.
pub fn macas_coefficient(g: u32) -> Result<BigRational> {
    if g < 2 {
        return Err(Error::Domain(format!("regular coefficients start at g = 2, got {g}")));
    }
    let g = g as usize;
    let den = BigRational::from_integer(BigInt::from(2 * g - 2) * factorial(2 * g as u64));
    Ok(r(2 * g as i64 - 1, 1) * bernoulli(2 * g) * bernoulli(2 * g - 2) / den)
}

/// `(−1)^{g−1} r_g χ/2`.
pub fn degree_zero_coeff(g: u32, chi: i64) -> Result<BigRational> {
    if chi % 2 != 0 {
        return Err(Error::Domain(format!("Euler characteristic must be even, got {chi}")));
    }
    let c = macas_coefficient(g)? * r(chi / 2, 1);
    Ok(if g.is_multiple_of(2) { -c } else { c })
}

/// `ζ(n)`, `n ≥ 2`, by twenty terms and an Euler–Maclaurin tail.
pub fn zeta(n: u32) -> f64 {
    assert!(n >= 2, "ζ(n) needs n ≥ 2");
    let big_n = 20.0f64;
    let nf = n as f64;
    let mut s: f64 = (1..20).map(|k| (k as f64).powf(-nf)).sum();
    s += big_n.powf(1.0 - nf) / (nf - 1.0) + 0.5 * big_n.powf(-nf);
    let mut rising = nf;
    for j in 1..=8u32 {
        let b = rational_to_f64(&bernoulli(2 * j as usize));
        let fact = (1..=2 * j).fold(1.0, |a, k| a * k as f64);
        s += b / fact * rising * big_n.powf(-nf - 2.0 * j as f64 + 1.0);
        rising *= (nf + 2.0 * j as f64 - 1.0) * (nf + 2.0 * j as f64);
    }
    s
}

const PREC: usize = 384;
const RM: RoundingMode = RoundingMode::ToEven;

struct Hp {
    cc: Consts,
}

impl Hp {
    fn new() -> Self {
        Hp { cc: Consts::new().expect("constant cache") }
    }

    fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, PREC)
    }

    fn big(&mut self, n: &BigInt) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, PREC, RM, &mut self.cc)
    }

    fn rat(&mut self, q: &BigRational) -> BigFloat {
        self.big(q.numer()).div(&self.big(q.denom()), PREC, RM)
    }

    fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(PREC, RM, &mut self.cc)
    }

    fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(PREC, RM, &mut self.cc)
    }

    fn pi(&mut self) -> BigFloat {
        self.cc.pi(PREC, RM)
    }
}

fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, PREC, RM)
}

fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.sub(b, PREC, RM)
}

fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, PREC, RM)
}

fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, PREC, RM)
}

fn hp_f64(x: &BigFloat) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

fn negligible(term: &BigFloat, sum: &BigFloat) -> bool {
    let bound = mul(sum, &BigFloat::from_f64(2f64.powi(-(PREC as i32) - 8), PREC));
    term.abs_cmp(&bound).is_some_and(|c| c < 0)
}

/// `ζ(3) = (5/2) Σ (−1)^{k+1} / (k³ C(2k,k))`.
fn zeta3_hp(hp: &mut Hp) -> BigFloat {
    let mut sum = hp.int(0);
    let mut central = hp.int(1);
    for k in 1..=(PREC as i64 / 2 + 16) {
        central = div(&mul(&central, &hp.int((2 * k) * (2 * k - 1))), &hp.int(k * k));
        let term = div(&hp.int(1), &mul(&central, &hp.int(k * k * k)));
        sum = if k % 2 == 1 { add(&sum, &term) } else { sub(&sum, &term) };
    }
    div(&mul(&sum, &hp.int(5)), &hp.int(2))
}

/// `ζ'(−1) = 1/12 − ln A`, with the Glaisher constant from Euler–Maclaurin
/// applied to `Σ_{k≤n} k ln k`.
fn zeta_prime_hp(hp: &mut Hp) -> BigFloat {
    let n = 128i64;
    let mut s = hp.int(0);
    for k in 2..=n {
        let kf = hp.int(k);
        s = add(&s, &mul(&kf, &hp.ln(&kf)));
    }
    let nf = hp.int(n);
    let ln_n = hp.ln(&nf);
    let n2 = hp.int(n * n);
    let poly = add(&div(&add(&n2, &nf), &hp.int(2)), &div(&hp.int(1), &hp.int(12)));
    let mut ln_a = add(&sub(&s, &mul(&poly, &ln_n)), &div(&n2, &hp.int(4)));
    for j in 2..=40i64 {
        let b = hp.rat(&bernoulli(2 * j as usize));
        let den = mul(&hp.int((2 * j) * (2 * j - 1) * (2 * j - 2)), &nf.powi((2 * j - 2) as usize, PREC, RM));
        ln_a = add(&ln_a, &div(&b, &den));
    }
    sub(&div(&hp.int(1), &hp.int(12)), &ln_a)
}

struct Constants {
    zeta3: BigFloat,
    zeta_prime: BigFloat,
}

fn constants() -> &'static Constants {
    static C: OnceLock<Constants> = OnceLock::new();
    C.get_or_init(|| {
        let mut hp = Hp::new();
        Constants { zeta3: zeta3_hp(&mut hp), zeta_prime: zeta_prime_hp(&mut hp) }
    })
}

pub fn zeta3_value() -> f64 {
    hp_f64(&constants().zeta3)
}

/// `ζ'(−1)` from the Euler–Maclaurin route.
pub fn zeta_prime_minus_one() -> f64 {
    hp_f64(&constants().zeta_prime)
}

/// `ln M(e^{−x}) = Σ_k e^{−kx} / (k (1 − e^{−kx})²)` at high precision.
fn ln_macmahon_hp(hp: &mut Hp, x: &BigFloat) -> BigFloat {
    let t = hp.exp(&x.neg());
    let one = hp.int(1);
    let mut tk = t.clone();
    let mut sum = hp.int(0);
    let mut k = 1i64;
    loop {
        let d = sub(&one, &tk);
        let term = div(&tk, &mul(&hp.int(k), &mul(&d, &d)));
        sum = add(&sum, &term);
        if negligible(&term, &sum) {
            return sum;
        }
        tk = mul(&tk, &t);
        k += 1;
    }
}

/// Partial sum of the expansion through genus `G`.
pub fn macas_partial(x: f64, g_max: u32, zeta3: f64, zetaprime: f64) -> f64 {
    let mut s = zeta3 / (x * x) + x.ln() / 12.0 + zetaprime;
    for g in 2..=g_max {
        s += rational_to_f64(&macas_coefficient(g).expect("g ≥ 2")) * x.powi(2 * g as i32 - 2);
    }
    s
}

/// `ln M(e^{−x})` minus the genus-`G` partial sum, both at high precision.
pub fn macas_remainder(x: f64, g_max: u32) -> f64 {
    let mut hp = Hp::new();
    let c = constants();
    let xb = BigFloat::from_f64(x, PREC);
    let mut partial = add(&div(&c.zeta3, &mul(&xb, &xb)), &div(&hp.ln(&xb), &hp.int(12)));
    partial = add(&partial, &c.zeta_prime);
    for g in 2..=g_max {
        let rg = hp.rat(&macas_coefficient(g).expect("g ≥ 2"));
        partial = add(&partial, &mul(&rg, &xb.powi(2 * g as usize - 2, PREC, RM)));
    }
    hp_f64(&sub(&ln_macmahon_hp(&mut hp, &xb), &partial))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantFit {
    pub zeta3_est: f64,
    pub log_coeff: f64,
    pub zetaprime_est: f64,
    pub quadratic_coeff: f64,
    pub condition: f64,
    pub warning: Option<String>,
}

/// Least-squares fit of `ln M(e^{−x})` on `{x^{−2}, ln x, 1, x²}`.
pub fn extract_constants(xs: &[f64]) -> Result<ConstantFit> {
    if xs.len() < 4 || xs.iter().any(|&x| !(x > 0.0 && x < 0.5)) {
        return Err(Error::Domain("need at least 4 sample points in (0, 0.5)".into()));
    }
    let rows: Vec<f64> = xs.iter().flat_map(|&x| [x.powi(-2), x.ln(), 1.0, x * x]).collect();
    let a = DMatrix::from_row_slice(xs.len(), 4, &rows);
    let b = DVector::from_iterator(xs.len(), xs.iter().map(|&x| macmahon_eval(x).expect("x > 0")));
    let svd = a.svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    let sol = svd.solve(&b, 0.0).map_err(|e| Error::Domain(e.to_string()))?;
    let warning = (condition > 1e10).then(|| format!("ill-conditioned sample, condition number {condition:.3e}"));
    Ok(ConstantFit {
        zeta3_est: sol[0],
        log_coeff: sol[1],
        zetaprime_est: sol[2],
        quadratic_coeff: sol[3],
        condition,
        warning,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MellinCheck {
    pub s: i64,
    pub quadrature: f64,
    pub closed: f64,
    pub residual: f64,
}

/// `∫₀^∞ x^{s−1} ln M(e^{−x}) dx` against `(s−1)! ζ(s−1) ζ(s+1)`.
pub fn mellin_check(s: i64) -> Result<MellinCheck> {
    if s <= 2 {
        return Err(Error::OutsideConvergenceStrip(s));
    }
    let sf = s as f64;
    let eps = 1e-3f64;
    // (0, ε] from the leading terms of the expansion
    let (z3, zp) = (zeta3_value(), zeta_prime_minus_one());
    let r2 = rational_to_f64(&macas_coefficient(2)?);
    let r3 = rational_to_f64(&macas_coefficient(3)?);
    let head = z3 * eps.powf(sf - 2.0) / (sf - 2.0)
        + (eps.powf(sf) * eps.ln() / sf - eps.powf(sf) / (sf * sf)) / 12.0
        + zp * eps.powf(sf) / sf
        + r2 * eps.powf(sf + 2.0) / (sf + 2.0)
        + r3 * eps.powf(sf + 4.0) / (sf + 4.0);
    let f = |x: f64| x.powf(sf - 1.0) * macmahon_eval(x).expect("x > 0");
    let mid = quadrature::double_exponential::integrate(f, eps, 1.0, 1e-13).integral;
    let tail = quadrature::double_exponential::integrate(f, 1.0, 60.0, 1e-13).integral;
    let quad = head + mid + tail;
    let fact = (1..s).fold(1.0, |a, k| a * k as f64);
    let closed = fact * zeta(s as u32 - 1) * zeta(s as u32 + 1);
    Ok(MellinCheck { s, quadrature: quad, closed, residual: ((quad - closed) / closed).abs() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImaginaryExpansion {
    pub leading: f64,
    pub log_coeff: f64,
    pub constant_re: f64,
    pub constant_im: f64,
    /// `(g, (−1)^{g−1} r_g)` for `2 ≤ g ≤ G`.
    pub regular: Vec<(u32, String)>,
}

/// The expansion along `x ∈ iℝ₊` obtained by `x → −ix`.
pub fn imaginary_direction_coeffs(g_max: u32) -> Result<ImaginaryExpansion> {
    if g_max < 2 {
        return Err(Error::Domain("G must be at least 2".into()));
    }
    let regular = (2..=g_max)
        .map(|g| {
            let c = macas_coefficient(g)?;
            let c = if g.is_multiple_of(2) { -c } else { c };
            Ok((g, c.to_string()))
        })
        .collect::<Result<_>>()?;
    Ok(ImaginaryExpansion {
        leading: -zeta3_value(),
        log_coeff: 1.0 / 12.0,
        constant_re: zeta_prime_minus_one(),
        constant_im: -std::f64::consts::PI / 24.0,
        regular,
    })
}

/// Whether `(2g)!/(π^{2g} 2^{2g−1}) < |B_{2g}| < (2g)!/(π^{2g}(2^{2g−1} − 1))`.
pub fn bernoulli_bounds_hold(g: u32) -> bool {
    let mut hp = Hp::new();
    let b = hp.rat(&bernoulli(2 * g as usize).abs());
    let fact = hp.big(&factorial(2 * g as u64));
    let pi_pow = hp.pi().powi(2 * g as usize, PREC, RM);
    let two_pow = hp.big(&(BigInt::one() << (2 * g as usize - 1)));
    let lower = div(&fact, &mul(&pi_pow, &two_pow));
    let upper = div(&fact, &mul(&pi_pow, &sub(&two_pow, &hp.int(1))));
    lower.cmp(&b).is_some_and(|c| c < 0) && b.cmp(&upper).is_some_and(|c| c < 0)
}
