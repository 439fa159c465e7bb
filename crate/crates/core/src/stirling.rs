//! Stirling polynomials `binom(z, n) = z(z−1)⋯(z−n+1)/n!`, Stirling numbers of
//! the first kind, and the binomial-sum identity behind the single-product
//! form of the multigammas.

use std::ops::{Div, Mul, Sub};
use std::sync::OnceLock;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};

/// Numeric kinds admitting the falling-factorial product.
pub trait StirlingArg: Clone + Mul<Output = Self> + Sub<Output = Self> + Div<Output = Self> {
    fn from_u64(n: u64) -> Self;
}

impl StirlingArg for BigRational {
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl StirlingArg for Complex64 {
    fn from_u64(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

impl StirlingArg for f64 {
    fn from_u64(n: u64) -> Self {
        n as f64
    }
}

/// `binom(z, n)`; exact for rational `z`.
pub fn stirling_poly<T: StirlingArg>(z: &T, n: u32) -> T {
    let mut acc = T::from_u64(1);
    for i in 0..n as u64 {
        acc = acc * (z.clone() - T::from_u64(i)) / T::from_u64(i + 1);
    }
    acc
}

/// Integer-argument Stirling polynomial, valid for negative `z` as well.
pub fn stirling_int(z: i64, n: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n as i64 {
        num *= z - i;
        den *= i + 1;
    }
    num / den
}

const CACHE_N: usize = 64;

fn first_kind_table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // z(z−1)⋯(z−n) = (z−n)·[z(z−1)⋯(z−n+1)]
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 0..CACHE_N {
            let prev = &rows[n];
            let mut next = vec![BigInt::zero(); n + 2];
            for (k, c) in prev.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigInt::from(n);
            }
            rows.push(next);
        }
        rows
    })
}

/// s(n, k): coefficient of `z^k` in `z(z−1)⋯(z−n+1)`; zero outside `0 ≤ k ≤ n`.
pub fn stirling_first_kind(n: u32, k: i64) -> BigInt {
    if k < 0 || k > n as i64 {
        return BigInt::zero();
    }
    let k = k as usize;
    if (n as usize) <= CACHE_N {
        return first_kind_table()[n as usize][k].clone();
    }
    let mut row = first_kind_table()[CACHE_N].clone();
    for m in CACHE_N..n as usize {
        let mut next = vec![BigInt::zero(); m + 2];
        for (j, c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(m);
        }
        row = next;
    }
    row[k].clone()
}

/// Number of d-tuples of non-negative integers summing to `n`, i.e. binom(d+n−1, n).
pub fn composition_count(d: u32, n: u32) -> BigInt {
    stirling_int(d as i64 + n as i64 - 1, n)
}

/// Σ_{i=0}^{d} (−1)^{i+1} binom(n+i−1, n) binom(z, d−i).
pub fn stirbin_sum(n: u32, d: u32, z: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..=d {
        let c = BigRational::from_integer(stirling_int(n as i64 + i as i64 - 1, n));
        let term = c * stirling_poly(z, d - i);
        if i % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The closed form of [`stirbin_sum`]: binom(z−n−1, d−1) for n ≥ 1 and
/// binom(z−1, d−1) − binom(z, d) for n = 0.
pub fn stirbin_closed(n: u32, d: u32, z: &BigRational) -> BigRational {
    let one = BigRational::one();
    if n >= 1 {
        let shifted = z - BigRational::from_integer(BigInt::from(n)) - one;
        stirling_poly(&shifted, d - 1)
    } else {
        stirling_poly(&(z - one), d - 1) - stirling_poly(z, d)
    }
}

/// Converts an exact exponent to `f64` at the last moment.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            let shift = (d.bits() as i64).max(n.bits() as i64) - 60;
            let s = BigInt::one() << shift.max(0) as usize;
            (n / &s).to_f64().unwrap_or(f64::NAN) / (d / &s).to_f64().unwrap_or(f64::NAN)
        }
    }
}
