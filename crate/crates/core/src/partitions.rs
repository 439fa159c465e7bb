//! Partitions, their enumeration, and the sl_N / gl_N coordinates used at
//! roots of unity.

use std::fmt;

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the trivial partition; zeros are never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Domain(format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, or the empty one for `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` with 1-based `i`, zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> u32 {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let parts = (1..=cols)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Σ λ_i(λ_i − 2i + 1).
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                p * (p - 2 * (i as i64 + 1) + 1)
            })
            .sum()
    }

    /// Young diagram containment.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of exactly `n` with at most `max_len` parts and first part at
/// most `max_part`, in decreasing lexicographic order.
pub fn partitions_of_bounded(n: u32, max_part: u32, max_len: usize) -> Vec<Partition> {
    fn rec(rem: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, decreasing lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    partitions_of_bounded(n, n, n as usize)
}

/// Every partition of size at most `max_size`, ordered by size and then
/// decreasing lexicographically: `(), (1), (2), (1,1), (3), …`.
pub fn enumerate_partitions(max_size: u32) -> impl Iterator<Item = Partition> {
    (0..=max_size).flat_map(partitions_of)
}

/// The `(N−1) × k` rectangle of sl_N level-k weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RectangleIndex {
    pub n: u32,
    pub k: u32,
}

impl RectangleIndex {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n < 2 || k < 1 {
            return Err(Error::Domain(format!("rectangle needs N ≥ 2, k ≥ 1, got N={n}, k={k}")));
        }
        Ok(RectangleIndex { n, k })
    }
}

/// Partitions with length ≤ N−1 and first part ≤ k, in (size, lex) order.
pub fn rectangle_partitions(idx: RectangleIndex) -> Vec<Partition> {
    let rows = (idx.n - 1) as usize;
    (0..=idx.k * (idx.n - 1))
        .flat_map(|s| partitions_of_bounded(s, idx.k, rows))
        .collect()
}

fn check_len(lambda: &Partition, n: u32) -> Result<()> {
    if lambda.len() >= n as usize {
        return Err(Error::Domain(format!("{lambda} has length ≥ N = {n}")));
    }
    Ok(())
}

/// μ*_i = μ_1 − μ_{N−i+1}; an involution on the rectangle.
pub fn sl_dual(mu: &Partition, n: u32) -> Result<Partition> {
    check_len(mu, n)?;
    let n = n as usize;
    let parts = (1..n).map(|i| mu.first() - mu.part(n - i + 1)).collect();
    Partition::new(parts)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// λ^N_i = λ_i − |λ|/N for i = 1..N.
pub fn gl_coords(lambda: &Partition, n: u32) -> Result<Vec<BigRational>> {
    check_len(lambda, n)?;
    let shift = BigRational::new(BigInt::from(lambda.size()), BigInt::from(n));
    Ok((1..=n as usize).map(|i| rat(lambda.part(i) as i64) - &shift).collect())
}

/// ρ^N_i = (N − 2i + 1)/2.
pub fn weyl_vector(n: u32) -> Vec<BigRational> {
    (1..=n as i64)
        .map(|i| BigRational::new(BigInt::from(n as i64 - 2 * i + 1), BigInt::from(2)))
        .collect()
}

/// C₂(λ^N) = κ(λ) + N|λ| − |λ|²/N.
pub fn casimir_c2(lambda: &Partition, n: u32) -> Result<BigRational> {
    check_len(lambda, n)?;
    let s = lambda.size() as i64;
    Ok(rat(lambda.kappa() + n as i64 * s) - BigRational::new(BigInt::from(s * s), BigInt::from(n)))
}

/// λ^N · (λ^N + 2ρ^N), the dot-product form of the Casimir.
pub fn casimir_dot(lambda: &Partition, n: u32) -> Result<BigRational> {
    let l = gl_coords(lambda, n)?;
    let rho = weyl_vector(n);
    let two = rat(2);
    Ok(l.iter()
        .zip(&rho)
        .fold(BigRational::zero(), |acc, (x, r)| acc + x * (x + &two * r)))
}

/// Binomial coefficient C(n, k) as a `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
