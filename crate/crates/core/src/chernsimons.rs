//! Rank N, level k Chern–Simons data at `q = e^{2πi/(k+N)}`: quantum
//! dimensions, the quantum diameter, `Z(S³)`, modular S and T matrices, and
//! the comparison with the quantum Barnes function.
//!
//! Rational powers of `q` are taken as `q^r = e^{2πi r/(k+N)}`, so in
//! particular `q^{1/2} = e^{πi/(k+N)}`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, BigRational};
use rayon::prelude::*;
use serde::Serialize;

use crate::multigamma::{gq_nishizawa, gq_terminated, MultigammaQuery, DEFAULT_TOL};
use crate::partitions::{casimir_c2, gl_coords, rectangle_partitions, sl_dual, weyl_vector, Partition, RectangleIndex};
use crate::qfuncs::{qmf_numeric, QPoint};
use crate::schur::schur_finite;
use crate::stirling::rational_to_f64;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CSLevelRank {
    pub n: u32,
    pub k: u32,
}

impl CSLevelRank {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        RectangleIndex::new(n, k)?;
        Ok(CSLevelRank { n, k })
    }

    fn h(&self) -> f64 {
        (self.k + self.n) as f64
    }

    pub fn q(&self) -> Complex64 {
        self.qpow_f64(1.0)
    }

    /// `q^r` for real `r`.
    pub fn qpow_f64(&self, r: f64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * r / self.h())
    }

    pub fn qpow(&self, r: &BigRational) -> Complex64 {
        self.qpow_f64(rational_to_f64(r))
    }

    pub fn central_charge(&self) -> f64 {
        let n = self.n as f64;
        self.k as f64 * (n * n - 1.0) / self.h()
    }

    pub fn charge_factor(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.central_charge() / 24.0)
    }

    /// `T₀₀ = q^{−k(N²−1)/24}`.
    pub fn t00(&self) -> Complex64 {
        let n = self.n as f64;
        self.qpow_f64(-(self.k as f64) * (n * n - 1.0) / 24.0)
    }

    pub fn rectangle(&self) -> Vec<Partition> {
        rectangle_partitions(RectangleIndex { n: self.n, k: self.k })
    }

    fn check(&self, lambda: &Partition) -> Result<()> {
        if lambda.len() >= self.n as usize || lambda.first() > self.k {
            return Err(Error::Domain(format!("{lambda} is outside the {}×{} rectangle", self.n - 1, self.k)));
        }
        Ok(())
    }

    /// `q^{λᴺ+ρᴺ}` as N complex values.
    fn shifted_weyl(&self, lambda: &Partition) -> Result<Vec<Complex64>> {
        let l = gl_coords(lambda, self.n)?;
        Ok(l.iter().zip(weyl_vector(self.n)).map(|(x, r)| self.qpow(&(x + r))).collect())
    }
}

/// `W_{λμ} = s_λ(q^{ρᴺ}) s_μ(q^{λᴺ+ρᴺ})`.
pub fn w_fin(lambda: &Partition, mu: &Partition, ctx: CSLevelRank) -> Result<Complex64> {
    ctx.check(lambda)?;
    ctx.check(mu)?;
    let rho = ctx.shifted_weyl(&Partition::empty())?;
    Ok(schur_finite(lambda, &rho) * schur_finite(mu, &ctx.shifted_weyl(lambda)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiameterMethod {
    Statesum,
    Closed,
}

/// The squared quantum diameter `D²`.
pub fn quantum_diameter(ctx: CSLevelRank, method: DiameterMethod) -> Complex64 {
    match method {
        DiameterMethod::Statesum => ctx
            .rectangle()
            .iter()
            .map(|l| w_fin(l, &Partition::empty(), ctx).expect("rectangle member").powi(2))
            .fold(Complex64::new(0.0, 0.0), |a, b| a + b),
        DiameterMethod::Closed => {
            let n = ctx.n as i32;
            let mut v = Complex64::new(n as f64 * ctx.h().powi(n - 1), 0.0);
            if (n * (n - 1) / 2) % 2 == 1 {
                v = -v;
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    let d = (j - i) as f64 / 2.0;
                    v /= (ctx.qpow_f64(d) - ctx.qpow_f64(-d)).powi(2);
                }
            }
            v
        }
    }
}

/// `D` from `D²`: the positive root when `D²` is real positive, the
/// principal root otherwise. The flag reports which branch was taken.
pub fn diameter_root(d2: Complex64) -> (Complex64, bool) {
    if d2.re > 0.0 && d2.im.abs() <= 1e-12 * d2.re {
        (Complex64::new(d2.re.sqrt(), 0.0), true)
    } else {
        (d2.sqrt(), false)
    }
}

/// `Z(S³) = D^{−1}` from the state sum.
pub fn z_s3(ctx: CSLevelRank) -> Complex64 {
    1.0 / diameter_root(quantum_diameter(ctx, DiameterMethod::Statesum)).0
}

/// `i^{N(N−1)/2} q^{−N(N²−1)/12} (N(k+N)^{N−1})^{−1/2} Π_{i<j} (1 − q^{j−i})`.
pub fn z_s3_factored(ctx: CSLevelRank) -> Complex64 {
    let n = ctx.n as i32;
    let m = n * (n - 1) / 2;
    let mut v = Complex64::i().powi(m) * ctx.qpow_f64(-(n * (n * n - 1)) as f64 / 12.0);
    v /= (n as f64 * ctx.h().powi(n - 1)).sqrt();
    for d in 1..n {
        v *= (Complex64::new(1.0, 0.0) - ctx.q().powi(d)).powi(n - d);
    }
    v
}

#[derive(Clone, Debug)]
pub struct ModularData {
    pub index: Vec<Partition>,
    pub s: DMatrix<Complex64>,
    pub t: DMatrix<Complex64>,
    pub d: Complex64,
    pub s00: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModularResiduals {
    pub st_cubed: f64,
    pub s2_t: f64,
    pub s4: f64,
    pub s_unitary: f64,
    pub t_unitary: f64,
    pub s_symmetric: f64,
}

impl ModularResiduals {
    pub fn max(&self) -> f64 {
        [self.st_cubed, self.s2_t, self.s4, self.s_unitary, self.t_unitary, self.s_symmetric]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn max_entry(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn modular_data(ctx: CSLevelRank) -> ModularData {
    let index = ctx.rectangle();
    let dim = index.len();
    let (d, _) = diameter_root(quantum_diameter(ctx, DiameterMethod::Statesum));
    let s00 = 1.0 / d;
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect();
    let entries: Vec<Complex64> = pairs
        .par_iter()
        .map(|&(i, j)| s00 * w_fin(&index[i], &index[j], ctx).expect("rectangle member"))
        .collect();
    let s = DMatrix::from_row_slice(dim, dim, &entries);
    let mut t = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    let two = BigRational::from_integer(BigInt::from(2));
    for (i, l) in index.iter().enumerate() {
        let dual = sl_dual(l, ctx.n).expect("rectangle member");
        let j = index.iter().position(|p| *p == dual).expect("dual stays in the rectangle");
        let c2 = casimir_c2(l, ctx.n).expect("rectangle member");
        t[(i, j)] = ctx.t00() * ctx.qpow(&(c2 / &two));
    }
    ModularData { index, s, t, d, s00 }
}

impl ModularData {
    pub fn residuals(&self) -> ModularResiduals {
        let (s, t) = (&self.s, &self.t);
        let id = DMatrix::<Complex64>::identity(s.nrows(), s.ncols());
        let s2 = s * s;
        let st = s * t;
        ModularResiduals {
            st_cubed: max_entry(&(&st * &st * &st - &s2)),
            s2_t: max_entry(&(&s2 * t - t * &s2)),
            s4: max_entry(&(&s2 * &s2 - &id)),
            s_unitary: max_entry(&(s * s.adjoint() - &id)),
            t_unitary: max_entry(&(t * t.adjoint() - &id)),
            s_symmetric: max_entry(&(s - s.transpose())),
        }
    }
}

/// The three members `Π_{i<j}(1−q^{j−i})`, `Π_{n<N}(1−qⁿ)^{N−n}` and
/// `(q;q)^N_∞ (q^{N+1};q)^{(2)}_∞ / (q;q)^{(2)}_∞`; the last needs `|q| < 1`.
pub fn lemma_finite_product(n: u32, q: Complex64) -> (Complex64, Complex64, Option<Complex64>) {
    let one = Complex64::new(1.0, 0.0);
    let n = n as i32;
    let mut pairwise = one;
    for i in 1..=n {
        for j in i + 1..=n {
            pairwise *= one - q.powi(j - i);
        }
    }
    let grouped = (1..n).fold(one, |acc, m| acc * (one - q.powi(m)).powi(n - m));
    let infinite = (q.norm() < 1.0).then(|| {
        let q1 = qmf_numeric(1, QPoint::new(q, q), DEFAULT_TOL).ok()?;
        let top = qmf_numeric(2, QPoint::new(q.powi(n + 1), q), DEFAULT_TOL).ok()?;
        let bottom = qmf_numeric(2, QPoint::new(q, q), DEFAULT_TOL).ok()?;
        Some(q1.powi(n) * top / bottom)
    });
    (pairwise, grouped, infinite.flatten())
}

/// `(1−q)^{−N(N−1)/2} Z(S³) − i^{N(N−1)/2} q^{−N(N²−1)/12} N^{−1/2} (k+N)^{−(N−1)/2} G_q(N+1)`,
/// with `G_q(N+1)` from the terminated product at the root of unity.
pub fn comparison_residuals(ctx: CSLevelRank) -> Complex64 {
    let n = ctx.n as i32;
    let m = n * (n - 1) / 2;
    let q = ctx.q();
    let lhs = (Complex64::new(1.0, 0.0) - q).powi(-m) * z_s3(ctx);
    let rhs = Complex64::i().powi(m)
        * ctx.qpow_f64(-(n * (n * n - 1)) as f64 / 12.0)
        * (n as f64).powf(-0.5)
        * ctx.h().powf(-(n - 1) as f64 / 2.0)
        * gq_terminated(2, ctx.n, q);
    lhs - rhs
}

/// `(1−q)^{−z(z−1)/2} Z_X(q^z;q) − (q;q)_∞^{−z} G_q(z+1)` with
/// `Z_X(a;q) = (aq;q)^{(2)}_∞/(q;q)^{(2)}_∞` and `G_q` from the Nishizawa
/// product.
pub fn gw_side_check(z: Complex64, q: Complex64) -> Result<Complex64> {
    let query = MultigammaQuery::new(2, z, q)?;
    let qz = crate::multigamma::qpow(q, z);
    if (qz * q).norm() >= 1.0 {
        return Err(Error::OutsideUnitDisk);
    }
    let one = Complex64::new(1.0, 0.0);
    let zx = qmf_numeric(2, QPoint::new(qz * q, q), DEFAULT_TOL)? / qmf_numeric(2, QPoint::new(q, q), DEFAULT_TOL)?;
    let lhs = (-(z * (z - 1.0) / 2.0) * (one - q).ln()).exp() * zx;
    let qq = qmf_numeric(1, QPoint::new(q, q), DEFAULT_TOL)?;
    let rhs = (-z * qq.ln()).exp() * gq_nishizawa(query, DEFAULT_TOL)?;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn w_fin_examples() {
        let ctx = CSLevelRank::new(2, 1).unwrap();
        let e = Partition::empty();
        assert!((w_fin(&e, &e, ctx).unwrap() - 1.0).norm() < 1e-14);
        assert!((w_fin(&p(&[1]), &p(&[1]), ctx).unwrap() + 1.0).norm() < 1e-14);
        for k in 1..5 {
            let ctx = CSLevelRank::new(2, k).unwrap();
            let expect = 2.0 * (PI / (k as f64 + 2.0)).cos();
            assert!((w_fin(&p(&[1]), &e, ctx).unwrap() - expect).norm() < 1e-14);
        }
        assert!(w_fin(&p(&[2]), &e, ctx).is_err());
    }

    #[test]
    fn diameter_examples() {
        let ctx = CSLevelRank::new(2, 1).unwrap();
        assert!((quantum_diameter(ctx, DiameterMethod::Statesum) - 2.0).norm() < 1e-13);
        assert!((quantum_diameter(ctx, DiameterMethod::Closed) - 2.0).norm() < 1e-13);
        let ctx = CSLevelRank::new(2, 2).unwrap();
        let a = quantum_diameter(ctx, DiameterMethod::Statesum);
        let b = quantum_diameter(ctx, DiameterMethod::Closed);
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn z_s3_examples() {
        let ctx = CSLevelRank::new(2, 1).unwrap();
        assert!((z_s3(ctx) - std::f64::consts::FRAC_1_SQRT_2).norm() < 1e-12);
        for n in 2..=4 {
            for k in 1..=4 {
                let ctx = CSLevelRank::new(n, k).unwrap();
                assert!((z_s3(ctx) - z_s3_factored(ctx)).norm() < 1e-9, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn modular_examples() {
        let ctx = CSLevelRank::new(2, 1).unwrap();
        let md = modular_data(ctx);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect = DMatrix::from_row_slice(2, 2, &[c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)]);
        assert!(max_entry(&(&md.s - expect)) < 1e-12);
        let q = ctx.q();
        let t1 = md.t[(1, 1)] / md.t[(0, 0)];
        assert!((md.t[(0, 0)] - ctx.qpow_f64(-1.0 / 8.0)).norm() < 1e-14);
        assert!((t1 - ctx.qpow_f64(0.75)).norm() < 1e-14 && q.norm() > 0.0);
        let md = modular_data(CSLevelRank::new(3, 2).unwrap());
        assert!(md.residuals().max() < 1e-10);
    }

    #[test]
    fn lemma_examples() {
        let (a, b, cc) = lemma_finite_product(2, c(0.4, 0.0));
        let cc = cc.unwrap();
        assert!((a - 0.6).norm() < 1e-14 && (b - 0.6).norm() < 1e-14 && (cc - 0.6).norm() < 1e-12);
        let (a, b, cc) = lemma_finite_product(1, c(0.3, 0.2));
        assert_eq!((a, b), (c(1.0, 0.0), c(1.0, 0.0)));
        assert!((cc.unwrap() - 1.0).norm() < 1e-12);
        let (a, b, _) = lemma_finite_product(4, c(0.0, 0.0));
        assert_eq!((a, b), (c(1.0, 0.0), c(1.0, 0.0)));
        let (_, _, cc) = lemma_finite_product(3, ctx_q());
        assert!(cc.is_none());
    }

    fn ctx_q() -> Complex64 {
        CSLevelRank::new(2, 3).unwrap().q()
    }

    #[test]
    fn comparison_examples() {
        assert!(comparison_residuals(CSLevelRank::new(2, 1).unwrap()).norm() < 1e-9);
        let q = c(0.3, 0.0);
        let g3 = crate::multigamma::gq_terminated(2, 2, q);
        assert!(gw_side_check(c(2.0, 0.0), q).unwrap().norm() / g3.norm() < 1e-10);
        assert!(gw_side_check(c(0.0, 0.0), q).unwrap().norm() < 1e-12);
    }
}
