//! Schur functions at eventually-geometric specializations, at finitely many
//! complex values, and Littlewood–Richardson coefficients.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Zero};

use crate::partitions::{partitions_of, Partition};
use crate::series::TruncSeries;

/// A sequence `c_1 u^{e_1}, …, c_p u^{e_p}` followed by the unit geometric
/// tail `u^{s}, u^{s+t}, u^{s+2t}, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecSequence {
    pub prefix: Vec<(BigRational, i64)>,
    pub tail_start: i64,
    pub tail_step: i64,
}

impl SpecSequence {
    pub fn geometric(tail_start: i64, tail_step: i64) -> Self {
        assert!(tail_start >= 0 && tail_step >= 1, "tail must decay");
        SpecSequence { prefix: Vec::new(), tail_start, tail_step }
    }

    /// `q^{−ν−ρ} = (q^{i − 1/2 − ν_i})_{i≥1}`.
    pub fn shifted_rho_inverse(nu: &Partition) -> Self {
        let l = nu.len() as i64;
        let prefix = (1..=l)
            .map(|i| (BigRational::one(), 2 * i - 1 - 2 * nu.part(i as usize) as i64))
            .collect();
        SpecSequence { prefix, tail_start: 2 * l + 1, tail_step: 2 }
    }

    /// `q^{−ρ} = (q^{1/2}, q^{3/2}, …)`.
    pub fn rho_inverse() -> Self {
        Self::geometric(1, 2)
    }

    fn negative_mass(&self) -> i64 {
        self.prefix.iter().map(|&(_, e)| e.min(0)).sum()
    }
}

/// `e_0, …, e_{n_max}` of the sequence, each exact through `u^{u_order}`.
pub fn esym_all(n_max: usize, seq: &SpecSequence, u_order: i64) -> Vec<TruncSeries> {
    // prefix product Π (1 + c u^e t), as polynomials in u for each t-degree
    let mut pre: Vec<HashMap<i64, BigRational>> = vec![HashMap::from([(0, BigRational::one())])];
    for (c, e) in &seq.prefix {
        let mut next = pre.clone();
        next.push(HashMap::new());
        for (k, poly) in pre.iter().enumerate() {
            for (u, v) in poly {
                *next[k + 1].entry(u + e).or_insert_with(BigRational::zero) += v * c;
            }
        }
        pre = next;
    }
    let big = u_order - seq.negative_mass();
    let (s, t) = (seq.tail_start, seq.tail_step);
    // tail e_m = u^{ms + t m(m−1)/2} Π_{j≤m} (1 − u^{tj})^{−1}
    let mut tails: Vec<(i64, Vec<BigInt>)> = Vec::with_capacity(n_max + 1);
    let mut dp = vec![BigInt::zero(); big.max(0) as usize + 1];
    if !dp.is_empty() {
        dp[0] = BigInt::one();
    }
    for m in 0..=n_max as i64 {
        if m > 0 {
            let step = (t * m) as usize;
            for e in step..dp.len() {
                let prev = dp[e - step].clone();
                dp[e] += prev;
            }
        }
        tails.push((m * s + t * m * (m - 1) / 2, dp.clone()));
    }
    (0..=n_max)
        .map(|n| {
            let mut out = TruncSeries::zero(0, u_order);
            for (k, poly) in pre.iter().enumerate().take(n + 1) {
                let (off, dense) = &tails[n - k];
                for (&pu, pc) in poly {
                    for (j, c) in dense.iter().enumerate() {
                        let u = pu + off + j as i64;
                        if u > u_order {
                            break;
                        }
                        if !c.is_zero() {
                            out.add_term(0, u, pc * BigRational::from_integer(c.clone()));
                        }
                    }
                }
            }
            out
        })
        .collect()
}

pub fn esym_spec(n: usize, seq: &SpecSequence, q_order: i64) -> TruncSeries {
    esym_all(n, seq, 2 * q_order).pop().expect("non-empty")
}

/// Numeric `e_0, …, e_{n_max}` at `u = q^{1/2}`, `|u| < 1`.
pub fn esym_all_value(n_max: usize, seq: &SpecSequence, u: Complex64) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut pre = vec![zero; seq.prefix.len() + 1];
    pre[0] = Complex64::new(1.0, 0.0);
    for (k, (c, e)) in seq.prefix.iter().enumerate() {
        let x = crate::stirling::rational_to_f64(c) * u.powi(*e as i32);
        for j in (1..=k + 1).rev() {
            let prev = pre[j - 1];
            pre[j] += x * prev;
        }
    }
    let (s, t) = (seq.tail_start as i32, seq.tail_step as i32);
    let mut tails = Vec::with_capacity(n_max + 1);
    let mut den = Complex64::new(1.0, 0.0);
    for m in 0..=n_max as i32 {
        if m > 0 {
            den *= Complex64::new(1.0, 0.0) - u.powi(t * m);
        }
        tails.push(u.powi(m * s + t * m * (m - 1) / 2) / den);
    }
    (0..=n_max)
        .map(|n| (0..=n.min(pre.len() - 1)).fold(zero, |acc, k| acc + pre[k] * tails[n - k]))
        .collect()
}

/// Jacobi–Trudi indices `λ'_i − i + j` for the `λ₁ × λ₁` matrix.
fn jt_index(lambda: &Partition, i: usize, j: usize) -> i64 {
    let conj = lambda.conjugate();
    conj.part(i + 1) as i64 - i as i64 + j as i64
}

fn jt_max(lambda: &Partition) -> usize {
    (lambda.len() + lambda.first() as usize).saturating_sub(1)
}

/// Determinant by Laplace expansion over column subsets, row by row.
fn series_det(entry: impl Fn(usize, usize) -> Option<TruncSeries>, n: usize, u_order: i64) -> TruncSeries {
    let mut table: HashMap<u32, TruncSeries> = HashMap::new();
    table.insert(0, TruncSeries::one(0, u_order));
    for row in 0..n {
        let mut next: HashMap<u32, TruncSeries> = HashMap::new();
        let mut masks: Vec<_> = table.keys().copied().collect();
        masks.sort_unstable();
        for mask in masks {
            let acc = &table[&mask];
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let Some(e) = entry(row, col) else { continue };
                // sign of placing `col` after the columns already used
                let above = (mask >> col).count_ones();
                let term = acc.mul_series(&e);
                let term = if above % 2 == 1 { -term } else { term };
                let slot = next.entry(mask | (1 << col)).or_insert_with(|| TruncSeries::zero(0, u_order));
                *slot = &*slot + &term;
            }
        }
        table = next;
    }
    table.remove(&((1u32 << n) - 1)).unwrap_or_else(|| TruncSeries::zero(0, u_order))
}

fn schur_from_esym(lambda: &Partition, e: &[TruncSeries], u_order: i64) -> TruncSeries {
    let n = lambda.first() as usize;
    series_det(
        |i, j| {
            let k = jt_index(lambda, i, j);
            (k >= 0).then(|| e[k as usize].clone())
        },
        n,
        u_order,
    )
}

/// `s_λ(seq)` exact through `u^{u_order}`.
pub fn schur_spec_u(lambda: &Partition, seq: &SpecSequence, u_order: i64) -> TruncSeries {
    let mut slack = 0;
    loop {
        let target = u_order + slack;
        let e = esym_all(jt_max(lambda), seq, target);
        let s = schur_from_esym(lambda, &e, target);
        if s.u_order() >= u_order {
            return s.truncate(0, u_order);
        }
        slack += u_order - s.u_order();
    }
}

pub fn schur_spec(lambda: &Partition, seq: &SpecSequence, q_order: i64) -> TruncSeries {
    schur_spec_u(lambda, seq, 2 * q_order)
}

/// Complex LU with partial pivoting.
pub fn complex_det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm()))
            .expect("non-empty");
        if m[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let (top, rest) = m.split_at_mut(r);
            for (dst, v) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                *dst -= f * v;
            }
        }
    }
    det
}

fn schur_from_esym_value(lambda: &Partition, e: &[Complex64]) -> Complex64 {
    let n = lambda.first() as usize;
    let get = |k: i64| {
        if k < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            e.get(k as usize).copied().unwrap_or_default()
        }
    };
    let m = (0..n).map(|i| (0..n).map(|j| get(jt_index(lambda, i, j))).collect()).collect();
    complex_det(m)
}

/// `s_λ(seq)` at `u = q^{1/2}`.
pub fn schur_spec_value(lambda: &Partition, seq: &SpecSequence, u: Complex64) -> Complex64 {
    schur_from_esym_value(lambda, &esym_all_value(jt_max(lambda), seq, u))
}

/// Elementary symmetric polynomials `e_0, …, e_m` of finitely many values.
pub fn esym_finite(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); values.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (k, &x) in values.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = e[j - 1];
            e[j] += x * prev;
        }
    }
    e
}

pub fn schur_finite(lambda: &Partition, values: &[Complex64]) -> Complex64 {
    if lambda.len() > values.len() {
        return Complex64::new(0.0, 0.0);
    }
    schur_from_esym_value(lambda, &esym_finite(values))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LRKey {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

type Memo<K, V> = OnceLock<Mutex<HashMap<K, V>>>;

fn memo_get<K: std::hash::Hash + Eq + Clone, V: Clone>(
    m: &'static Memo<K, V>,
    key: &K,
    f: impl FnOnce() -> V,
) -> V {
    let table = m.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = table.lock().expect("memo poisoned").get(key) {
        return v.clone();
    }
    let v = f();
    table.lock().expect("memo poisoned").entry(key.clone()).or_insert(v).clone()
}

/// Kostka number: semistandard tableaux of shape λ with content `content`.
pub fn kostka(lambda: &Partition, content: &[u32]) -> u64 {
    let mut c: Vec<u32> = content.iter().copied().filter(|&x| x > 0).collect();
    c.sort_unstable_by(|a, b| b.cmp(a));
    if c.iter().sum::<u32>() != lambda.size() {
        return 0;
    }
    kostka_sorted(lambda, &c)
}

fn kostka_sorted(lambda: &Partition, content: &[u32]) -> u64 {
    static MEMO: Memo<(Partition, Vec<u32>), u64> = OnceLock::new();
    if content.is_empty() {
        return u64::from(lambda.is_empty());
    }
    if lambda.len() > content.len() {
        return 0;
    }
    memo_get(&MEMO, &(lambda.clone(), content.to_vec()), || {
        // remove the largest letter, which fills a horizontal strip
        let (&last, rest) = content.split_last().expect("non-empty");
        horizontal_strips(lambda, last).iter().map(|mu| kostka_sorted(mu, rest)).sum()
    })
}

/// All μ ⊂ λ with λ/μ a horizontal strip of `size` boxes.
fn horizontal_strips(lambda: &Partition, size: u32) -> Vec<Partition> {
    let parts = lambda.parts();
    let mut out = Vec::new();
    fn rec(i: usize, left: u32, parts: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("strip removal keeps a partition"));
            }
            return;
        }
        let next = parts.get(i + 1).copied().unwrap_or(0);
        for take in 0..=left.min(parts[i] - next) {
            cur.push(parts[i] - take);
            rec(i + 1, left - take, parts, cur, out);
            cur.pop();
        }
    }
    rec(0, size, parts, &mut Vec::new(), &mut out);
    out
}

/// Coefficient of `x^κ` in `s_μ s_ν`.
fn product_monomial(mu: &Partition, nu: &Partition, kappa: &Partition) -> u64 {
    let k = kappa.parts();
    let mut total = 0;
    let mut a = vec![0u32; k.len()];
    fn rec(i: usize, left: u32, k: &[u32], a: &mut Vec<u32>, mu: &Partition, nu: &Partition, total: &mut u64) {
        if i == k.len() {
            if left == 0 {
                let b: Vec<u32> = k.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                let ka = kostka(mu, a);
                if ka > 0 {
                    *total += ka * kostka(nu, &b);
                }
            }
            return;
        }
        for v in 0..=left.min(k[i]) {
            a[i] = v;
            rec(i + 1, left - v, k, a, mu, nu, total);
        }
        a[i] = 0;
    }
    rec(0, mu.size(), k, &mut a, mu, nu, &mut total);
    total
}

/// `s_μ s_ν = Σ c^λ_{μν} s_λ`, peeling leading monomials in lex order.
pub fn lr_expand(mu: &Partition, nu: &Partition) -> Vec<(Partition, u64)> {
    static MEMO: Memo<(Partition, Partition), Vec<(Partition, u64)>> = OnceLock::new();
    let key = if mu <= nu { (mu.clone(), nu.clone()) } else { (nu.clone(), mu.clone()) };
    memo_get(&MEMO, &key, || {
        let n = mu.size() + nu.size();
        let max_first = mu.first() + nu.first();
        let max_len = mu.len() + nu.len();
        let shapes: Vec<Partition> = partitions_of(n)
            .into_iter()
            .filter(|p| p.first() <= max_first && p.len() <= max_len)
            .collect();
        let mut rem: Vec<i128> = shapes.iter().map(|p| product_monomial(mu, nu, p) as i128).collect();
        let mut out = Vec::new();
        for i in 0..shapes.len() {
            let c = rem[i];
            assert!(c >= 0, "negative Littlewood–Richardson coefficient");
            if c == 0 {
                continue;
            }
            for j in i..shapes.len() {
                rem[j] -= c * kostka(&shapes[i], shapes[j].parts()) as i128;
            }
            out.push((shapes[i].clone(), c as u64));
        }
        assert!(rem.iter().all(|&r| r == 0), "monomial remainder did not vanish");
        out
    })
}

pub fn lr_coeff(key: &LRKey) -> u64 {
    if key.lambda.size() != key.mu.size() + key.nu.size() {
        return 0;
    }
    lr_expand(&key.mu, &key.nu)
        .into_iter()
        .find(|(p, _)| *p == key.lambda)
        .map_or(0, |(_, c)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn geom_inv(k: i64, q_order: i64) -> TruncSeries {
        // 1/(1 − q^k)
        let mut s = TruncSeries::zero(0, 2 * q_order);
        let mut e = 0;
        while e <= q_order {
            s.add_term(0, 2 * e, rat(1));
            e += k;
        }
        s
    }

    #[test]
    fn esym_examples() {
        let seq = SpecSequence::rho_inverse();
        assert_eq!(esym_spec(0, &seq, 10), TruncSeries::one(0, 20));
        let e1 = esym_spec(1, &seq, 10);
        assert_eq!(e1, geom_inv(1, 10).shift_u(1).truncate(0, 20));
        let e2 = esym_spec(2, &seq, 10);
        let expect = (geom_inv(1, 10) * geom_inv(2, 10)).shift_u(4).truncate(0, 20);
        assert_eq!(e2, expect);
    }

    #[test]
    fn esym_with_negative_prefix() {
        // q^{−(2)−ρ} = (q^{−3/2}, q^{3/2}, q^{5/2}, …)
        let seq = SpecSequence::shifted_rho_inverse(&p(&[2]));
        let e1 = esym_spec(1, &seq, 8);
        let mut expect = geom_inv(1, 9).shift_u(3).truncate(0, 16);
        expect.add_term(0, -3, rat(1));
        assert_eq!(e1, expect);
    }

    #[test]
    fn jacobi_trudi_shapes() {
        let seq = SpecSequence::rho_inverse();
        let e = esym_all(4, &seq, 20);
        assert_eq!(schur_spec(&p(&[1]), &seq, 10), e[1]);
        let s21 = schur_spec(&p(&[2, 1]), &seq, 10);
        assert_eq!(s21, (&e[1] * &e[2] - &e[0] * &e[3]).truncate(0, 20));
        assert_eq!(schur_spec(&Partition::empty(), &seq, 10), TruncSeries::one(0, 20));
    }

    #[test]
    fn finite_examples() {
        let x = Complex64::new(0.3, 0.7);
        let y = Complex64::new(-1.1, 0.2);
        let s2 = schur_finite(&p(&[2]), &[x, y]);
        assert!((s2 - (x * x + x * y + y * y)).norm() < 1e-14);
        let q = Complex64::new(0.2, 0.5);
        let h = q.sqrt();
        assert!((schur_finite(&p(&[1]), &[h, 1.0 / h]) - (h + 1.0 / h)).norm() < 1e-14);
        assert_eq!(schur_finite(&Partition::empty(), &[x]), Complex64::new(1.0, 0.0));
        assert_eq!(schur_finite(&p(&[1, 1]), &[x]), Complex64::new(0.0, 0.0));
        let vals = [x, y, q];
        let scaled: Vec<_> = vals.iter().map(|v| v * 2.0).collect();
        let lam = p(&[2, 1]);
        assert!((schur_finite(&lam, &scaled) - 8.0 * schur_finite(&lam, &vals)).norm() < 1e-12);
    }

    #[test]
    fn numeric_matches_series() {
        let u = Complex64::new(0.3, 0.1);
        let lam = p(&[2, 1]);
        let seq = SpecSequence::shifted_rho_inverse(&p(&[3, 1]));
        let s = schur_spec_u(&lam, &seq, 80);
        let v = schur_spec_value(&lam, &seq, u);
        let w = s.eval(Complex64::new(0.0, 0.0), u);
        assert!((w - v).norm() < 1e-12 * v.norm(), "{w} {v}");
    }

    #[test]
    fn lr_examples() {
        let key = |l: &[u32], m: &[u32], n: &[u32]| LRKey { lambda: p(l), mu: p(m), nu: p(n) };
        assert_eq!(lr_coeff(&key(&[3], &[2], &[1])), 1);
        assert_eq!(lr_coeff(&key(&[2, 2], &[2], &[1])), 0);
        assert_eq!(lr_coeff(&key(&[3, 2, 1], &[2, 1], &[2, 1])), 2);
        for lam in crate::partitions::enumerate_partitions(5) {
            assert_eq!(lr_coeff(&LRKey { lambda: lam.clone(), mu: lam.clone(), nu: Partition::empty() }), 1);
        }
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[3, 2]), &[2, 2, 1]), 2);
        assert_eq!(kostka(&p(&[2, 1]), &[3]), 0);
    }
}
