//! The topological vertex: one-, two- and three-point functions, amplitudes
//! of labeled toric graphs, state sums, and the resolved conifold.
//!
//! All series are in `u = q^{1/2}` and a single degree variable `a`; an edge
//! with homology `(m_1, …, m_k)` contributes `a^{(m_1+…+m_k)|λ|}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num::{BigRational, Integer, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::partitions::{enumerate_partitions, partitions_of, Partition};
use crate::qfuncs::{macmahon_series, qmf_bivariate};
use crate::schur::{lr_coeff, schur_spec_u, LRKey, SpecSequence};
use crate::series::{rat, TruncSeries};
use crate::{Error, Result};

/// Runs `f` at increasing working orders until the result is known through
/// `u_order`.
fn with_slack(u_order: i64, f: impl Fn(i64) -> TruncSeries) -> TruncSeries {
    let mut slack = 0;
    loop {
        let s = f(u_order + slack);
        if s.u_order() >= u_order {
            return s.truncate(s.a_order(), u_order);
        }
        slack += u_order - s.u_order();
    }
}

fn sign(n: u32) -> BigRational {
    if n.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

type SeriesMemo = OnceLock<Mutex<HashMap<(Vec<Partition>, i64), TruncSeries>>>;

fn memoized(memo: &'static SeriesMemo, key: Vec<Partition>, u_order: i64, f: impl FnOnce() -> TruncSeries) -> TruncSeries {
    let table = memo.get_or_init(|| Mutex::new(HashMap::new()));
    let k = (key, u_order);
    if let Some(s) = table.lock().expect("memo poisoned").get(&k) {
        return s.clone();
    }
    let s = f();
    table.lock().expect("memo poisoned").entry(k).or_insert(s).clone()
}

/// `W_{λμ} = (−1)^{|λ|+|μ|} s_{λ'}(q^{−ρ}) s_{μ'}(q^{−λ'−ρ})`, exact through `u^{u_order}`.
pub fn w_two_u(lambda: &Partition, mu: &Partition, u_order: i64) -> TruncSeries {
    static MEMO: SeriesMemo = OnceLock::new();
    memoized(&MEMO, vec![lambda.clone(), mu.clone()], u_order, || {
        let lc = lambda.conjugate();
        let s = sign(lambda.size() + mu.size());
        with_slack(u_order, |target| {
            let left = schur_spec_u(&lc, &SpecSequence::rho_inverse(), target);
            let right = schur_spec_u(&mu.conjugate(), &SpecSequence::shifted_rho_inverse(&lc), target);
            left.mul_series(&right).scale(&s)
        })
    })
}

pub fn w_two(lambda: &Partition, mu: &Partition, q_order: i64) -> TruncSeries {
    w_two_u(lambda, mu, 2 * q_order)
}

pub fn w_one(lambda: &Partition, q_order: i64) -> TruncSeries {
    w_two(lambda, &Partition::empty(), q_order)
}

/// Numeric two-point function at `u = q^{1/2}`, `|u| < 1`.
pub fn w_two_value(lambda: &Partition, mu: &Partition, u: num::complex::Complex64) -> num::complex::Complex64 {
    use crate::schur::schur_spec_value;
    let lc = lambda.conjugate();
    let s = if (lambda.size() + mu.size()).is_multiple_of(2) { 1.0 } else { -1.0 };
    s * schur_spec_value(&lc, &SpecSequence::rho_inverse(), u)
        * schur_spec_value(&mu.conjugate(), &SpecSequence::shifted_rho_inverse(&lc), u)
}

/// `W_{λμν} = q^{(κ(μ)+κ(ν))/2} Σ c^λ_{αγ} c^{ν'}_{γβ} W_{μ'α} W_{μβ} / W_μ`.
///
/// With the second factor read as `W_{μβ'}` the result is not cyclically
/// symmetric; `W_{μβ}` is.
pub fn w_three_u(lambda: &Partition, mu: &Partition, nu: &Partition, u_order: i64) -> TruncSeries {
    static MEMO: SeriesMemo = OnceLock::new();
    memoized(&MEMO, vec![lambda.clone(), mu.clone(), nu.clone()], u_order, || {
        with_slack(u_order, |target| w_three_at(lambda, mu, nu, target))
    })
}

fn w_three_at(lambda: &Partition, mu: &Partition, nu: &Partition, u_order: i64) -> TruncSeries {
    let nuc = nu.conjugate();
    let muc = mu.conjugate();
    let mut sum = TruncSeries::zero(0, u_order);
    for g in 0..=lambda.size().min(nu.size()) {
        for gamma in partitions_of(g) {
            let alphas: Vec<(Partition, u64)> = partitions_of(lambda.size() - g)
                .into_iter()
                .map(|a| {
                    let c = lr_coeff(&LRKey { lambda: lambda.clone(), mu: a.clone(), nu: gamma.clone() });
                    (a, c)
                })
                .filter(|(_, c)| *c > 0)
                .collect();
            if alphas.is_empty() {
                continue;
            }
            let betas: Vec<(Partition, u64)> = partitions_of(nu.size() - g)
                .into_iter()
                .map(|b| {
                    let c = lr_coeff(&LRKey { lambda: nuc.clone(), mu: gamma.clone(), nu: b.clone() });
                    (b, c)
                })
                .filter(|(_, c)| *c > 0)
                .collect();
            if betas.is_empty() {
                continue;
            }
            // the sum factorizes over α and β for fixed γ
            let mut left = TruncSeries::zero(0, u_order);
            for (a, c) in &alphas {
                left = &left + &w_two_u(&muc, a, u_order).scale(&rat(*c as i64));
            }
            let mut right = TruncSeries::zero(0, u_order);
            for (b, c) in &betas {
                right = &right + &w_two_u(mu, b, u_order).scale(&rat(*c as i64));
            }
            sum = &sum + &left.mul_series(&right);
        }
    }
    // W_μ starts at a positive power of u; work high enough to see it
    let mut wo = u_order.max(2);
    let inv = loop {
        match w_two_u(mu, &Partition::empty(), wo).inverse() {
            Ok(s) => break s,
            Err(_) => wo *= 2,
        }
    };
    sum.mul_series(&inv).shift_u(mu.kappa() + nu.kappa())
}

pub fn w_three(lambda: &Partition, mu: &Partition, nu: &Partition, q_order: i64) -> TruncSeries {
    w_three_u(lambda, mu, nu, 2 * q_order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    /// Incident edge ids in counterclockwise order.
    pub half_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub id: usize,
    /// `[tail, head]` for a compact edge, `[v]` for a leg.
    pub ends: Vec<usize>,
    #[serde(default)]
    pub framing: i64,
    #[serde(default)]
    pub homology: Vec<i64>,
}

impl GraphEdge {
    pub fn is_compact(&self) -> bool {
        self.ends.len() == 2
    }

    pub fn degree(&self) -> i64 {
        self.homology.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricGraph {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
}

/// Compact-edge id to label; edges not listed carry the empty partition.
pub type Labeling = BTreeMap<usize, Partition>;

impl ToricGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let g: ToricGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    fn edge(&self, id: usize) -> Option<&GraphEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn compact_edges(&self) -> impl Iterator<Item = &GraphEdge> {
        self.edges.iter().filter(|e| e.is_compact())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        let ids: BTreeSet<usize> = self.edges.iter().map(|e| e.id).collect();
        if ids.len() != self.edges.len() {
            return bad("duplicate edge id".into());
        }
        let basis = self.compact_edges().map(|e| e.homology.len()).max().unwrap_or(0);
        for e in &self.edges {
            match e.ends.len() {
                1 => {
                    if e.framing != 0 || !e.homology.is_empty() {
                        return bad(format!("leg {} carries framing or homology", e.id));
                    }
                }
                2 => {
                    if e.ends[0] == e.ends[1] {
                        return bad(format!("edge {} is a loop", e.id));
                    }
                    if e.homology.len() != basis {
                        return bad(format!("edge {} has a homology vector of the wrong length", e.id));
                    }
                }
                _ => return bad(format!("edge {} must have one or two ends", e.id)),
            }
            for &v in &e.ends {
                let Some(vx) = self.vertices.get(v) else {
                    return bad(format!("edge {} ends at unknown vertex {v}", e.id));
                };
                if !vx.half_edges.contains(&e.id) {
                    return bad(format!("vertex {v} does not list edge {}", e.id));
                }
            }
        }
        for (v, vx) in self.vertices.iter().enumerate() {
            if vx.half_edges.len() != 3 {
                return bad(format!("vertex {v} is not trivalent"));
            }
            for &id in &vx.half_edges {
                match self.edge(id) {
                    Some(e) if e.ends.contains(&v) => {}
                    _ => return bad(format!("vertex {v} lists edge {id} which does not end there")),
                }
            }
            let distinct: BTreeSet<_> = vx.half_edges.iter().collect();
            if distinct.len() != 3 {
                return bad(format!("vertex {v} repeats an edge"));
            }
        }
        Ok(())
    }

    /// The counterclockwise label triple at vertex `v`: `λ_e` on outgoing
    /// edges, `λ_e'` on incoming ones.
    fn triple(&self, v: usize, labels: &Labeling) -> [Partition; 3] {
        let mut out: [Partition; 3] = Default::default();
        for (slot, &id) in self.vertices[v].half_edges.iter().enumerate() {
            let e = self.edge(id).expect("validated");
            if !e.is_compact() {
                continue;
            }
            let lam = labels.get(&id).cloned().unwrap_or_default();
            out[slot] = if e.ends[0] == v { lam } else { lam.conjugate() };
        }
        out
    }

    fn check_cutoff(&self) -> Result<()> {
        for e in self.compact_edges() {
            if e.degree() < 1 {
                return Err(Error::CutoffNotExact(e.id));
            }
        }
        Ok(())
    }
}

/// Canonical three-point key: the lexicographically least cyclic rotation.
fn canonical(t: &[Partition; 3]) -> [Partition; 3] {
    let rots = [
        t.clone(),
        [t[1].clone(), t[2].clone(), t[0].clone()],
        [t[2].clone(), t[0].clone(), t[1].clone()],
    ];
    rots.into_iter().min().expect("three rotations")
}

fn edge_factor(e: &GraphEdge, lam: &Partition, a_order: u32, u_order: i64) -> TruncSeries {
    let n = lam.size();
    let s = sign(((n as i64) * (e.framing + 1)).rem_euclid(2) as u32);
    let a = (e.degree() * n as i64) as u32;
    TruncSeries::monomial(s, a, e.framing * lam.kappa(), a_order, u_order)
}

fn amplitude_with(
    graph: &ToricGraph,
    labels: &Labeling,
    a_order: u32,
    u_order: i64,
    vertex_value: &dyn Fn(&[Partition; 3]) -> TruncSeries,
) -> TruncSeries {
    let mut acc = TruncSeries::one(a_order, u_order);
    for e in graph.compact_edges() {
        let lam = labels.get(&e.id).cloned().unwrap_or_default();
        acc = acc.mul_series(&edge_factor(e, &lam, a_order, u_order));
    }
    for v in 0..graph.vertices.len() {
        let t = canonical(&graph.triple(v, labels));
        acc = acc.mul_series(&vertex_value(&t).with_a_order(a_order));
    }
    acc
}

/// Amplitude of a labeled graph through `a^{a_order}` and `q^{q_order}`.
pub fn amplitude(graph: &ToricGraph, labels: &Labeling, a_order: u32, q_order: i64) -> Result<TruncSeries> {
    graph.validate()?;
    for id in labels.keys() {
        if !graph.edge(*id).is_some_and(|e| e.is_compact()) {
            return Err(Error::InvalidGraph(format!("label on non-compact or unknown edge {id}")));
        }
    }
    let u_order = 2 * q_order;
    Ok(with_slack(u_order, |target| {
        amplitude_with(graph, labels, a_order, target, &|t| w_three_u(&t[0], &t[1], &t[2], target))
    }))
}

/// Labelings of the compact edges with total `a`-degree at most `a_order`,
/// edges in declaration order, partitions in (size, lex) order.
pub fn labelings(graph: &ToricGraph, a_order: u32) -> Result<Vec<Labeling>> {
    graph.check_cutoff()?;
    let edges: Vec<&GraphEdge> = graph.compact_edges().collect();
    let mut out = Vec::new();
    fn rec(i: usize, budget: i64, edges: &[&GraphEdge], cur: &mut Labeling, out: &mut Vec<Labeling>) {
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        let deg = edges[i].degree();
        for lam in enumerate_partitions((budget / deg) as u32) {
            let cost = deg * lam.size() as i64;
            cur.insert(edges[i].id, lam);
            rec(i + 1, budget - cost, edges, cur, out);
        }
        cur.remove(&edges[i].id);
    }
    rec(0, a_order as i64, &edges, &mut Labeling::new(), &mut out);
    Ok(out)
}

/// `Σ_labelings amplitude`, exact through `a^{a_order} q^{q_order}`. Vertex
/// values are computed in parallel; the sum is taken in labeling order.
pub fn state_sum(graph: &ToricGraph, a_order: u32, q_order: i64) -> Result<TruncSeries> {
    graph.validate()?;
    let labs = labelings(graph, a_order)?;
    let mut triples: BTreeSet<[Partition; 3]> = BTreeSet::new();
    for l in &labs {
        for v in 0..graph.vertices.len() {
            triples.insert(canonical(&graph.triple(v, l)));
        }
    }
    let triples: Vec<[Partition; 3]> = triples.into_iter().collect();
    let u_order = 2 * q_order;
    Ok(with_slack(u_order, |target| {
        let values: HashMap<[Partition; 3], TruncSeries> = triples
            .par_iter()
            .map(|t| (t.clone(), w_three_u(&t[0], &t[1], &t[2], target)))
            .collect();
        let amps: Vec<TruncSeries> = labs
            .par_iter()
            .map(|l| amplitude_with(graph, l, a_order, target, &|t| values[t].clone()))
            .collect();
        amps.iter().fold(TruncSeries::zero(a_order, target), |acc, s| &acc + s)
    }))
}

/// Two vertices joined by one compact edge of framing 0 and degree 1, each
/// with two legs.
pub fn conifold_graph() -> ToricGraph {
    let leg = |id, v| GraphEdge { id, ends: vec![v], framing: 0, homology: vec![] };
    ToricGraph {
        vertices: vec![GraphVertex { half_edges: vec![0, 1, 2] }, GraphVertex { half_edges: vec![0, 3, 4] }],
        edges: vec![
            GraphEdge { id: 0, ends: vec![0, 1], framing: 0, homology: vec![1] },
            leg(1, 0),
            leg(2, 0),
            leg(3, 1),
            leg(4, 1),
        ],
    }
}

/// `(aq;q)^{(2)}_∞`.
pub fn conifold_product(a_order: u32, q_order: i64) -> TruncSeries {
    qmf_bivariate(2, 1, a_order, q_order)
}

/// `M(q)^{χ/2} (aq;q)^{(2)}_∞`.
pub fn full_z(chi: i64, a_order: u32, q_order: i64) -> Result<TruncSeries> {
    if chi.is_odd() {
        return Err(Error::Domain(format!("Euler characteristic must be even, got {chi}")));
    }
    let m = macmahon_series(q_order).int_pow(chi / 2)?;
    Ok(m.with_a_order(a_order).mul_series(&conifold_product(a_order, q_order)))
}

/// How `D_{n,d}` is read off the reduced partition function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DtReading {
    /// `(−1)^n D_{n,d}` are the coefficients of `a^d q^n` in `Z'` itself.
    Taylor,
    /// `(−1)^n D_{n,d}` are the coefficients of `a^d q^n` in `ln Z'`.
    Log,
}

/// `D_{0,d}, …, D_{M,d}` with `M` the series' `q`-order.
pub fn dt_coeffs(z_reduced: &TruncSeries, d: u32) -> Result<Vec<i64>> {
    dt_coeffs_with(z_reduced, d, DtReading::Taylor)
}

pub fn dt_coeffs_with(z_reduced: &TruncSeries, d: u32, reading: DtReading) -> Result<Vec<i64>> {
    if z_reduced.coeff(0, 0) != rat(1) {
        return Err(Error::Domain("reduced partition function needs unit constant term".into()));
    }
    if d > z_reduced.a_order() {
        return Err(Error::Domain(format!("a-degree {d} exceeds the series order")));
    }
    let src = match reading {
        DtReading::Taylor => z_reduced.clone(),
        DtReading::Log => z_reduced.log()?,
    };
    if src.terms().any(|(&(a, u), _)| a == d && u % 2 != 0) {
        return Err(Error::Domain("half-integer q powers in a DT series".into()));
    }
    (0..=src.q_order())
        .map(|n| {
            let c = src.coeff_q(d, n);
            let c = if n % 2 == 0 { c } else { -c };
            if !c.is_integer() {
                return Err(Error::DtIntegrality { n, d, value: c.to_string() });
            }
            c.to_integer()
                .to_i64()
                .ok_or_else(|| Error::Domain(format!("D_{{{n},{d}}} overflows i64")))
        })
        .collect()
}
