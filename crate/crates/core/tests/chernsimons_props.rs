use num::complex::Complex64;
use qbarnes::chernsimons::*;
use qbarnes::Partition;

#[test]
fn hopf_values_are_symmetric() {
    let ctx = CSLevelRank::new(3, 3).unwrap();
    let rect = ctx.rectangle();
    for l in &rect {
        for m in &rect {
            let a = w_fin(l, m, ctx).unwrap();
            let b = w_fin(m, l, ctx).unwrap();
            assert!((a - b).norm() < 1e-10, "{l:?} {m:?}");
        }
    }
}

#[test]
fn diameter_two_routes_and_positivity() {
    for n in 2..=4 {
        for k in 1..=4 {
            let ctx = CSLevelRank::new(n, k).unwrap();
            let s = quantum_diameter(ctx, DiameterMethod::Statesum);
            let c = quantum_diameter(ctx, DiameterMethod::Closed);
            assert!((s - c).norm() < 1e-8 * c.norm(), "N={n} k={k}");
            let (_, positive) = diameter_root(s);
            assert!(positive, "D² not real positive at N={n} k={k}");
        }
    }
}

#[test]
fn sl2z_relations() {
    for n in 2..=4 {
        for k in 1..=4 {
            let r = modular_data(CSLevelRank::new(n, k).unwrap()).residuals();
            assert!(r.max() < 1e-8, "N={n} k={k}: {r:?}");
        }
    }
}

#[test]
fn sl2_level_one() {
    // SU(2)_1: D² = 2, Z(S³) = 2^{−1/2}
    let ctx = CSLevelRank::new(2, 1).unwrap();
    let d2 = quantum_diameter(ctx, DiameterMethod::Statesum);
    assert!((d2 - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    assert!((z_s3(ctx) - Complex64::new(0.5f64.sqrt(), 0.0)).norm() < 1e-12);
}

/// SU(2)_k: D² = (k+2) / (2 sin²(π/(k+2))).
#[test]
fn sl2_closed_diameter() {
    for k in 1..=8 {
        let h = (k + 2) as f64;
        let expect = h / (2.0 * (std::f64::consts::PI / h).sin().powi(2));
        let d2 = quantum_diameter(CSLevelRank::new(2, k).unwrap(), DiameterMethod::Statesum);
        assert!((d2.re - expect).abs() < 1e-10 * expect && d2.im.abs() < 1e-10, "k={k}");
    }
}

#[test]
fn factored_z_matches_state_sum() {
    for n in 2..=4 {
        for k in 1..=4 {
            let ctx = CSLevelRank::new(n, k).unwrap();
            let a = z_s3(ctx);
            let b = z_s3_factored(ctx);
            assert!((a - b).norm() < 1e-10, "N={n} k={k}: {a} vs {b}");
        }
    }
}

#[test]
fn lemma_three_routes() {
    let pts = [
        Complex64::new(0.2, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.8, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(-0.3, 0.4),
    ];
    for q in pts {
        for n in 1..=8 {
            let (a, b, c) = lemma_finite_product(n, q);
            let c = c.unwrap();
            assert!((a - b).norm() < 1e-10 * a.norm() && (a - c).norm() < 1e-10 * a.norm(), "N={n} q={q}");
        }
    }
    let (_, _, c) = lemma_finite_product(3, Complex64::new(0.0, 1.0));
    assert!(c.is_none());
}

#[test]
fn comparison_theorem() {
    for n in 2..=3 {
        for k in 1..=3 {
            let r = comparison_residuals(CSLevelRank::new(n, k).unwrap()).norm();
            assert!(r < 1e-8, "N={n} k={k}: {r}");
        }
    }
    for (z, q) in [(0.0, 0.5), (1.0, 0.3), (2.5, 0.7)] {
        let r = gw_side_check(Complex64::new(z, 0.2), Complex64::new(q, 0.1)).unwrap();
        assert!(r.norm() < 1e-9, "z={z} q={q}");
    }
}

#[test]
fn rejects_labels_outside_rectangle() {
    let ctx = CSLevelRank::new(2, 1).unwrap();
    assert!(w_fin(&Partition::new(vec![1, 1]).unwrap(), &Partition::empty(), ctx).is_err());
    assert!(CSLevelRank::new(1, 1).is_err());
}
