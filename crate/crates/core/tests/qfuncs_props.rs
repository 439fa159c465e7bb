use num::complex::Complex64;
use num::BigRational;
use proptest::prelude::*;
use qbarnes::qfuncs::*;
use qbarnes::series::rat;
use qbarnes::TruncSeries;

/// Plane partitions of n filled cell by cell on an n×n grid, each entry at
/// most its upper and left neighbours.
fn plane_partitions(n: u32) -> u64 {
    fn fill(grid: &mut Vec<Vec<u32>>, cell: usize, left: u32, side: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        if cell == side * side {
            return 0;
        }
        let (i, j) = (cell / side, cell % side);
        let up = if i > 0 { grid[i - 1][j] } else { left };
        let lf = if j > 0 { grid[i][j - 1] } else { left };
        let cap = up.min(lf).min(left);
        let mut count = 0;
        for v in 1..=cap {
            grid[i][j] = v;
            count += fill(grid, cell + 1, left - v, side);
        }
        // a zero ends the row; a zero in the first column ends everything
        grid[i][j] = 0;
        if j > 0 {
            count += fill(grid, (i + 1) * side, left, side);
        }
        count
    }
    let side = n.max(1) as usize;
    fill(&mut vec![vec![0; side]; side], 0, n, side)
}

#[test]
fn macmahon_matches_plane_partitions() {
    let m = macmahon_series(10);
    for n in 0..=10 {
        assert_eq!(m.coeff_q(0, n), rat(plane_partitions(n as u32) as i64), "q^{n}");
    }
    let first: Vec<u64> = (0..=8).map(plane_partitions).collect();
    assert_eq!(first, [1, 1, 3, 6, 13, 24, 48, 86, 160]);
}

#[test]
fn euler_function_counts_partitions() {
    let e = qmf_series(1, 1, 15).inverse().unwrap();
    let counts = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176];
    for (n, c) in counts.iter().enumerate() {
        assert_eq!(e.coeff_q(0, n as i64), rat(*c));
    }
}

#[test]
fn shift_identity() {
    // (q^{m+1};q)^{(d)} (q^m;q)^{(d−1)} = (q^m;q)^{(d)}
    for d in 1..=4 {
        for m in 1..=3 {
            let lhs = qmf_series(d, m + 1, 25).mul_series(&qmf_series(d - 1, m, 25));
            assert_eq!(lhs, qmf_series(d, m, 25), "d={d} m={m}");
        }
    }
}

/// Π over index tuples with i₁+…+i_d ≤ 6 of (1 − q^{m+Σi}).
fn multi_index(d: u32, m: u32, q_order: i64) -> TruncSeries {
    fn tuples(d: u32, budget: u32) -> Vec<u32> {
        if d == 0 {
            return vec![0];
        }
        (0..=budget).flat_map(|i| tuples(d - 1, budget - i).into_iter().map(move |s| s + i)).collect()
    }
    let mut s = TruncSeries::one(0, 2 * q_order);
    for t in tuples(d, 6) {
        let mut f = TruncSeries::one(0, 2 * q_order);
        f.add_term(0, 2 * (m + t) as i64, rat(-1));
        s = s.mul_series(&f);
    }
    s
}

#[test]
fn multi_index_equals_single_product() {
    for d in 1..=3 {
        for m in 1..=2 {
            assert_eq!(multi_index(d, m, 6), qmf_series(d, m, 6), "d={d}");
        }
    }
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.85, -3.1f64..3.1).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn log_of_product_is_polylog(a in disk_point(), q in disk_point(), d in 1u32..=3) {
        let p = QPoint::new(a, q);
        let lhs = -qmf_numeric(d, p, 1e-15).unwrap().ln();
        let rhs = qpolylog(d + 1, p, 1e-15).unwrap();
        // compare through exp to avoid 2πi ambiguity
        prop_assert!(((lhs - rhs).exp() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn finite_product_two_routes(a in disk_point(), q in disk_point(), d in 1u32..=3, n in 0u32..=5) {
        let p = QPoint::new(a, q);
        let x = qmf_finite_ratio(d, n, p, 1e-15).unwrap();
        let y = qmf_finite_product(d, n, p, 1e-15).unwrap();
        prop_assert!((x - y).norm() <= 1e-10 * x.norm().max(1.0));
    }
}

#[test]
fn numeric_against_direct_product() {
    let p = QPoint::new(Complex64::new(0.3, 0.2), Complex64::new(0.4, -0.1));
    for d in 1..=3 {
        let a = qmf_numeric(d, p, 1e-15).unwrap();
        let b = qmf_direct_product(d, p, 200);
        assert!((a - b).norm() < 1e-12, "d={d}");
    }
}

#[test]
fn macmahon_eval_two_routes() {
    for x in [0.05, 0.2, 0.7, 2.0] {
        let a = macmahon_eval(x).unwrap();
        let b = macmahon_product_log(x).unwrap();
        assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "x={x}: {a} vs {b}");
    }
}

#[test]
fn bivariate_specializes() {
    // a ↦ 1 in (a q;q)^{(2)} recovers (q;q)^{(2)} coefficientwise in total degree
    let b = qmf_bivariate(2, 1, 12, 12);
    let one = qmf_series(2, 1, 12);
    for n in 0..=12 {
        let total: BigRational = (0..=12).map(|a| b.coeff_q(a, n)).sum();
        assert_eq!(total, one.coeff_q(0, n), "q^{n}");
    }
}
