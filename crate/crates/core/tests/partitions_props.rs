use num::{BigInt, BigRational};
use proptest::prelude::*;
use qbarnes::partitions::*;
use qbarnes::Partition;

fn arb_partition(max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// p(n) by Euler's pentagonal recurrence.
fn partition_numbers(n_max: usize) -> Vec<u64> {
    let mut p = vec![0i64; n_max + 1];
    p[0] = 1;
    for n in 1..=n_max {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let s = if k % 2 == 1 { 1 } else { -1 };
            p[n] += s * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                p[n] += s * p[n - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|x| x as u64).collect()
}

proptest! {
    #[test]
    fn conjugate_is_an_involution(l in arb_partition(8)) {
        let c = l.conjugate();
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(c.conjugate(), l);
    }

    #[test]
    fn kappa_even_and_odd_under_conjugation(l in arb_partition(8)) {
        prop_assert_eq!(l.kappa() % 2, 0);
        prop_assert_eq!(l.conjugate().kappa(), -l.kappa());
    }
}

#[test]
fn kappa_on_all_small_partitions() {
    for l in enumerate_partitions(8) {
        assert_eq!(l.kappa() % 2, 0);
        assert_eq!(l.conjugate().kappa(), -l.kappa());
    }
}

#[test]
fn enumeration_counts_match_pentagonal_recurrence() {
    let p = partition_numbers(12);
    let all: Vec<Partition> = enumerate_partitions(12).collect();
    for n in 0..=12u32 {
        assert_eq!(all.iter().filter(|l| l.size() == n).count() as u64, p[n as usize]);
    }
    let mut seen = all.clone();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), all.len());
    assert!(all.windows(2).all(|w| w[0].size() <= w[1].size()));
}

#[test]
fn rectangle_cardinality_and_filter() {
    for n in 2..=5u32 {
        for k in 1..=5u32 {
            let rect = rectangle_partitions(RectangleIndex::new(n, k).unwrap());
            assert_eq!(rect.len() as u128, binomial((n - 1 + k) as u64, k as u64));
            let filtered: Vec<Partition> = enumerate_partitions((n - 1) * k)
                .filter(|l| l.len() <= (n - 1) as usize && l.first() <= k)
                .collect();
            let mut a = rect.clone();
            let mut b = filtered;
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn sl_dual_is_an_involution_on_rectangles() {
    for n in 2..=4u32 {
        for k in 1..=4u32 {
            for mu in rectangle_partitions(RectangleIndex::new(n, k).unwrap()) {
                let d = sl_dual(&mu, n).unwrap();
                assert!(d.len() < n as usize && d.first() <= k);
                assert_eq!(sl_dual(&d, n).unwrap(), mu);
            }
        }
    }
    assert!(sl_dual(&Partition::new(vec![1, 1]).unwrap(), 2).is_err());
}

#[test]
fn casimir_matches_inner_product() {
    let two = BigRational::from_integer(BigInt::from(2));
    for n in 2..=4u32 {
        let rho = weyl_vector(n);
        for k in 1..=4u32 {
            for l in rectangle_partitions(RectangleIndex::new(n, k).unwrap()) {
                let x = gl_coords(&l, n).unwrap();
                let dot: BigRational = x.iter().zip(&rho).map(|(a, r)| a * (a + r * &two)).sum();
                assert_eq!(casimir_c2(&l, n).unwrap(), dot, "{l:?} N={n}");
            }
        }
    }
}
