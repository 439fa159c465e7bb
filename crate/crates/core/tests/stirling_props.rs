use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;
use qbarnes::stirling::*;

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-200i64..=200, 1i64..=50).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pascal(z in arb_rational(), n in 1u32..=12) {
        prop_assert_eq!(stirling_poly(&z, n - 1) + stirling_poly(&z, n), stirling_poly(&(&z + r(1)), n));
    }

    #[test]
    fn negation(z in arb_rational(), n in 0u32..=12) {
        let rhs = stirling_poly(&(&z + r(n as i64) - r(1)), n);
        let rhs = if n % 2 == 0 { rhs } else { -rhs };
        prop_assert_eq!(stirling_poly(&-z, n), rhs);
    }

    #[test]
    fn stirbin_closed_form(z in arb_rational(), n in 0u32..=8, d in 1u32..=5) {
        prop_assert_eq!(stirbin_sum(n, d, &z), stirbin_closed(n, d, &z));
    }
}

#[test]
fn stirbin_on_integers() {
    for z in -3..=8 {
        for n in 0..=8 {
            for d in 1..=5 {
                assert_eq!(stirbin_sum(n, d, &r(z)), stirbin_closed(n, d, &r(z)));
            }
        }
    }
}

/// Coefficients of (1+t)^z for a non-negative integer z by repeated
/// multiplication.
fn binomial_row(z: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..z {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (i, c) in row.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        row = next;
    }
    row
}

#[test]
fn generating_function_truncation() {
    for z in 0..=10usize {
        let row = binomial_row(z);
        for n in 0..=14u32 {
            let expect = row.get(n as usize).cloned().unwrap_or_else(BigInt::zero);
            assert_eq!(stirling_poly(&r(z as i64), n), BigRational::from_integer(expect.clone()));
            assert_eq!(stirling_int(z as i64, n), expect);
        }
    }
}

#[test]
fn first_kind_expands_falling_factorial() {
    // z(z−1)⋯(z−n+1) = Σ s(n,k) z^k, checked by evaluation at several z
    for n in 0..=10u32 {
        for z in -4i64..=6 {
            let falling: BigInt = (0..n as i64).map(|i| BigInt::from(z - i)).product();
            let sum: BigInt = (0..=n as i64).map(|k| stirling_first_kind(n, k) * BigInt::from(z).pow(k as u32)).sum();
            assert_eq!(falling, sum, "n={n} z={z}");
        }
    }
}
