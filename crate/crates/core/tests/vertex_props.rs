use num::{BigInt, BigRational};
use qbarnes::partitions::enumerate_partitions;
use qbarnes::series::rat;
use qbarnes::vertex::*;
use qbarnes::{Error, TruncSeries};

fn fixture() -> ToricGraph {
    ToricGraph::from_json(include_str!("../fixtures/conifold.json")).unwrap()
}

#[test]
fn fixture_is_the_built_in_conifold() {
    assert_eq!(fixture(), conifold_graph());
}

#[test]
fn conifold_small_orders() {
    for (ao, qo) in [(1, 6), (2, 8), (3, 10)] {
        assert_eq!(state_sum(&conifold_graph(), ao, qo).unwrap(), conifold_product(ao, qo));
    }
}

#[test]
fn orientation_flip_leaves_state_sum_unchanged() {
    let mut g = conifold_graph();
    for e in g.edges.iter_mut().filter(|e| e.is_compact()) {
        e.ends.reverse();
        e.framing = -e.framing;
    }
    assert_eq!(state_sum(&g, 4, 15).unwrap(), state_sum(&conifold_graph(), 4, 15).unwrap());
}

#[test]
fn rotating_half_edges_leaves_state_sum_unchanged() {
    let mut g = conifold_graph();
    g.vertices[0].half_edges.rotate_left(1);
    g.vertices[1].half_edges.rotate_left(2);
    assert_eq!(state_sum(&g, 3, 12).unwrap(), conifold_product(3, 12));
}

#[test]
fn three_point_cyclic_symmetry() {
    let all: Vec<_> = enumerate_partitions(5).collect();
    for l in &all {
        for m in &all {
            for n in &all {
                if l.size() + m.size() + n.size() > 5 {
                    continue;
                }
                let a = w_three(l, m, n, 8);
                assert_eq!(a, w_three(m, n, l, 8), "{l:?} {m:?} {n:?}");
            }
        }
    }
}

#[test]
fn conifold_has_integer_q_powers() {
    let z = state_sum(&conifold_graph(), 4, 12).unwrap();
    assert!(z.terms().all(|(&(_, u), _)| u % 2 == 0));
}

/// Coefficient of a¹ in Π_n (1 − a qⁿ)ⁿ is −Σ n qⁿ.
#[test]
fn dt_degree_one() {
    let z = state_sum(&conifold_graph(), 4, 16).unwrap();
    let d1 = dt_coeffs(&z, 1).unwrap();
    for (n, v) in d1.iter().enumerate() {
        let n = n as i64;
        assert_eq!(*v, if n % 2 == 1 { n } else { -n });
    }
    for d in 2..=4 {
        assert_eq!(dt_coeffs(&z, d).unwrap().len(), 17);
    }
}

#[test]
fn dt_rejects_fractional_coefficients() {
    let mut z = TruncSeries::one(1, 8);
    z.add_term(1, 2, BigRational::new(BigInt::from(1), BigInt::from(2)));
    assert!(matches!(dt_coeffs(&z, 1), Err(Error::DtIntegrality { .. })));
}

#[test]
fn full_partition_function() {
    // χ = 2 multiplies by one MacMahon factor; the a⁰ part is M(q)
    let z = full_z(2, 2, 8).unwrap();
    let m = [1, 1, 3, 6, 13, 24, 48, 86, 160];
    for (n, c) in m.iter().enumerate() {
        assert_eq!(z.coeff_q(0, n as i64), rat(*c));
    }
    assert!(full_z(3, 2, 8).is_err());
}

#[test]
fn malformed_graphs() {
    let bad = |text: &str| matches!(ToricGraph::from_json(text), Err(Error::InvalidGraph(_)) | Err(Error::Parse(_)));
    assert!(bad(r#"{"vertices":[{"half_edges":[0,1]}],"edges":[{"id":0,"ends":[0]},{"id":1,"ends":[0]}]}"#));
    assert!(bad(r#"{"vertices":[{"half_edges":[0,0,1]}],"edges":[{"id":0,"ends":[0,0],"homology":[1]},{"id":1,"ends":[0]}]}"#));
    assert!(bad("not json"));
    let mut g = conifold_graph();
    g.edges[0].homology = vec![0];
    assert!(matches!(state_sum(&g, 2, 4), Err(Error::CutoffNotExact(_))));
    assert!(conifold_graph().validate().is_ok());
}

#[test]
fn dt_log_reading_is_not_integral() {
    let z = state_sum(&conifold_graph(), 2, 6).unwrap();
    assert_eq!(dt_coeffs_with(&z, 1, DtReading::Log).unwrap(), dt_coeffs(&z, 1).unwrap());
    let err = dt_coeffs_with(&z, 2, DtReading::Log).unwrap_err();
    assert!(matches!(err, Error::DtIntegrality { n: 2, d: 2, .. }), "{err}");
}
