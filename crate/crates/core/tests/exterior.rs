mod common;

use os_resonance::exterior::{block_sum, decomposable_relation, decomposable_relation_check, ExteriorElement};
use os_resonance::latin::{LatinHypercube, LatinSquare};
use os_resonance::scalar::{rat, Rational};
use proptest::prelude::*;

type X = ExteriorElement<Rational>;

const N: usize = 6;

fn homogeneous(p: usize) -> impl Strategy<Value = X> {
    prop::collection::vec((prop::sample::subsequence((1..=N).collect::<Vec<_>>(), p), -4i64..=4), 0..5)
        .prop_map(|terms| {
            let mut x = X::zero(N).unwrap();
            for (idx, c) in terms {
                x += &X::monomial(N, &idx).unwrap().scale(&rat(c));
            }
            x
        })
}

fn degree_and_element() -> impl Strategy<Value = (usize, X)> {
    (0..=4usize).prop_flat_map(|p| (Just(p), homogeneous(p)))
}

proptest! {
    #[test]
    fn boundary_squares_to_zero((_, x) in degree_and_element()) {
        prop_assert!(x.boundary().boundary().is_zero());
    }

    #[test]
    fn graded_leibniz((p, x) in degree_and_element(), (_, y) in degree_and_element()) {
        let lhs = x.wedge(&y).unwrap().boundary();
        let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
        let rhs = x.boundary().wedge(&y).unwrap() + x.wedge(&y.boundary()).unwrap().scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_associative((_, x) in degree_and_element(), (_, y) in degree_and_element(), (_, z) in degree_and_element()) {
        let a = x.wedge(&y).unwrap().wedge(&z).unwrap();
        let b = x.wedge(&y.wedge(&z).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn wedge_is_graded_commutative((p, x) in degree_and_element(), (q, y) in degree_and_element()) {
        let sign = if (p * q) % 2 == 0 { rat(1) } else { rat(-1) };
        prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap().scale(&sign));
    }
}

#[test]
fn relation_holds_for_the_corpus() {
    for k in common::hypercubes() {
        assert!(decomposable_relation_check(&k).unwrap(), "{k:?}");
    }
}

#[test]
fn explicit_order_two_relation() {
    let k = LatinSquare::cyclic(2).as_hypercube();
    let rel = decomposable_relation::<Rational>(&k).unwrap();
    let e = |i: &[usize]| X::monomial(6, i).unwrap();
    // d(a1 ^ a2 ^ a3) = 2 (d e135 + d e146 + d e236 + d e245)
    let mut sum = X::zero(6).unwrap();
    for s in [[1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]] {
        sum += &e(&s).boundary();
    }
    assert_eq!(rel.boundary_of_product, sum.scale(&rat(2)));
    // (e1 + e2 - e5 - e6) ^ (e3 + e4 - e5 - e6), up to the factor m = 2
    let d13 = e(&[1]) + e(&[2]) - e(&[5]) - e(&[6]);
    let d23 = e(&[3]) + e(&[4]) - e(&[5]) - e(&[6]);
    assert_eq!(rel.differences, d13.wedge(&d23).unwrap().scale(&rat(2)));
    // term by term: twelve monomials with coefficients +-2
    assert_eq!(rel.boundary_of_product.num_terms(), 12);
    for (idx, c) in rel.boundary_of_product.terms() {
        assert_eq!(idx.len(), 2);
        assert!(*c == rat(2) || *c == rat(-2), "{idx:?} {c}");
    }
    let a1 = block_sum::<Rational>(6, 2, 1).unwrap();
    assert_eq!(a1, e(&[1]) + e(&[2]));
}

#[test]
fn relation_rejects_invalid_input() {
    assert!(LatinHypercube::new(2, 2, vec![1, 1, 2, 2]).is_err());
}
