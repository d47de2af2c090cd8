mod common;

use common::{oracle_matroids, Quotient};

use os_resonance::exterior::ExteriorElement;
use os_resonance::latin::{self, LatinHypercube, LatinSquare};
use os_resonance::matroid::nbc_counts;
use os_resonance::oscohomology::{cohomology, h1_dimension_mols, nonvanishing_witness, OsAlgebra, Weight};
use os_resonance::scalar::{rat, Cyclotomic, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trim(v: &[usize]) -> Vec<usize> {
    let end = v.iter().rposition(|&d| d > 0).map_or(0, |i| i + 1);
    v[..end].to_vec()
}

#[test]
fn nbc_dimensions_match_the_quotient() {
    for (name, m) in oracle_matroids() {
        let q = Quotient::new(&m);
        let alg = OsAlgebra::new(&m).unwrap();
        assert_eq!(trim(&alg.dims()), trim(&q.dims()), "{name}");
    }
}

#[test]
fn cohomology_matches_the_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, m) in oracle_matroids() {
        let q = Quotient::new(&m);
        let mut weights = vec![
            Weight::new(vec![rat(0); m.n()]),
            common::random_zero_sum_weight(&mut rng, m.n()),
            common::random_nonzero_sum_weight(&mut rng, m.n()),
        ];
        if m.n() % 3 == 0 {
            let b = m.n() / 3;
            weights.push(Weight::from_blocks(b, &[rat(1), rat(1), rat(-2)]));
            weights.push(Weight::from_blocks(b, &[rat(0), rat(1), rat(-1)]));
        }
        for w in weights {
            let report = cohomology(&m, &w).unwrap();
            let expected = q.cohomology(&w);
            assert_eq!(trim(&report.dims_a), trim(&expected), "{name} {:?}", w.to_strings());
        }
    }
}

#[test]
fn cyclotomic_weights_match_the_quotient() {
    let ceva = LatinSquare::cyclic(2).build_matroid().unwrap();
    let q = Quotient::new(&ceva);
    let one = Cyclotomic::from_rational(rat(1)).embed(3).unwrap();
    let w = Weight::from_blocks(2, &[one, Cyclotomic::zeta(3).unwrap(), Cyclotomic::zeta_pow(3, 2).unwrap()]);
    assert!(w.sum_zero());
    let report = cohomology(&ceva, &w).unwrap();
    assert_eq!(trim(&report.dims_a), trim(&q.cohomology(&w)));
    assert_eq!(report.h(1), 1);
}

#[test]
fn ceva_block_weight() {
    let ceva = LatinSquare::cyclic(2).build_matroid().unwrap();
    let w = Weight::from_blocks(2, &[rat(1), rat(1), rat(-2)]);
    let r = cohomology(&ceva, &w).unwrap();
    assert_eq!(r.dims_a, Quotient::new(&ceva).cohomology(&w));
    assert_eq!(r.h(1), 1);
}

#[test]
fn one_form_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let w = common::random_zero_sum_weight(&mut rng, 9);
        let f = w.one_form().unwrap();
        assert!(f.wedge(&f).unwrap().is_zero());
    }
}

#[test]
fn nonzero_sum_kills_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, m) in common::small_matroids().into_iter().take(5) {
        for _ in 0..20 {
            let w = common::random_nonzero_sum_weight(&mut rng, m.n());
            let r = cohomology(&m, &w).unwrap();
            assert!(r.is_zero(), "{name} {:?}", r);
            assert!(r.dims_da.is_none());
        }
    }
}

#[test]
fn zero_weight_gives_betti_numbers() {
    for (name, m) in oracle_matroids() {
        let r = cohomology(&m, &Weight::new(vec![rat(0); m.n()])).unwrap();
        assert_eq!(trim(&r.dims_a), trim(&nbc_counts(&m).unwrap()), "{name}");
        assert!(r.trivial_weight);
    }
}

fn check_splitting(dims_a: &[usize], dims_da: &[usize]) {
    let da = |p: usize| dims_da.get(p).copied().unwrap_or(0);
    for p in 0..dims_a.len() {
        let below = if p > 0 { da(p - 1) } else { 0 };
        assert_eq!(dims_a[p], da(p) + below, "{dims_a:?} {dims_da:?}");
    }
}

#[test]
fn splitting_identity_and_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut ms = oracle_matroids();
    ms.push(("pappus square".into(), LatinSquare::cyclic(3).build_matroid().unwrap()));
    for (name, m) in ms {
        for _ in 0..5 {
            let w = common::random_zero_sum_weight(&mut rng, m.n());
            let r = cohomology(&m, &w).unwrap();
            check_splitting(&r.dims_a, r.dims_da.as_ref().unwrap());
            let scaled = cohomology(&m, &w.scale(&Rational::new((-7).into(), 3.into()))).unwrap();
            assert_eq!(scaled.dims_a, r.dims_a, "{name}");
            let r2 = cohomology(&m, &w.map(|x| Cyclotomic::from_rational(x.clone()).embed(5).unwrap())).unwrap();
            assert_eq!(r2.dims_a, r.dims_a, "{name}");
        }
    }
}

#[test]
fn squares_have_first_cohomology() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for k in common::squares() {
        let m = k.build_matroid().unwrap();
        let alg = OsAlgebra::new(&m).unwrap();
        for _ in 0..3 {
            let blocks = common::random_zero_sum_blocks(&mut rng, 3);
            let w = Weight::from_blocks(k.order(), &blocks);
            let r = alg.cohomology(&w).unwrap();
            assert_eq!(r.h(0), 0);
            assert_eq!(r.h(1), 1, "{:?} {:?}", k.rows(), w.to_strings());
        }
    }
}

#[test]
fn witness_with_a_leading_zero_block() {
    let k = LatinSquare::cyclic(3).as_hypercube();
    let w = Weight::from_blocks(3, &[rat(0), rat(2), rat(-2)]);
    let wit = nonvanishing_witness(&k, &w).unwrap();
    assert_eq!(wit.pivot_block, 2);
    assert_eq!(wit.degree, 1);
    let r = cohomology(&k.build_matroid().unwrap(), &w).unwrap();
    assert!(r.h(1) >= 1);
}

#[test]
fn witness_errors() {
    let k = LatinSquare::cyclic(2).as_hypercube();
    assert!(nonvanishing_witness(&k, &Weight::new(vec![rat(0); 6])).is_err());
    assert!(nonvanishing_witness(&k, &Weight::from_blocks(2, &[rat(1), rat(1), rat(1)])).is_err());
    let uneven = Weight::new([1, 2, 0, 0, -1, -2].map(rat).to_vec());
    assert!(nonvanishing_witness(&k, &uneven).is_err());
    assert!(nonvanishing_witness(&k, &Weight::new(vec![rat(1); 5])).is_err());
}

#[test]
fn order_two_cube_cohomology() {
    let k = LatinHypercube::linear(3, 2, &[1, 1, 1]).unwrap();
    let m = k.build_matroid().unwrap();
    let q = Quotient::new(&m);
    let w = Weight::from_blocks(2, &[rat(1), rat(-1), rat(2), rat(-2)]);
    let r = cohomology(&m, &w).unwrap();
    assert_eq!(trim(&r.dims_a), trim(&q.cohomology(&w)));
    assert_eq!((r.h(0), r.h(1)), (0, 0));
    assert!(r.h(2) > 0);
    nonvanishing_witness(&k, &w).unwrap();
}

#[test]
fn orthogonal_families() {
    let w = Weight::from_blocks(3, &[rat(1), rat(2), rat(-4), rat(1)]);
    assert_eq!(h1_dimension_mols(&latin::mols_prime(3, 2).unwrap(), &w).unwrap(), 2);
    let w4 = Weight::from_blocks(4, &[rat(1), rat(2), rat(3), rat(-1), rat(-5)]);
    assert_eq!(h1_dimension_mols(&latin::mols_order4(), &w4).unwrap(), 3);
    assert!(h1_dimension_mols(&latin::mols_prime(3, 2).unwrap(), &Weight::new(vec![rat(1); 5])).is_err());
}

#[test]
fn reduction_matches_coordinates() {
    let m = LatinSquare::cyclic(3).build_matroid().unwrap();
    let alg = OsAlgebra::new(&m).unwrap();
    for p in 0..=3 {
        for (i, b) in alg.basis(p).iter().enumerate() {
            let x = ExteriorElement::<Rational>::monomial(9, b).unwrap();
            let c = alg.coordinates(&x, p).unwrap();
            assert_eq!(c.iter().filter(|v| **v != rat(0)).count(), 1);
            assert_eq!(c[i], rat(1));
            assert_eq!(alg.from_coordinates(p, &c), x);
        }
    }
}

