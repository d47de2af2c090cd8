use os_resonance::latin::LatinSquare;
use os_resonance::realization::{self, catalog, catalog_names, verify, AnyConfiguration, Configuration};
use os_resonance::scalar::{rat, Rational};

fn assert_passes(name: &str) {
    let entry = catalog(name).unwrap();
    let report = verify(&entry);
    for c in &report.claims {
        assert!(c.passed, "{name}: {} failed ({})", c.claim, c.detail);
    }
    assert!(report.passed);
}

#[test]
fn every_catalog_entry_verifies() {
    for name in catalog_names() {
        assert_passes(name);
    }
}

#[test]
fn higher_a_with_other_parameters() {
    assert_passes("higher-A(3,5)");
    assert_passes("higher-A(-1,1/2)");
}

#[test]
fn monomial_five() {
    assert_passes("monomial(5)");
}

#[test]
fn rational_configuration_is_stable_under_field_extension() {
    for name in ["ceva", "pappus", "higher-B"] {
        let AnyConfiguration::Rational(c) = catalog(name).unwrap().configuration else {
            panic!("{name} is rational");
        };
        let over_q = c.underlying_matroid().unwrap();
        for n in [3, 5] {
            assert_eq!(c.to_cyclotomic(n).unwrap().underlying_matroid().unwrap(), over_q);
        }
    }
}

#[test]
fn perturbing_pappus_breaks_an_incidence() {
    let AnyConfiguration::Rational(c) = catalog("pappus").unwrap().configuration else {
        panic!("pappus is rational");
    };
    let expected = LatinSquare::cyclic(3).build_matroid().unwrap();
    assert_eq!(c.underlying_matroid().unwrap(), expected);
    let mut vectors = c.vectors().to_vec();
    vectors[4][0] += Rational::new(1.into(), 7.into());
    let moved = Configuration::new(3, vectors).unwrap().underlying_matroid().unwrap();
    assert_ne!(moved, expected);
    assert!(moved.circuits_of_size(3).len() < expected.circuits_of_size(3).len());
}

#[test]
fn underlying_matroids_satisfy_circuit_axioms() {
    for name in catalog_names() {
        let m = catalog(name).unwrap().configuration.underlying_matroid().unwrap();
        m.check_circuit_axioms().unwrap();
    }
}

#[test]
fn hessian_three_circuits_are_the_quadruple_point_triples() {
    let entry = catalog("hessian").unwrap();
    let m = entry.configuration.underlying_matroid().unwrap();
    let ks = realization::hessian_squares();
    let x = os_resonance::latin::mols_x_sets(&ks).unwrap();
    assert_eq!(x.len(), 9);
    let triples = realization::triples_within(&x);
    assert_eq!(triples.len(), 36);
    assert_eq!(m.circuits_of_size(3).members(), triples.as_slice());
}

#[test]
fn near_pencil_is_rank_two() {
    let c = Configuration::new(2, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(1)]]).unwrap();
    let m = c.underlying_matroid().unwrap();
    assert_eq!(m.rank(), 2);
    assert_eq!(m.circuits(), vec![vec![1, 2, 3]]);
}
