mod common;

use os_resonance::latin::{self, LatinHypercube, LatinSquare, Subsquare};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_perm(m: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=m).collect();
    p.shuffle(rng);
    p
}

#[test]
fn canonical_forms_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut squares = common::squares();
    squares.extend(latin::main_class_representatives(5).unwrap());
    for k in &squares {
        let m = k.order();
        let iso = k.isotopy_canonical();
        let main = k.main_class_canonical();
        for _ in 0..50 {
            let p = k.permuted(&random_perm(m, &mut rng), &random_perm(m, &mut rng), &random_perm(m, &mut rng)).unwrap();
            assert_eq!(p.isotopy_canonical(), iso);
            let mut roles = [1, 2, 3];
            roles.shuffle(&mut rng);
            let c = p.conjugate(roles).unwrap();
            assert_eq!(c.main_class_canonical(), main);
            assert!(c.same_main_class(k));
        }
    }
}

#[test]
fn conjugation_composes() {
    let k = latin::main_class_representatives(5).unwrap().pop().unwrap();
    let t = k.conjugate([2, 1, 3]).unwrap();
    assert_eq!(t.conjugate([2, 1, 3]).unwrap(), k);
    for (i, j) in [(1, 2), (3, 5), (4, 1)] {
        assert_eq!(t.get(j, i), k.get(i, j));
    }
    let r = k.conjugate([3, 2, 1]).unwrap();
    for i in 1..=5 {
        for j in 1..=5 {
            assert_eq!(r.get(k.get(i, j), j), i);
        }
    }
}

#[test]
fn reduced_square_counts() {
    let counts: Vec<usize> = (1..=5).map(|m| latin::count_reduced_squares(m).unwrap()).collect();
    assert_eq!(counts, vec![1, 1, 1, 4, 56]);
}

#[test]
fn main_class_counts_up_to_five() {
    let counts: Vec<usize> = (1..=5).map(|m| latin::count_main_classes(m).unwrap()).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 2]);
    assert!(latin::count_main_classes(7).is_err());
}

#[test]
fn order_four_classes_are_cyclic_and_klein() {
    let reps = latin::main_class_representatives(4).unwrap();
    let cyclic = LatinSquare::cyclic(4);
    let klein = LatinSquare::elementary_abelian(4).unwrap();
    assert!(!cyclic.same_main_class(&klein));
    assert!(reps.iter().any(|r| r.same_main_class(&cyclic)));
    assert!(reps.iter().any(|r| r.same_main_class(&klein)));
}

#[test]
fn invalid_squares_are_rejected() {
    assert!(LatinSquare::new(vec![vec![1, 2], vec![1, 2]]).is_err());
    assert!(LatinSquare::new(vec![vec![1, 3], vec![3, 1]]).is_err());
    assert!(LatinSquare::new(vec![vec![1, 2], vec![2]]).is_err());
    assert!(LatinHypercube::new(3, 2, vec![1; 8]).is_err());
    assert!(LatinHypercube::linear(2, 4, &[1, 2]).is_err());
    assert!(LatinSquare::elementary_abelian(6).is_err());
}

#[test]
fn mols_are_mutually_orthogonal() {
    for (p, s) in [(3, 2), (5, 2), (5, 4), (7, 6)] {
        let ks = latin::mols_prime(p, s).unwrap();
        assert_eq!(ks.len(), s);
        for a in 0..s {
            for b in a + 1..s {
                assert!(latin::are_orthogonal(&ks[a], &ks[b]));
            }
        }
    }
    let f4 = latin::mols_order4();
    assert_eq!(f4.len(), 3);
    assert!(latin::are_orthogonal(&f4[0], &f4[2]));
    assert!(latin::mols_prime(4, 2).is_err());
    assert!(latin::mols_prime(5, 5).is_err());
    assert!(!latin::are_orthogonal(&LatinSquare::cyclic(3), &LatinSquare::cyclic(3)));
}

#[test]
fn mols_x_sets_have_one_element_per_block() {
    let ks = latin::mols_prime(3, 2).unwrap();
    let xs = latin::mols_x_sets(&ks).unwrap();
    assert_eq!(xs.len(), 9);
    for x in xs {
        assert_eq!(x.len(), 4);
        for (b, e) in x.iter().enumerate() {
            assert!((3 * b + 1..=3 * b + 3).contains(e));
        }
    }
}

#[test]
fn subsquares_of_the_cyclic_square() {
    let k1 = LatinSquare::cyclic(4);
    let found = latin::find_subsquares(&k1, 2);
    let j = Subsquare::new(&k1, &[1, 3], &[2, 4]).unwrap();
    assert!(found.contains(&j));
    for s in &found {
        assert_eq!(Subsquare::new(&k1, s.rows(), s.cols()).unwrap(), *s);
    }
    assert!(latin::find_subsquares(&k1, 3).is_empty());
    assert!(latin::find_subsquares(&LatinSquare::cyclic(3), 2).is_empty());
    assert!(Subsquare::new(&k1, &[1, 2], &[1, 2]).is_err());
}

#[test]
fn degenerations_reject_bad_input() {
    let k1 = LatinSquare::cyclic(4);
    let ks = latin::mols_prime(3, 2).unwrap();
    let j = Subsquare::new(&k1, &[1, 3], &[2, 4]).unwrap();
    assert!(latin::degenerate(&ks, None, std::slice::from_ref(&j)).is_err());
    let u = os_resonance::Matroid::uniform(3, 4).unwrap();
    assert!(latin::degenerate_with_blocks(std::slice::from_ref(&k1), &[u.clone(), u]).is_err());
    let parallel = os_resonance::Matroid::from_circuits(4, &[vec![1, 2]]).unwrap();
    let free = os_resonance::Matroid::uniform(3, 4).unwrap();
    assert!(latin::degenerate_with_blocks(std::slice::from_ref(&k1), &[parallel, free.clone(), free]).is_err());
    let other = LatinSquare::elementary_abelian(4).unwrap();
    assert!(latin::degenerate(&[k1.clone(), other], None, &[]).is_err());
}

#[test]
fn json_round_trip() {
    for k in common::squares() {
        let s = serde_json::to_string(&k.to_json()).unwrap();
        assert_eq!(LatinSquare::from_json(&serde_json::from_str(&s).unwrap()).unwrap(), k);
    }
    for k in common::cubes() {
        let s = serde_json::to_string(&k.to_json()).unwrap();
        assert_eq!(LatinHypercube::from_json(&serde_json::from_str(&s).unwrap()).unwrap(), k);
    }
}

proptest! {
    #[test]
    fn linear_arrays_are_latin(dim in 1usize..=3, order in 1usize..=7, coeffs in prop::collection::vec(1i64..7, 3)) {
        let c = &coeffs[..dim];
        let built = LatinHypercube::linear(dim, order, c);
        prop_assert_eq!(built.is_ok(), latin::linear_coefficients_are_units(order, c));
    }

    #[test]
    fn permuted_squares_stay_latin(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = LatinSquare::cyclic(5);
        let p = k.permuted(&random_perm(5, &mut rng), &random_perm(5, &mut rng), &random_perm(5, &mut rng)).unwrap();
        prop_assert!(p.as_hypercube().validate().is_ok());
        prop_assert!(p.is_isotopic(&k));
    }
}
