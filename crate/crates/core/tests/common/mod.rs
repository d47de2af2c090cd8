#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use os_resonance::exterior::ExteriorElement;
use os_resonance::latin::{self, LatinHypercube, LatinSquare};
use os_resonance::matroid::Matroid;
use os_resonance::scalar::{rat, Field, Matrix, Rational};
use os_resonance::Weight;
use rand::Rng;

/// Latin squares of orders 2..=4, one per main class plus a few named ones.
pub fn squares() -> Vec<LatinSquare> {
    let mut out = vec![
        LatinSquare::cyclic(2),
        LatinSquare::cyclic(3),
        LatinSquare::cyclic(4),
        LatinSquare::elementary_abelian(4).unwrap(),
    ];
    for m in 2..=4 {
        out.extend(latin::main_class_representatives(m).unwrap());
    }
    out
}

pub fn xor_cube(m: usize) -> LatinHypercube {
    let cells = (0..m * m * m)
        .map(|f| ((f / (m * m)) ^ ((f / m) % m) ^ (f % m)) + 1)
        .collect();
    LatinHypercube::new(3, m, cells).unwrap()
}

/// Cubes of orders 2..=4.
pub fn cubes() -> Vec<LatinHypercube> {
    vec![
        LatinHypercube::linear(3, 2, &[1, 1, 1]).unwrap(),
        LatinHypercube::linear(3, 3, &[1, 1, 1]).unwrap(),
        LatinHypercube::linear(3, 3, &[1, 2, 1]).unwrap(),
        LatinHypercube::linear(3, 3, &[2, 2, 1]).unwrap(),
        LatinHypercube::linear(3, 4, &[1, 1, 1]).unwrap(),
        LatinHypercube::linear(3, 4, &[1, 3, 1]).unwrap(),
        xor_cube(4),
    ]
}

pub fn hypercubes() -> Vec<LatinHypercube> {
    let mut out: Vec<LatinHypercube> = squares().iter().map(|k| k.as_hypercube()).collect();
    out.extend(cubes());
    out
}

/// Small matroids with at most nine elements.
pub fn small_matroids() -> Vec<(String, Matroid)> {
    vec![
        ("U(3,4)".into(), Matroid::uniform(3, 4).unwrap()),
        ("U(2,5)".into(), Matroid::uniform(2, 5).unwrap()),
        ("near-pencil".into(), LatinSquare::new(vec![vec![1]]).unwrap().build_matroid().unwrap()),
        ("ceva".into(), LatinSquare::cyclic(2).build_matroid().unwrap()),
        ("pappus".into(), LatinSquare::cyclic(3).build_matroid().unwrap()),
        (
            "order-2 cube".into(),
            LatinHypercube::linear(3, 2, &[1, 1, 1]).unwrap().build_matroid().unwrap(),
        ),
        (
            "parallel pair".into(),
            Matroid::from_circuits(4, &[vec![1, 2], vec![1, 3, 4], vec![2, 3, 4]]).unwrap(),
        ),
    ]
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

/// Random nonzero block values summing to zero.
pub fn random_zero_sum_blocks<R: Rng>(rng: &mut R, blocks: usize) -> Vec<Rational> {
    loop {
        let mut v: Vec<Rational> = (0..blocks - 1).map(|_| random_rational(rng)).collect();
        let s: Rational = v.iter().cloned().sum();
        v.push(-s);
        if v.iter().any(|x| *x != rat(0)) {
            return v;
        }
    }
}

/// Random weight whose entries do not sum to zero.
pub fn random_nonzero_sum_weight<R: Rng>(rng: &mut R, n: usize) -> Weight<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| random_rational(rng)).collect();
        let w = Weight::new(v);
        if !w.sum_zero() {
            return w;
        }
    }
}

/// Random weight whose entries sum to zero.
pub fn random_zero_sum_weight<R: Rng>(rng: &mut R, n: usize) -> Weight<Rational> {
    Weight::new(random_zero_sum_blocks(rng, n))
}

/// Independent computation on the raw quotient E / I, where I is spanned by
/// `∂e_C ∧ e_T` for every circuit C and every monomial e_T.
pub struct Quotient {
    pub n: usize,
    pub ideal: Vec<Vec<Vec<Rational>>>,
}

fn p_subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == p)
        .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

fn coords<F: Field>(x: &ExteriorElement<F>, basis: &[Vec<usize>]) -> Vec<F> {
    basis.iter().map(|s| x.coefficient(s)).collect()
}

/// Row basis of the span of `rows`, reduced a chunk at a time.
fn row_basis(cols: usize, rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for chunk in rows.chunks(256) {
        let mut all = basis.clone();
        all.extend(chunk.iter().cloned());
        let (r, pivots) = Matrix::from_rows(all).unwrap().rref().unwrap();
        basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        if basis.len() == cols {
            break;
        }
    }
    basis
}

impl Quotient {
    pub fn new(m: &Matroid) -> Self {
        let n = m.n();
        let mut ideal = vec![Vec::new(); n + 1];
        for c in m.circuits() {
            let dc = ExteriorElement::<Rational>::monomial(n, &c).unwrap().boundary();
            for t in 0..=n + 1 - c.len() {
                let p = c.len() - 1 + t;
                let basis = p_subsets(n, p);
                for s in p_subsets(n, t) {
                    let x = dc.wedge(&ExteriorElement::monomial(n, &s).unwrap()).unwrap();
                    if !x.is_zero() {
                        ideal[p].push(coords(&x, &basis));
                    }
                }
            }
        }
        let ideal = ideal
            .into_iter()
            .enumerate()
            .map(|(p, rows)| row_basis(p_subsets(n, p).len(), rows))
            .collect();
        Quotient { n, ideal }
    }

    fn rank_with<F: Field>(&self, p: usize, extra: Vec<Vec<F>>) -> usize {
        let cols = p_subsets(self.n, p).len();
        let mut rows: Vec<Vec<F>> = self.ideal[p]
            .iter()
            .map(|r| r.iter().map(F::from_rational).collect())
            .collect();
        rows.extend(extra);
        if rows.is_empty() || cols == 0 {
            return 0;
        }
        Matrix::from_rows(rows).unwrap().rank().unwrap()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.n)
            .map(|p| p_subsets(self.n, p).len() - self.rank_with::<Rational>(p, Vec::new()))
            .collect()
    }

    /// Rank of `e_λ ∧ : A^p -> A^{p+1}`.
    fn image<F: Field>(&self, w: &Weight<F>, p: usize) -> usize {
        if p + 1 > self.n {
            return 0;
        }
        let form = w.one_form().unwrap();
        let target = p_subsets(self.n, p + 1);
        let images: Vec<Vec<F>> = p_subsets(self.n, p)
            .iter()
            .map(|s| coords(&form.wedge(&ExteriorElement::monomial(self.n, s).unwrap()).unwrap(), &target))
            .collect();
        self.rank_with(p + 1, images) - self.rank_with::<F>(p + 1, Vec::new())
    }

    pub fn cohomology<F: Field>(&self, w: &Weight<F>) -> Vec<usize> {
        let dims = self.dims();
        let top = dims.iter().rposition(|&d| d > 0).unwrap();
        (0..=top)
            .map(|p| dims[p] - self.image(w, p) - if p > 0 { self.image(w, p - 1) } else { 0 })
            .collect()
    }
}

/// Absolute values of the Möbius function summed over flats of each rank.
pub fn whitney_numbers(m: &Matroid) -> Vec<usize> {
    let flats: Vec<Vec<BTreeSet<usize>>> = (0..=m.rank())
        .map(|r| m.flats_of_rank(r).into_iter().map(|f| f.into_iter().collect()).collect())
        .collect();
    let mut mu: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let mut out = Vec::new();
    for (r, level) in flats.iter().enumerate() {
        let mut total = 0;
        for x in level {
            let value = if r == 0 {
                1
            } else {
                -flats[..r]
                    .iter()
                    .flatten()
                    .filter(|y| y.is_subset(x))
                    .map(|y| mu[&y.iter().copied().collect::<Vec<_>>()])
                    .sum::<i64>()
            };
            total += value.unsigned_abs() as usize;
            mu.insert(x.iter().copied().collect(), value);
        }
        out.push(total);
    }
    out
}


/// Matroids with at most nine elements that the quotient oracle can handle.
pub fn oracle_matroids() -> Vec<(String, Matroid)> {
    let mut out = small_matroids();
    out.push((
        "M1 block".into(),
        Matroid::from_circuits(4, &[vec![1, 2, 4]]).unwrap(),
    ));
    for name in ["higher-B", "b3"] {
        let m = os_resonance::realization::catalog(name)
            .unwrap()
            .configuration
            .underlying_matroid()
            .unwrap();
        out.push((name.into(), m));
    }
    out.into_iter().filter(|(_, m)| m.n() <= 9).collect()
}

