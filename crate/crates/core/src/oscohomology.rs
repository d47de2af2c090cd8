//! The Orlik–Solomon algebra `A(M) = E / <dM>` in nbc coordinates, the
//! complexes `(A(M), e_l ^)` and `(dA(M), e_l ^)`, and exact dimensions of
//! their cohomology.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::exterior::{self, ExteriorElement, ExteriorError};
use crate::latin::{build_matroid_mols, LatinError, LatinHypercube, LatinSquare};
use crate::matroid::{Matroid, MatroidError};
use crate::scalar::{parse_rational, Field, Matrix, Rational, ScalarError};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("weight has {found} entries, the matroid has {expected} elements")]
    WeightLength { expected: usize, found: usize },
    #[error("element lives on {found} generators, the matroid has {expected} elements")]
    GeneratorMismatch { expected: usize, found: usize },
    #[error("witness undefined: {0}")]
    WitnessUndefined(String),
    #[error("not a block weight: {0}")]
    NotBlockWeight(String),
    #[error("internal consistency check failed: {0}")]
    ConsistencyCheck(String),
    #[error("cannot parse weight: {0}")]
    Parse(String),
    #[error("coefficient overflow while reducing")]
    Overflow,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// A weight `l = (l_1, .., l_n)` and the one-form `e_l = sum l_i e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight<F> {
    values: Vec<F>,
}

impl<F: Field> Weight<F> {
    pub fn new(values: Vec<F>) -> Self {
        Weight { values }
    }

    /// Block weight: each of `block_values` repeated `m` times.
    pub fn from_blocks(m: usize, block_values: &[F]) -> Self {
        Weight {
            values: block_values
                .iter()
                .flat_map(|v| std::iter::repeat_n(v.clone(), m))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn sum(&self) -> F {
        let mut s = F::zero();
        for v in &self.values {
            s += v;
        }
        s
    }

    pub fn sum_zero(&self) -> bool {
        self.sum().is_zero()
    }

    pub fn scale(&self, c: &F) -> Self {
        Weight {
            values: self
                .values
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    w *= c;
                    w
                })
                .collect(),
        }
    }

    /// Block values when the weight is constant on consecutive blocks of
    /// size `m`.
    pub fn block_values(&self, m: usize) -> Option<Vec<F>> {
        if m == 0 || !self.values.len().is_multiple_of(m) {
            return None;
        }
        let chunks: Vec<&[F]> = self.values.chunks(m).collect();
        if chunks.iter().all(|c| c.iter().all(|v| *v == c[0])) {
            Some(chunks.iter().map(|c| c[0].clone()).collect())
        } else {
            None
        }
    }

    pub fn one_form(&self) -> Result<ExteriorElement<F>, ExteriorError> {
        ExteriorElement::linear(&self.values)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Weight<G> {
        Weight {
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl Weight<Rational> {
    /// Parses comma-separated rationals such as `"1,1,-2"` or `"1/2, -1/2"`.
    pub fn parse(s: &str) -> Result<Self, CohomologyError> {
        let values = s
            .split(',')
            .map(|t| parse_rational(t).map_err(|e| CohomologyError::Parse(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Weight { values })
    }
}

/// Dimensions of `H^p(A(M), e_l)` for `p = 0..=rank` and, when the weight
/// sums to zero, of `H^p(dA(M), e_l)` for `p = 0..rank`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    #[serde(rename = "dims_A")]
    pub dims_a: Vec<usize>,
    #[serde(rename = "dims_dA")]
    pub dims_da: Option<Vec<usize>>,
    pub weight: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trivial_weight: bool,
}

impl CohomologyReport {
    pub fn is_zero(&self) -> bool {
        self.dims_a.iter().all(|&d| d == 0)
    }

    pub fn h(&self, p: usize) -> usize {
        self.dims_a.get(p).copied().unwrap_or(0)
    }
}

type Expansion = Arc<[(Mask, i64)]>;

/// `A(M)` with an nbc basis for a fixed linear order of the ground set.
///
/// Internally every element is renamed to its position in the order, so
/// that "least" is always the lowest bit; monomial signs are converted at
/// the boundary of the public API.
pub struct OsAlgebra {
    matroid: Matroid,
    order: Vec<usize>,
    pos: Vec<usize>,
    pm: Matroid,
    basis: Vec<Vec<Mask>>,
    index: Vec<HashMap<Mask, usize>>,
    cache: RwLock<HashMap<Mask, Expansion>>,
}

impl std::fmt::Debug for OsAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OsAlgebra")
            .field("n", &self.matroid.n())
            .field("order", &self.order)
            .field("dims", &self.dims())
            .finish()
    }
}

fn permutation_is_odd(v: &[usize]) -> bool {
    let mut inv = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

impl OsAlgebra {
    /// The algebra with the natural order `1 < 2 < .. < n`.
    pub fn new(matroid: &Matroid) -> Result<Self, CohomologyError> {
        let order: Vec<usize> = (1..=matroid.n()).collect();
        Self::with_order(matroid, &order)
    }

    /// `order` lists the ground set from least to greatest.
    pub fn with_order(matroid: &Matroid, order: &[usize]) -> Result<Self, CohomologyError> {
        let pos = matroid.order_positions(order)?;
        if let Some(&e) = matroid.loops().first() {
            return Err(MatroidError::Loop(e).into());
        }
        let pos: Vec<usize> = pos.iter().map(|&p| p.wrapping_add(1)).collect();
        let relabel = |c: Mask| bits::elements(c).iter().fold(0, |acc, &e| acc | bits::bit(pos[e]));
        let pm = Matroid::from_circuit_masks(
            matroid.n(),
            matroid.circuit_masks().iter().map(|&c| relabel(c)).collect(),
        );
        let natural: Vec<usize> = (1..=matroid.n()).collect();
        let mut basis = Vec::with_capacity(pm.rank() + 1);
        let mut index = Vec::with_capacity(pm.rank() + 1);
        for p in 0..=pm.rank() {
            let sets: Vec<Mask> = pm
                .nbc_sets(&natural, p)?
                .iter()
                .map(|s| bits::mask_of(s))
                .collect();
            index.push(sets.iter().enumerate().map(|(i, &s)| (s, i)).collect());
            basis.push(sets);
        }
        Ok(OsAlgebra {
            matroid: matroid.clone(),
            order: order.to_vec(),
            pos,
            pm,
            basis,
            index,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.pm.rank()
    }

    /// `dim A^p`; zero above the rank.
    pub fn dim(&self, p: usize) -> usize {
        self.basis.get(p).map_or(0, |b| b.len())
    }

    /// `dim A^p` for `p = 0..=rank`.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    /// The nbc basis of `A^p` as increasing tuples of original elements.
    pub fn basis(&self, p: usize) -> Vec<Vec<usize>> {
        self.basis
            .get(p)
            .map(|b| b.iter().map(|&m| self.to_elements(m).0).map(bits::elements).collect())
            .unwrap_or_default()
    }

    fn to_pos(&self, m: Mask) -> (Mask, bool) {
        let p: Vec<usize> = bits::elements(m).iter().map(|&e| self.pos[e]).collect();
        (bits::mask_of(&p), permutation_is_odd(&p))
    }

    fn to_elements(&self, pm: Mask) -> (Mask, bool) {
        let o: Vec<usize> = bits::elements(pm).iter().map(|&p| self.order[p - 1]).collect();
        (bits::mask_of(&o), permutation_is_odd(&o))
    }

    /// The nbc expansion of the position-space monomial `s`.
    fn reduce_pos(&self, s: Mask) -> Result<Expansion, CohomologyError> {
        if let Some(v) = self.cache.read().expect("cache lock").get(&s) {
            return Ok(v.clone());
        }
        let result: Expansion = if !self.pm.is_independent_mask(s) {
            Arc::from(Vec::new())
        } else if let Some(c) = self.broken_circuit_in(s) {
            let c0 = c & c.wrapping_neg();
            let b = c & !c0;
            let r = s & !b;
            let base_negative = bits::merge_is_negative(b, r);
            let mut acc: HashMap<Mask, i64> = HashMap::new();
            // e_B = sum_{k >= 1} (-1)^(k+1) e_{C \ c_k}, from d(e_C) = 0
            for (k, ck) in bits::elements(c).into_iter().enumerate().skip(1) {
                let m1 = c & !bits::bit(ck);
                let negative = (k % 2 == 0) ^ base_negative ^ bits::merge_is_negative(m1, r);
                for &(mm, v) in self.reduce_pos(m1 | r)?.iter() {
                    let term = if negative { v.checked_neg() } else { Some(v) }
                        .ok_or(CohomologyError::Overflow)?;
                    let entry = acc.entry(mm).or_insert(0);
                    *entry = entry.checked_add(term).ok_or(CohomologyError::Overflow)?;
                }
            }
            let mut v: Vec<(Mask, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            v.sort_unstable();
            Arc::from(v)
        } else {
            Arc::from(vec![(s, 1)])
        };
        self.cache
            .write()
            .expect("cache lock")
            .insert(s, result.clone());
        Ok(result)
    }

    /// A circuit `C` whose broken part `C \ min C` lies in `s`.
    fn broken_circuit_in(&self, s: Mask) -> Option<Mask> {
        let k = bits::size(s);
        (2..=k + 1)
            .flat_map(|size| self.pm.circuits_of_size_masks(size).iter())
            .copied()
            .find(|&c| {
                let c0 = c & c.wrapping_neg();
                (c & !c0) & !s == 0 && c0 & s == 0
            })
    }

    fn check_n(&self, n: usize) -> Result<(), CohomologyError> {
        if n != self.matroid.n() {
            return Err(CohomologyError::GeneratorMismatch {
                expected: self.matroid.n(),
                found: n,
            });
        }
        Ok(())
    }

    /// The representative of `x + <dM>` supported on nbc monomials.
    pub fn reduce<F: Field>(&self, x: &ExteriorElement<F>) -> Result<ExteriorElement<F>, CohomologyError> {
        self.check_n(x.n())?;
        let mut terms = Vec::new();
        for (m, c) in x.mask_terms() {
            let (pm, neg) = self.to_pos(m);
            for &(nm, v) in self.reduce_pos(pm)?.iter() {
                let (om, neg2) = self.to_elements(nm);
                let mut coeff = c.clone();
                coeff *= &F::from_i64(v);
                if neg ^ neg2 {
                    coeff = -coeff;
                }
                terms.push((om, coeff));
            }
        }
        Ok(ExteriorElement::from_mask_terms(x.n(), terms))
    }

    /// Coordinates of the degree-`p` part of `x` in the nbc basis of `A^p`.
    pub fn coordinates<F: Field>(&self, x: &ExteriorElement<F>, p: usize) -> Result<Vec<F>, CohomologyError> {
        self.check_n(x.n())?;
        let mut v = vec![F::zero(); self.dim(p)];
        for (m, c) in x.mask_terms() {
            if bits::size(m) != p {
                continue;
            }
            let (pm, neg) = self.to_pos(m);
            for &(nm, k) in self.reduce_pos(pm)?.iter() {
                let mut coeff = c.clone();
                coeff *= &F::from_i64(k);
                if neg {
                    coeff = -coeff;
                }
                v[self.index[p][&nm]] += &coeff;
            }
        }
        Ok(v)
    }

    /// The element with the given coordinates in the nbc basis of `A^p`.
    pub fn from_coordinates<F: Field>(&self, p: usize, coords: &[F]) -> ExteriorElement<F> {
        let terms = self.basis[p].iter().zip(coords).map(|(&pm, c)| {
            let (om, neg) = self.to_elements(pm);
            (om, if neg { -c.clone() } else { c.clone() })
        });
        ExteriorElement::from_mask_terms(self.matroid.n(), terms)
    }

    fn weight_in_positions<F: Field>(&self, w: &Weight<F>) -> Result<Vec<F>, CohomologyError> {
        if w.len() != self.matroid.n() {
            return Err(CohomologyError::WeightLength {
                expected: self.matroid.n(),
                found: w.len(),
            });
        }
        Ok(self.order.iter().map(|&e| w.values[e - 1].clone()).collect())
    }

    /// Matrix of `e_l ^ : A^p -> A^{p+1}` in nbc coordinates.
    pub fn multiplication_matrix<F: Field>(&self, w: &Weight<F>, p: usize) -> Result<Matrix<F>, CohomologyError> {
        let lam = self.weight_in_positions(w)?;
        self.multiplication_in_positions(&lam, p)
    }

    fn multiplication_in_positions<F: Field>(&self, lam: &[F], p: usize) -> Result<Matrix<F>, CohomologyError> {
        let rows = self.dim(p + 1);
        let cols = self.dim(p);
        let mut data = vec![vec![F::zero(); cols]; rows];
        if rows > 0 {
            for (j, &s) in self.basis[p].iter().enumerate() {
                for (i, li) in lam.iter().enumerate() {
                    let b = bits::bit(i + 1);
                    if li.is_zero() || s & b != 0 {
                        continue;
                    }
                    let negative = bits::merge_is_negative(b, s);
                    for &(mm, v) in self.reduce_pos(s | b)?.iter() {
                        let mut t = li.clone();
                        t *= &F::from_i64(if negative { -v } else { v });
                        data[self.index[p + 1][&mm]][j] += &t;
                    }
                }
            }
        }
        Ok(Matrix::from_fn(rows, cols, |i, j| data[i][j].clone()))
    }

    /// Matrix of the induced boundary `A^p -> A^{p-1}`; subsets of nbc sets
    /// are nbc, so no reduction is needed.
    pub fn boundary_matrix<F: Field>(&self, p: usize) -> Matrix<F> {
        if p == 0 {
            return Matrix::zeros(0, self.dim(0));
        }
        let rows = self.dim(p - 1);
        let mut m = Matrix::zeros(rows, self.dim(p));
        for (j, &s) in self.basis.get(p).into_iter().flatten().enumerate() {
            for (k, e) in bits::elements(s).into_iter().enumerate() {
                let i = self.index[p - 1][&(s & !bits::bit(e))];
                m.set(i, j, if k % 2 == 0 { F::one() } else { -F::one() });
            }
        }
        m
    }

    /// Exact dimensions of `H^p(A, e_l)` and, for weights summing to zero,
    /// of `H^p(dA, e_l)`, with the splitting identity and both Euler
    /// characteristics verified.
    pub fn cohomology<F: Field>(&self, w: &Weight<F>) -> Result<CohomologyReport, CohomologyError> {
        let lam = self.weight_in_positions(w)?;
        let r = self.rank();
        let dims = self.dims();

        let mults: Vec<Matrix<F>> = (0..=r)
            .map(|p| self.multiplication_in_positions(&lam, p))
            .collect::<Result<_, _>>()?;
        let ranks: Vec<usize> = mults
            .iter()
            .map(|m| m.rank_cross_checked())
            .collect::<Result<_, _>>()?;
        let dims_a: Vec<usize> = (0..=r)
            .map(|p| dims[p] - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 })
            .collect();
        check_euler(&dims, &dims_a, "A")?;

        let dims_da = if w.sum_zero() {
            Some(self.boundary_complex(&mults, &dims_a)?)
        } else {
            None
        };

        Ok(CohomologyReport {
            dims_a,
            dims_da,
            weight: w.to_strings(),
            trivial_weight: w.is_zero(),
        })
    }

    /// Cohomology of `(dA, e_l ^)`, with `dA^p` the column space of the
    /// boundary `A^{p+1} -> A^p`.
    fn boundary_complex<F: Field>(&self, mults: &[Matrix<F>], dims_a: &[usize]) -> Result<Vec<usize>, CohomologyError> {
        let r = self.rank();
        // column bases B_p of dA^p for p = 0..=r (B_r is empty)
        let mut bases: Vec<Matrix<F>> = Vec::with_capacity(r + 1);
        for p in 0..=r {
            let d = self.boundary_matrix::<F>(p + 1);
            let cols: Vec<Vec<F>> = if p < r {
                d.pivot_columns()?.iter().map(|&j| d.column(j)).collect()
            } else {
                Vec::new()
            };
            bases.push(Matrix::from_columns(self.dim(p), &cols)?);
        }
        let dims_d: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut restricted = Vec::with_capacity(r);
        for p in 0..r {
            let image = mults[p].mul(&bases[p])?;
            let rk = image.rank()?;
            let joint = bases[p + 1].hstack(&image)?.rank()?;
            if joint != dims_d[p + 1] {
                return Err(CohomologyError::ConsistencyCheck(format!(
                    "e_l ^ does not preserve dA in degree {p}"
                )));
            }
            restricted.push(rk);
        }
        let dims_da: Vec<usize> = (0..r)
            .map(|p| dims_d[p] - restricted[p] - if p > 0 { restricted[p - 1] } else { 0 })
            .collect();
        check_euler(&dims_d[..r], &dims_da, "dA")?;
        for q in 0..=r {
            let upper = dims_da.get(q).copied().unwrap_or(0);
            let lower = if q > 0 { dims_da[q - 1] } else { 0 };
            if dims_a[q] != upper + lower {
                return Err(CohomologyError::ConsistencyCheck(format!(
                    "splitting fails in degree {q}: {} != {upper} + {lower}",
                    dims_a[q]
                )));
            }
        }
        Ok(dims_da)
    }
}

fn check_euler(chain: &[usize], cohom: &[usize], name: &str) -> Result<(), CohomologyError> {
    let alt = |v: &[usize]| -> i64 {
        v.iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    };
    if alt(chain) != alt(cohom) {
        return Err(CohomologyError::ConsistencyCheck(format!(
            "Euler characteristic of the {name} complex does not match its cohomology"
        )));
    }
    Ok(())
}

/// Convenience: the cohomology report of `M` with the natural nbc order.
pub fn cohomology<F: Field>(m: &Matroid, w: &Weight<F>) -> Result<CohomologyReport, CohomologyError> {
    OsAlgebra::new(m)?.cohomology(w)
}

/// The class `b = d(a_2 ^ .. ^ a_{l+1})` (blocks relabelled so that the
/// first has a nonzero value) certifying `H^{l-1}(A(M[K]), e_l) != 0`.
#[derive(Clone, Debug)]
pub struct Witness<F> {
    /// `b` in nbc coordinates.
    pub element: ExteriorElement<F>,
    pub degree: usize,
    /// The block whose sum was left out of the product (1-based).
    pub pivot_block: usize,
}

/// Builds and certifies the non-vanishing witness for a block weight with
/// vanishing block sum: `b != 0` in `A^{l-1}`, `e_l ^ b = 0`, and `b` is not
/// in the image of `e_l ^` from `A^{l-2}`.
pub fn nonvanishing_witness<F: Field>(k: &LatinHypercube, w: &Weight<F>) -> Result<Witness<F>, CohomologyError> {
    let alg = OsAlgebra::new(&k.build_matroid()?)?;
    nonvanishing_witness_in(&alg, k, w)
}

/// As [`nonvanishing_witness`], reusing an algebra of `M[K]`.
pub fn nonvanishing_witness_in<F: Field>(
    alg: &OsAlgebra,
    k: &LatinHypercube,
    w: &Weight<F>,
) -> Result<Witness<F>, CohomologyError> {
    let (l, m) = (k.dim(), k.order());
    let n = (l + 1) * m;
    if w.len() != n {
        return Err(CohomologyError::WeightLength { expected: n, found: w.len() });
    }
    alg.check_n(n)?;
    if w.is_zero() {
        return Err(CohomologyError::WitnessUndefined("zero weight".into()));
    }
    let blocks = w
        .block_values(m)
        .ok_or_else(|| CohomologyError::NotBlockWeight(format!("weight is not constant on blocks of size {m}")))?;
    if !w.sum_zero() {
        return Err(CohomologyError::WitnessUndefined("block values do not sum to zero".into()));
    }
    let pivot = blocks.iter().position(|v| !v.is_zero()).expect("nonzero weight");

    let mut product = ExteriorElement::<F>::one(n)?;
    for s in (1..=l + 1).filter(|&s| s != pivot + 1) {
        product = product.wedge(&exterior::block_sum(n, m, s)?)?;
    }
    let b = alg.reduce(&product.boundary())?;
    let p = l - 1;

    if b.is_zero() {
        return Err(CohomologyError::ConsistencyCheck("witness vanishes in A".into()));
    }
    let killed = alg.reduce(&w.one_form()?.wedge(&b)?)?;
    if !killed.is_zero() {
        return Err(CohomologyError::ConsistencyCheck("witness is not a cocycle".into()));
    }
    if p > 0 {
        let prev = alg.multiplication_matrix(w, p - 1)?;
        let coords = alg.coordinates(&b, p)?;
        let with_b = prev.hstack(&Matrix::from_columns(coords.len(), &[coords])?)?;
        if with_b.rank()? == prev.rank()? {
            return Err(CohomologyError::ConsistencyCheck("witness is a coboundary".into()));
        }
    }
    Ok(Witness {
        element: b,
        degree: p,
        pivot_block: pivot + 1,
    })
}

/// `dim H^1(A(M[K_1, .., K_s]), e_l)` for mutually orthogonal squares.
pub fn h1_dimension_mols<F: Field>(ks: &[LatinSquare], w: &Weight<F>) -> Result<usize, CohomologyError> {
    let m = build_matroid_mols(ks)?;
    if w.len() != m.n() {
        return Err(CohomologyError::WeightLength { expected: m.n(), found: w.len() });
    }
    Ok(cohomology(&m, w)?.h(1))
}
