//! The graded exterior algebra `E` on generators `e_1, ..., e_n`, its
//! wedge product and the boundary derivation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use thiserror::Error;

use crate::bits::{self, Mask, MAX_GROUND};
use crate::latin::{LatinError, LatinHypercube};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("generator sets differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("at most {MAX_GROUND} generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("generator index {index} outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
}

/// A sparse, possibly inhomogeneous element of `E`.
///
/// Terms are keyed by the bitmask of a strictly increasing index tuple;
/// zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorElement<F> {
    n: usize,
    terms: BTreeMap<Mask, F>,
}

impl<F: Field> ExteriorElement<F> {
    pub fn zero(n: usize) -> Result<Self, ExteriorError> {
        if n > MAX_GROUND {
            return Err(ExteriorError::TooManyGenerators(n));
        }
        Ok(ExteriorElement {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(n: usize) -> Result<Self, ExteriorError> {
        let mut x = Self::zero(n)?;
        x.terms.insert(0, F::one());
        Ok(x)
    }

    /// The generator `e_i` (1-based).
    pub fn generator(n: usize, i: usize) -> Result<Self, ExteriorError> {
        Self::monomial(n, &[i])
    }

    /// `e_{i_1} ^ ... ^ e_{i_p}` for indices in any order; repeated indices
    /// give zero.
    pub fn monomial(n: usize, indices: &[usize]) -> Result<Self, ExteriorError> {
        let mut x = Self::zero(n)?;
        let mut mask: Mask = 0;
        let mut negative = false;
        for &i in indices {
            if i == 0 || i > n {
                return Err(ExteriorError::IndexOutOfRange { index: i, n });
            }
            let b = bits::bit(i);
            if mask & b != 0 {
                return Ok(x);
            }
            negative ^= bits::merge_is_negative(mask, b);
            mask |= b;
        }
        x.terms
            .insert(mask, if negative { -F::one() } else { F::one() });
        Ok(x)
    }

    /// The one-form `sum_i coeffs[i] e_{i+1}`.
    pub fn linear(coeffs: &[F]) -> Result<Self, ExteriorError> {
        let mut x = Self::zero(coeffs.len())?;
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                x.terms.insert(bits::bit(i + 1), c.clone());
            }
        }
        Ok(x)
    }

    pub(crate) fn from_mask_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Mask, F)>,
    ) -> Self {
        let mut x = ExteriorElement {
            n,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as (increasing 1-based index tuple, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &F)> + '_ {
        self.terms.iter().map(|(&m, c)| (bits::elements(m), c))
    }

    pub(crate) fn mask_terms(&self) -> impl Iterator<Item = (Mask, &F)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    /// Coefficient of the monomial with the given increasing indices.
    pub fn coefficient(&self, indices: &[usize]) -> F {
        self.terms
            .get(&bits::mask_of(indices))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// The degree-`p` component.
    pub fn homogeneous_part(&self, p: usize) -> Self {
        ExteriorElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| bits::size(**m) == p)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    /// Degree when homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|&m| bits::size(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub(crate) fn add_term(&mut self, mask: Mask, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return ExteriorElement {
                n: self.n,
                terms: BTreeMap::new(),
            };
        }
        ExteriorElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(&m, x)| {
                    let mut y = x.clone();
                    y *= c;
                    (m, y)
                })
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::DimensionMismatch(self.n, other.n));
        }
        let mut out = ExteriorElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let mut c = ca.clone();
                c *= cb;
                if bits::merge_is_negative(a, b) {
                    c = -c;
                }
                out.add_term(a | b, c);
            }
        }
        Ok(out)
    }

    /// The boundary `d`: `d(1) = 0`, `d(e_i) = 1` and
    /// `d(e_{i_1} ^ ... ^ e_{i_p}) = sum_k (-1)^(k-1) e_{i_1} ^ .. ^ ^e_{i_k} ^ .. ^ e_{i_p}`.
    pub fn boundary(&self) -> Self {
        let mut out = ExteriorElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&m, c) in &self.terms {
            let mut rest = m;
            let mut k = 0;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                let term = if k % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_term(m & !low, term);
                rest &= rest - 1;
                k += 1;
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for ExteriorElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let idx = bits::elements(m);
            if idx.is_empty() {
                write!(f, "{c}")?;
            } else {
                let names: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
                write!(f, "({c})*{}", names.join("^"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> AddAssign<&ExteriorElement<F>> for ExteriorElement<F> {
    /// # Panics
    /// If the generator counts differ.
    fn add_assign(&mut self, rhs: &ExteriorElement<F>) {
        assert_eq!(self.n, rhs.n, "adding exterior elements over different generator sets");
        for (&m, c) in &rhs.terms {
            self.add_term(m, c.clone());
        }
    }
}

impl<F: Field> Add for ExteriorElement<F> {
    type Output = ExteriorElement<F>;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<F: Field> Neg for ExteriorElement<F> {
    type Output = ExteriorElement<F>;
    fn neg(self) -> Self {
        ExteriorElement {
            n: self.n,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Field> Sub for ExteriorElement<F> {
    type Output = ExteriorElement<F>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// `a_s = e_{(s-1)m+1} + ... + e_{sm}`, the sum over the `s`-th block of
/// size `m` (1-based `s`).
pub fn block_sum<F: Field>(n: usize, m: usize, s: usize) -> Result<ExteriorElement<F>, ExteriorError> {
    let mut x = ExteriorElement::zero(n)?;
    for i in (s - 1) * m + 1..=s * m {
        if i > n {
            return Err(ExteriorError::IndexOutOfRange { index: i, n });
        }
        x.add_term(bits::bit(i), F::one());
    }
    Ok(x)
}

/// The four expressions of the decomposable relation attached to a Latin
/// hypercube `K` of dimension `l` and order `m` on `n = (l+1)m` generators:
///
/// * `boundary_of_product` = `d(a_1 ^ ... ^ a_{l+1})`
/// * `peeled` = `-(a_1 - a_2) ^ d(a_2 ^ ... ^ a_{l+1})`
/// * `differences` = `(-1)^l m (a_1 - a_2) ^ ... ^ (a_l - a_{l+1})`
/// * `circuit_sum` = `m sum_{S in C[K]} d(e_S)`
#[derive(Clone, Debug)]
pub struct DecomposableRelation<F> {
    pub boundary_of_product: ExteriorElement<F>,
    pub peeled: ExteriorElement<F>,
    pub differences: ExteriorElement<F>,
    pub circuit_sum: ExteriorElement<F>,
}

impl<F: Field> DecomposableRelation<F> {
    pub fn holds(&self) -> bool {
        self.boundary_of_product == self.peeled
            && self.peeled == self.differences
            && self.differences == self.circuit_sum
    }
}

#[derive(Debug, Error)]
pub enum RelationError {
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

pub fn decomposable_relation<F: Field>(
    k: &LatinHypercube,
) -> Result<DecomposableRelation<F>, RelationError> {
    k.validate()?;
    let l = k.dim();
    let m = k.order();
    let n = (l + 1) * m;
    let a: Vec<ExteriorElement<F>> = (1..=l + 1)
        .map(|s| block_sum(n, m, s))
        .collect::<Result<_, _>>()?;

    let wedge_all = |xs: &[ExteriorElement<F>]| -> Result<ExteriorElement<F>, ExteriorError> {
        let mut acc = ExteriorElement::one(n)?;
        for x in xs {
            acc = acc.wedge(x)?;
        }
        Ok(acc)
    };

    let boundary_of_product = wedge_all(&a)?.boundary();
    let peeled = -(a[0].clone() - a[1].clone()).wedge(&wedge_all(&a[1..])?.boundary())?;
    let diffs: Vec<ExteriorElement<F>> = (0..l).map(|s| a[s].clone() - a[s + 1].clone()).collect();
    let sign = if l.is_multiple_of(2) { F::one() } else { -F::one() };
    let differences = wedge_all(&diffs)?.scale(&(sign * F::from_i64(m as i64)));

    let mut circuit_sum = ExteriorElement::zero(n)?;
    for s in k.circuit_family()?.members() {
        circuit_sum += &ExteriorElement::<F>::monomial(n, s)?.boundary();
    }
    let circuit_sum = circuit_sum.scale(&F::from_i64(m as i64));

    Ok(DecomposableRelation {
        boundary_of_product,
        peeled,
        differences,
        circuit_sum,
    })
}

/// True iff all three equalities of the decomposable relation hold
/// identically in `E` for `K`.
pub fn decomposable_relation_check(k: &LatinHypercube) -> Result<bool, RelationError> {
    Ok(decomposable_relation::<crate::scalar::Rational>(k)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type X = ExteriorElement<Rational>;

    fn e(n: usize, idx: &[usize]) -> X {
        X::monomial(n, idx).unwrap()
    }

    #[test]
    fn alternation() {
        let e1 = e(3, &[1]);
        assert!(e1.wedge(&e1).unwrap().is_zero());
    }

    #[test]
    fn antisymmetry() {
        let w = e(3, &[2]).wedge(&e(3, &[1])).unwrap();
        assert_eq!(w, -e(3, &[1, 2]));
        assert_eq!(e(3, &[2, 1]), -e(3, &[1, 2]));
        assert!(e(3, &[2, 2]).is_zero());
    }

    #[test]
    fn bilinearity() {
        let lhs = (e(3, &[1]) + e(3, &[2])).wedge(&e(3, &[3])).unwrap();
        assert_eq!(lhs, e(3, &[1, 3]) + e(3, &[2, 3]));
    }

    #[test]
    fn boundary_of_e12() {
        assert_eq!(e(2, &[1, 2]).boundary(), e(2, &[2]) - e(2, &[1]));
        assert_eq!(e(2, &[1]).boundary(), X::one(2).unwrap());
        assert!(X::one(2).unwrap().boundary().is_zero());
    }

    #[test]
    fn boundary_squares_to_zero_on_e123() {
        assert!(e(3, &[1, 2, 3]).boundary().boundary().is_zero());
    }

    #[test]
    fn boundary_of_block_product_for_order_two() {
        let n = 6;
        let a: Vec<X> = (1..=3).map(|s| block_sum(n, 2, s).unwrap()).collect();
        let prod = a[0].wedge(&a[1]).unwrap().wedge(&a[2]).unwrap();
        let mut rhs = X::zero(n).unwrap();
        for s in [[1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]] {
            rhs += &e(n, &s).boundary();
        }
        assert_eq!(prod.boundary(), rhs.scale(&rat(2)));
    }

    #[test]
    fn mismatched_generators() {
        assert_eq!(
            e(3, &[1]).wedge(&e(4, &[1])),
            Err(ExteriorError::DimensionMismatch(3, 4))
        );
        assert!(X::monomial(3, &[4]).is_err());
        assert!(X::zero(65).is_err());
    }

    #[test]
    fn homogeneous_parts() {
        let x = e(4, &[1]) + e(4, &[2, 3]) + X::one(4).unwrap();
        assert_eq!(x.degree(), None);
        assert_eq!(x.homogeneous_part(2), e(4, &[2, 3]));
        assert_eq!(x.homogeneous_part(2).degree(), Some(2));
        assert_eq!(x.coefficient(&[2, 3]), rat(1));
    }
}
