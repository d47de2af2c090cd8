use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{row_content, Field, Rational, ScalarError};

static PHI_CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` and memoized.
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let cache = PHI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("phi cache poisoned").get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = div_exact_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    let poly: Arc<[i64]> = poly.into();
    cache
        .lock()
        .expect("phi cache poisoned")
        .insert(n, poly.clone());
    poly
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n as usize;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m as usize;
    }
    result
}

/// Element of the cyclotomic field `Q(zeta_n) = Q[x] / Phi_n(x)`.
///
/// Stored as the residue modulo `Phi_n`, so the coefficient vector always
/// has length `phi(n)`. Conductor 1 denotes plain rationals; those combine
/// with elements of any conductor. Arithmetic between two different
/// conductors other than 1 panics; [`super::Matrix`] checks compatibility
/// up front and reports it as an error instead.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds the residue of `sum coeffs[k] x^k` modulo `Phi_conductor`.
    pub fn new(conductor: u32, coeffs: Vec<Rational>) -> Result<Self, ScalarError> {
        if conductor == 0 {
            return Err(ScalarError::InvalidConductor(conductor));
        }
        let mut coeffs = coeffs;
        if conductor <= 2 {
            // zeta_1 = 1 and zeta_2 = -1: both fields are Q itself.
            let mut value = Rational::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if conductor == 2 && k % 2 == 1 {
                    value -= c;
                } else {
                    value += c;
                }
            }
            return Ok(Self::from_rational(value));
        }
        reduce_mod_phi(&mut coeffs, conductor);
        Ok(Cyclotomic { conductor, coeffs })
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// The primitive root of unity `zeta_n = exp(2 pi i / n)`.
    pub fn zeta(n: u32) -> Result<Self, ScalarError> {
        Self::zeta_pow(n, 1)
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Result<Self, ScalarError> {
        if n == 0 {
            return Err(ScalarError::InvalidConductor(n));
        }
        let e = k.rem_euclid(n as i64) as usize;
        if n <= 2 {
            let v = if n == 2 && e == 1 { -1 } else { 1 };
            return Ok(Self::from_rational(Rational::from_i64(v)));
        }
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::new(n, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    /// Views the element inside `Q(zeta_n)`. Only rationals move between
    /// conductors.
    pub fn embed(&self, n: u32) -> Result<Self, ScalarError> {
        let n = if n == 2 { 1 } else { n };
        if n == 0 {
            return Err(ScalarError::InvalidConductor(n));
        }
        if self.conductor == n {
            return Ok(self.clone());
        }
        if self.conductor == 1 {
            if n == 1 {
                return Ok(self.clone());
            }
            let mut coeffs = vec![Rational::zero(); euler_phi(n)];
            coeffs[0] = self.coeffs[0].clone();
            return Ok(Cyclotomic {
                conductor: n,
                coeffs,
            });
        }
        Err(ScalarError::IncompatibleFields(self.conductor, n))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm with
    /// `Phi_n`, which is irreducible over Q.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| Rational::from_i64(c))
            .collect();
        let mut r0 = phi;
        let mut r1 = trimmed(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; a nonzero constant because Phi_n is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let coeffs: Vec<Rational> = s0.into_iter().map(|x| x * &c).collect();
        Self::new(self.conductor, coeffs)
    }

    fn lift_pair(a: &Self, b: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let n = unify(a.conductor, b.conductor);
        let la = a.embed(n).expect("unified conductor").coeffs;
        let lb = b.embed(n).expect("unified conductor").coeffs;
        (n, la, lb)
    }
}

fn unify(a: u32, b: u32) -> u32 {
    if a == b || b == 1 {
        a
    } else if a == 1 {
        b
    } else {
        panic!("incompatible fields: conductors {a} and {b}")
    }
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

/// Division with remainder in Q[x]; `den` must be nonzero and trimmed.
fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trimmed(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = den[den.len() - 1].recip();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = &rem[rem.len() - 1] * &lead_inv;
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] -= &c * d;
        }
        quot[shift] = c;
        rem = trimmed(rem);
    }
    (trimmed(quot), rem)
}

fn reduce_mod_phi(coeffs: &mut Vec<Rational>, n: u32) {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for k in (deg..coeffs.len()).rev() {
        if coeffs[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut coeffs[k], Rational::zero());
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                coeffs[k - deg + j] -= &c * Rational::from_i64(pj);
            }
        }
    }
    coeffs.resize(deg, Rational::zero());
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let n = if self.conductor == other.conductor || other.conductor == 1 {
            self.conductor
        } else if self.conductor == 1 {
            other.conductor
        } else {
            return false;
        };
        match (self.embed(n), other.embed(n)) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.conductor)?,
                _ => write!(f, "({c})*z{}^{k}", self.conductor)?,
            }
        }
        Ok(())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl<'a> AddAssign<&'a Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &'a Cyclotomic) {
        let (n, mut a, b) = Self::lift_pair(self, rhs);
        for (x, y) in a.iter_mut().zip(&b) {
            *x += y;
        }
        self.conductor = n;
        self.coeffs = a;
    }
}

impl<'a> SubAssign<&'a Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &'a Cyclotomic) {
        let (n, mut a, b) = Self::lift_pair(self, rhs);
        for (x, y) in a.iter_mut().zip(&b) {
            *x -= y;
        }
        self.conductor = n;
        self.coeffs = a;
    }
}

impl<'a> MulAssign<&'a Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &'a Cyclotomic) {
        if rhs.conductor == 1 {
            let c = &rhs.coeffs[0];
            for x in self.coeffs.iter_mut() {
                *x *= c;
            }
            return;
        }
        if self.conductor == 1 {
            let c = self.coeffs[0].clone();
            self.conductor = rhs.conductor;
            self.coeffs = rhs.coeffs.iter().map(|x| x * &c).collect();
            return;
        }
        let n = unify(self.conductor, rhs.conductor);
        let mut prod = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_mod_phi(&mut prod, n);
        self.coeffs = prod;
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self += &rhs;
        self
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self -= &rhs;
        self
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self *= &rhs;
        self
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for x in self.coeffs.iter_mut() {
            *x = -std::mem::replace(x, Rational::zero());
        }
        self
    }
}

impl Field for Cyclotomic {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.inv()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_i64(v))
    }

    fn from_rational(q: &Rational) -> Self {
        Self::from_rational(q.clone())
    }

    fn conductor(&self) -> u32 {
        self.conductor
    }

    fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bit_size()).sum()
    }

    fn clear_denominators(row: &mut [Self]) {
        let (lcm, gcd) = row_content(row.iter().flat_map(|x| x.coeffs.iter()));
        if gcd.is_zero() {
            return;
        }
        let scale = Rational::new(lcm, gcd);
        if scale.is_one() {
            return;
        }
        for x in row.iter_mut() {
            for c in x.coeffs.iter_mut() {
                *c *= &scale;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(3), &[1, 1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn cube_of_zeta3_is_one() {
        let z = Cyclotomic::zeta(3).unwrap();
        assert_eq!(z.clone() * z.clone() * z, Cyclotomic::one());
    }

    #[test]
    fn phi3_relation_vanishes() {
        let z = Cyclotomic::zeta(3).unwrap();
        let s = Cyclotomic::one() + z.clone() + z.clone() * z;
        assert!(s.is_zero());
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclotomic::zeta(4).unwrap();
        assert_eq!(i.clone() * i, Cyclotomic::from_i64(-1));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(
            Cyclotomic::zero().inv(),
            Err(ScalarError::DivisionByZero)
        );
        let zero5 = Cyclotomic::new(5, vec![rat(0); 4]).unwrap();
        assert_eq!(zero5.inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn inverse_round_trip() {
        let a = Cyclotomic::new(7, vec![rat(2), ratio(-1, 3), rat(0), rat(5)]).unwrap();
        let b = a.inv().unwrap();
        assert_eq!(a * b, Cyclotomic::one());
    }

    #[test]
    fn rationals_embed_and_compare() {
        let two = Cyclotomic::from_i64(2);
        let two5 = two.embed(5).unwrap();
        assert_eq!(two, two5);
        assert_eq!(two5.coeffs().len(), 4);
        let z3 = Cyclotomic::zeta(3).unwrap();
        assert!(z3.embed(4).is_err());
        assert_ne!(z3, Cyclotomic::zeta(4).unwrap());
    }

    #[test]
    fn zeta2_is_minus_one() {
        assert_eq!(Cyclotomic::zeta(2).unwrap(), Cyclotomic::from_i64(-1));
        assert_eq!(Cyclotomic::zeta(2).unwrap().conductor(), 1);
    }

    #[test]
    #[should_panic(expected = "incompatible fields")]
    fn mixing_conductors_panics_in_operators() {
        let _ = Cyclotomic::zeta(3).unwrap() + Cyclotomic::zeta(5).unwrap();
    }
}
