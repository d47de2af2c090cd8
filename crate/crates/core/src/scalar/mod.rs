//! Exact scalars: the [`Field`] abstraction, rationals, cyclotomic fields and
//! dense matrices with exact rank and kernel computation.

mod cyclotomic;
mod matrix;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use matrix::Matrix;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible fields: conductors {0} and {1}")]
    IncompatibleFields(u32, u32),
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rank self-check failed: bareiss gave {bareiss}, gauss-jordan gave {gauss_jordan}")]
    RankMismatch { bareiss: usize, gauss_jordan: usize },
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// An exact field of characteristic zero.
///
/// Implementors must have exact equality and exact zero testing; the
/// linear algebra in this crate relies on both.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn try_inv(&self) -> Result<Self, ScalarError>;

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    fn from_i64(v: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// Conductor of the cyclotomic field the value lives in; 1 means the
    /// value is rational and embeds into every field.
    fn conductor(&self) -> u32 {
        1
    }

    /// Rough storage size in bits, used for pivot selection.
    fn bit_size(&self) -> u64;

    /// Rescale a row by a nonzero constant so its entries become integral
    /// and primitive. Row rescaling never changes rank.
    fn clear_denominators(_row: &mut [Self]) {}
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    fn clear_denominators(row: &mut [Self]) {
        let (lcm, gcd) = row_content(row.iter());
        if gcd.is_zero() {
            return;
        }
        let scale = Rational::new(lcm, gcd);
        if scale.is_one() {
            return;
        }
        for x in row.iter_mut() {
            *x *= &scale;
        }
    }
}

/// Least common multiple of the denominators and gcd of the numerators
/// (after scaling by that lcm) of a sequence of rationals. Returns a zero
/// gcd when every entry is zero.
pub(crate) fn row_content<'a>(entries: impl Iterator<Item = &'a Rational> + Clone) -> (BigInt, BigInt) {
    let mut lcm = BigInt::one();
    for q in entries.clone() {
        if !q.is_zero() {
            lcm = lcm.lcm(q.denom());
        }
    }
    let mut gcd = BigInt::zero();
    for q in entries {
        if !q.is_zero() {
            let scaled = q.numer() * (&lcm / q.denom());
            gcd = gcd.gcd(&scaled);
        }
    }
    (lcm, gcd.abs())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(ScalarError::Parse(s.to_string()));
        }
    }
    let cleaned: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    Rational::from_str(&cleaned).map_err(|_| ScalarError::Parse(s.to_string()))
}

/// Formats a rational as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 6/-3 ").unwrap(), rat(-2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rational_inverse_of_zero_fails() {
        assert_eq!(rat(0).try_inv(), Err(ScalarError::DivisionByZero));
        assert_eq!(ratio(2, 3).try_inv().unwrap(), ratio(3, 2));
    }

    #[test]
    fn clearing_denominators_is_primitive() {
        let mut row = vec![ratio(1, 2), ratio(-3, 4), rat(0), ratio(5, 6)];
        Rational::clear_denominators(&mut row);
        assert_eq!(row, vec![rat(6), rat(-9), rat(0), rat(10)]);
        let mut zeros = vec![rat(0), rat(0)];
        Rational::clear_denominators(&mut zeros);
        assert_eq!(zeros, vec![rat(0), rat(0)]);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&ratio(-3, 6)), "-1/2");
        assert_eq!(format_rational(&rat(4)), "4");
    }
}
