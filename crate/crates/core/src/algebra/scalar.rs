//! Arbitrary-precision rational scalars, the ground coefficient field.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};

/// An exact rational number `numerator / denominator`.
///
/// The representation is always canonical: the denominator is positive,
/// numerator and denominator are coprime and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` from machine integers; `q` must be nonzero.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        ExactScalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_bigints(p: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(ExactScalar(BigRational::new(p, q)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(ExactScalar(self.0.recip()))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(ExactScalar(self.0.pow(e)))
    }

    /// Positive gcd used for extracting integer content:
    /// `gcd(a/b, c/d) = gcd(a, c) / lcm(b, d)`.
    pub fn content_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let n = self.numerator().gcd(other.numerator());
        let d = self.denominator().lcm(other.denominator());
        ExactScalar(BigRational::new(n, d))
    }

    /// Sign as `-1`, `0`, `1`.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Exact square root, if the scalar is a perfect rational square.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numerator().sqrt();
        let d = self.denominator().sqrt();
        if &(&n * &n) == self.numerator() && &(&d * &d) == self.denominator() {
            Some(ExactScalar(BigRational::new(n, d)))
        } else {
            None
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactScalar {
    type Err = CoreError;

    /// Parses `p` or `p/q` with optional leading sign.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CoreError::Parse(format!("invalid rational `{s}`"));
        match s.split_once('/') {
            None => {
                let p: BigInt = s.trim().parse().map_err(|_| bad())?;
                Ok(ExactScalar(BigRational::from_integer(p)))
            }
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(CoreError::ZeroDenominator);
                }
                Ok(ExactScalar(BigRational::new(p, q)))
            }
        }
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((self.0).$method(rhs.0))
            }
        }
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        ExactScalar(self.0 / rhs.0)
    }
}

impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        ExactScalar(&self.0 / &rhs.0)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> ExactScalar {
        iter.fold(ExactScalar::zero(), |a, b| a + b)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> ExactScalar {
        iter.fold(ExactScalar::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = ExactScalar::ratio(4, -6);
        assert_eq!(x.to_string(), "-2/3");
        assert!(x.denominator() > &BigInt::zero());
        let z = ExactScalar::ratio(0, 7);
        assert_eq!(z.to_string(), "0");
        assert_eq!(z.denominator(), &BigInt::from(1));
    }

    #[test]
    fn arithmetic() {
        let a = ExactScalar::ratio(1, 2);
        let b = ExactScalar::ratio(1, 3);
        assert_eq!(&a + &b, ExactScalar::ratio(5, 6));
        assert_eq!(&a - &b, ExactScalar::ratio(1, 6));
        assert_eq!(&a * &b, ExactScalar::ratio(1, 6));
        assert_eq!(a / b, ExactScalar::ratio(3, 2));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3", "-3", "3/2", "-7/4", "0"] {
            let x: ExactScalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("1/0".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn content_gcd() {
        let a = ExactScalar::ratio(4, 3);
        let b = ExactScalar::ratio(2, 9);
        assert_eq!(a.content_gcd(&b), ExactScalar::ratio(2, 9));
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(
            ExactScalar::ratio(9, 4).sqrt_exact(),
            Some(ExactScalar::ratio(3, 2))
        );
        assert_eq!(ExactScalar::from_int(2).sqrt_exact(), None);
    }
}
