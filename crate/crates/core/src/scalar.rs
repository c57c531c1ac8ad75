//! Scalar and coefficient-ring abstractions.
//!
//! Flag forms and ratio computations are generic over a [`Scalar`]; the
//! library's exact results use [`crate::Rational`], while `f64` is available
//! for quick approximate evaluation. Polynomials in the `ab`/`cd` variables
//! take coefficients in any [`Module`] over a scalar, which lets the same
//! conversion run on numbers and on flag forms.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Whether the value is exactly representable (no rounding happens in
    /// arithmetic).
    fn is_exact() -> bool;

    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn is_exact() -> bool {
        true
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        false
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }

    fn is_exact() -> bool {
        false
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

/// A coefficient ring for noncommutative polynomials: an abelian group with
/// scaling by `T`.
pub trait Module<T: Scalar>: Clone + Debug + PartialEq {
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, by: &T) -> Self;
    fn vanishes(&self) -> bool;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-T::one()))
    }

    fn zero_like(&self) -> Self {
        self.scaled(&T::zero())
    }
}

impl<T: Scalar> Module<T> for T {
    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn scaled(&self, by: &T) -> Self {
        self.clone() * by.clone()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Renders an exact rational as `"p"` or `"p/q"`.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Decimal rendering with `digits` significant digits, for display next to an
/// exact value.
pub fn approx_decimal(q: &BigRational, digits: usize) -> String {
    let v = Scalar::to_f64(q);
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if q.is_negative() && !s.starts_with('-') {
        format!("-{s}")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "-3", "7/2", "-19/6"] {
            assert_eq!(rational_to_string(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(rational_to_string(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn decimal_has_requested_precision() {
        let q = BigRational::new(28.into(), 15.into());
        assert_eq!(approx_decimal(&q, 12), "1.86666666667");
        let q = BigRational::new(25.into(), 16.into());
        assert_eq!(approx_decimal(&q, 12), "1.56250000000");
    }
}
