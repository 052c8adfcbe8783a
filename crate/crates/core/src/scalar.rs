//! Scalar abstraction used by the exact and floating-point code paths.
//!
//! Probabilities, weights and generating functions are written once against
//! [`Scalar`] and instantiated with `f64` for Monte Carlo work and with
//! [`Rational`] where an identity has to hold exactly.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field-like scalar: `f32`, `f64` or an exact rational.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_u64(n: u64) -> Self {
        <Self as FromPrimitive>::from_u64(n).expect("every scalar holds small integers")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `1 - self`.
    fn complement(&self) -> Self {
        Self::one() - self.clone()
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// Integer power by repeated squaring.
pub fn powi<T: Scalar>(base: &T, exp: usize) -> T {
    num_traits::pow(base.clone(), exp)
}

/// Total-variation distance between two weight vectors over the same index set.
pub fn total_variation<T: Scalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    let two = T::one() + T::one();
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + (x.clone() - y.clone()).abs())
        / two
}

/// Parses `"3/8"`, `"0.347"`, `"-2"` or `"1e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::invalid(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if neg { -value } else { value })
}

/// Exact rational with value `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Checks `0 <= p <= 1`.
pub fn check_probability<T: Scalar>(p: &T, what: &str) -> Result<()> {
    if *p < T::zero() || *p > T::one() {
        return Err(Error::invalid(format!("{what} must lie in [0, 1], got {p:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("347/1000").unwrap(), ratio(347, 1000));
        assert_eq!(parse_rational("0.347").unwrap(), ratio(347, 1000));
        assert_eq!(parse_rational("-2").unwrap(), ratio(-2, 1));
        assert_eq!(parse_rational("1.5e-2").unwrap(), ratio(15, 1000));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn total_variation_is_half_l1() {
        let a = [ratio(1, 2), ratio(1, 2)];
        let b = [ratio(1, 1), ratio(0, 1)];
        assert_eq!(total_variation(&a, &b), ratio(1, 2));
        assert_eq!(total_variation(&[0.25f64, 0.75], &[0.25, 0.75]), 0.0);
    }
}
