//! Scalar types for dense functions: `f64` for speed, [`Rational`] for exact
//! certificates.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// Field-like scalar usable in transforms and convolutions.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn from_bigint(i: &BigInt) -> Self;

    fn from_u64(v: u64) -> Self;

    /// From a float; rationals take its exact binary value (NaN maps to 0).
    fn from_f64_lossy(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact rational value (floats convert through their binary expansion).
    fn to_rational(&self) -> Option<Rational>;

    /// `self * 2^e`.
    fn mul_pow2(&self, e: i32) -> Self;

    fn is_negative(&self) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn from_bigint(i: &BigInt) -> Self {
        i.to_f64().unwrap_or(f64::NAN)
    }

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn from_f64_lossy(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }

    fn mul_pow2(&self, e: i32) -> Self {
        self * 2f64.powi(e)
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_bigint(i: &BigInt) -> Self {
        Rational::from_integer(i.clone())
    }

    fn from_u64(v: u64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64_lossy(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_default()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn mul_pow2(&self, e: i32) -> Self {
        let p = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            self * Rational::from_integer(p)
        } else {
            self / Rational::from_integer(p)
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Converts a rational to the nearest-ish `f64`, robust to huge numerators
/// and denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    // Scale both parts down to the f64 range before dividing.
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits().max(den.bits()).saturating_sub(1000) as usize;
    let n = (num >> shift).to_f64().unwrap_or(0.0);
    let d = (den >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Parses `3`, `-2`, `1/10`, `0.25` or `1e-3` into an exact rational.
/// Decimal notation is taken literally, so `0.1` is exactly `1/10`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(invalid("empty number"));
    }
    if let Some((a, b)) = s.split_once('/') {
        let a = BigInt::from_str(a.trim()).map_err(|_| invalid(format!("bad numerator in {s:?}")))?;
        let b = BigInt::from_str(b.trim()).map_err(|_| invalid(format!("bad denominator in {s:?}")))?;
        if b.is_zero() {
            return Err(invalid(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(a, b));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..]
                .parse()
                .map_err(|_| invalid(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid(format!("not a number: {s:?}")));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(invalid(format!("not a number: {s:?}")));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).unwrap_or_default());
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Best rational approximation used when a float must enter exact mode.
pub fn rational_from_f64(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| invalid(format!("non-finite value {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("1/10").unwrap(), q(1, 10));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "0x10", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigInt::one() << 3000u32;
        let r = Rational::new(big.clone() * 3, big);
        assert_eq!(rational_to_f64(&r), 3.0);
    }

    #[test]
    fn mul_pow2_both_directions() {
        let r = q(3, 5);
        assert_eq!(r.mul_pow2(3), q(24, 5));
        assert_eq!(r.mul_pow2(-2), q(3, 20));
        assert_eq!(1.5f64.mul_pow2(-1), 0.75);
    }
}
