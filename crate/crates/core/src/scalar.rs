//! Number kinds used for weights and LP values.
//!
//! Everything numeric in the crate is generic over [`Scalar`], which is
//! implemented for exact rationals ([`Rational`]) and for `f64`. Exact mode
//! uses a zero positivity threshold; floating mode treats values at or below
//! [`FLOAT_TAU`] as zero.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Positivity threshold used in floating mode.
pub const FLOAT_TAU: f64 = 1e-7;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Sum
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic is exact.
    const EXACT: bool;

    /// Threshold below which a value counts as zero (0 in exact mode).
    fn tau() -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn to_rational(&self) -> Rational;

    fn to_f64(&self) -> f64;

    /// Parses `"3/2"`, `"0.25"`, `"-1"` or `"1e-3"`.
    fn parse_text(s: &str) -> Option<Self> {
        parse_rational(s).map(|q| Self::from_rational(&q))
    }

    /// Fraction string in exact mode, shortest round-trip decimal otherwise.
    fn to_text(&self) -> String;

    fn from_usize(k: usize) -> Self {
        Self::from_ratio(k as i64, 1)
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    /// Clamps into `[0, 1]`.
    fn clamp_unit(self) -> Self {
        Self::min_of(Self::max_of(self, Self::zero()), Self::one())
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn tau() -> Self {
        Rational::zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn to_f64(&self) -> f64 {
        self.to_f64_lossy()
    }

    fn to_text(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tau() -> Self {
        FLOAT_TAU
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64_lossy()
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_text(s: &str) -> Option<Self> {
        if s.contains('/') {
            parse_rational(s).map(|q| q.to_f64_lossy())
        } else {
            s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
        }
    }

    fn to_text(&self) -> String {
        format!("{}", self)
    }
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for Rational {
    fn to_f64_lossy(&self) -> f64 {
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                // Huge numerator/denominator: shift both down before dividing.
                let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(1000);
                let n = (self.numer() >> shift).to_f64().unwrap_or(0.0);
                let d = (self.denom() >> shift).to_f64().unwrap_or(1.0);
                n / d
            }
        }
    }
}

/// Parses integers, fractions and decimals (with optional exponent) exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Ratio `num / den` as `f64`, with `0/0` reported as 1.
pub fn ratio_or_one<S: Scalar>(num: &S, den: &S) -> f64 {
    if den.is_zero() {
        if num.is_zero() {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        num.to_f64() / den.to_f64()
    }
}

/// Absolute value for any scalar.
pub fn abs<S: Scalar>(v: S) -> S {
    if v < S::zero() {
        -v
    } else {
        v
    }
}

/// Exact ceiling of a non-negative rational.
pub fn ceil_rational(q: &Rational) -> BigInt {
    if q.is_negative() {
        -((-q).floor().to_integer())
    } else {
        q.ceil().to_integer()
    }
}
