//! Mass arithmetic in two flavours: exact rationals and `f64`.
//!
//! Every container in the crate is generic over [`Mass`], so the same code
//! path reproduces hand-computed fractions exactly and also runs fast on
//! large float inputs.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tolerance on normalization sums in float mode.
pub const FLOAT_NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Tolerance below which two float evaluations are considered equal.
pub const FLOAT_INDIFFERENCE_TOLERANCE: f64 = 1e-12;

/// Exact mass type.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    Rational,
    Float,
}

impl NumericMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NumericMode::Rational => "rational",
            NumericMode::Float => "float",
        }
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NumericMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rational" => Ok(NumericMode::Rational),
            "float" => Ok(NumericMode::Float),
            other => Err(Error::Parse(format!(
                "unknown numeric mode `{other}` (expected `rational` or `float`)"
            ))),
        }
    }
}

/// A nonnegative, dimensionless quantity of evidence.
pub trait Mass:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    const MODE: NumericMode;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn is_negative(&self) -> bool;

    /// Whether a normalization sum equals one (exactly, or within
    /// [`FLOAT_NORMALIZATION_TOLERANCE`]).
    fn is_unit_sum(&self) -> bool;

    /// Equality used for ranking decisions (exact, or within
    /// [`FLOAT_INDIFFERENCE_TOLERANCE`]).
    fn indifferent(&self, other: &Self) -> bool;

    /// Parses a fraction string such as `"1/3"` or `"2"`.
    fn parse_fraction(text: &str) -> Result<Self>;

    /// Parses the text of a JSON number such as `"0.25"` or `"1e-3"`.
    fn parse_decimal(text: &str) -> Result<Self>;

    /// Canonical text: `p/q` in lowest terms, or 17 significant digits.
    fn render(&self) -> String;

    /// JSON value carrying the canonical text: a string for rationals, a
    /// number for floats.
    fn to_json(&self) -> serde_json::Value;

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Mass for Rational {
    const MODE: NumericMode = NumericMode::Rational;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_unit_sum(&self) -> bool {
        self.is_one()
    }

    fn indifferent(&self, other: &Self) -> bool {
        self == other
    }

    fn parse_fraction(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        BigRational::from_str(trimmed).map_err(|_| Error::Parse(format!("`{text}` is not a fraction of the form p/q")))
    }

    fn parse_decimal(text: &str) -> Result<Self> {
        parse_decimal_exact(text)
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.render())
    }
}

impl Mass for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn is_unit_sum(&self) -> bool {
        (self - 1.0).abs() <= FLOAT_NORMALIZATION_TOLERANCE
    }

    fn indifferent(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_INDIFFERENCE_TOLERANCE
    }

    fn parse_fraction(text: &str) -> Result<Self> {
        let exact = Rational::parse_fraction(text)?;
        Ok(Mass::to_f64(&exact))
    }

    fn parse_decimal(text: &str) -> Result<Self> {
        let value = f64::from_str(text.trim()).map_err(|_| Error::Parse(format!("`{text}` is not a number")))?;
        if !value.is_finite() {
            return Err(Error::Parse(format!("`{text}` is not finite")));
        }
        Ok(value)
    }

    fn render(&self) -> String {
        render_f64(*self)
    }

    fn to_json(&self) -> serde_json::Value {
        json_f64(*self)
    }
}

/// Formats a float with 17 significant digits in scientific notation.
pub fn render_f64(value: f64) -> String {
    // `-0` and `0` must serialize identically.
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.16e}")
}

/// A JSON number whose text is [`render_f64`].
pub fn json_f64(value: f64) -> serde_json::Value {
    match serde_json::Number::from_str(&render_f64(value)) {
        Ok(n) => serde_json::Value::Number(n),
        Err(_) => serde_json::Value::Null,
    }
}

/// Exact rational value of a decimal literal (`-12.5e-3` and friends).
fn parse_decimal_exact(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{text}` is not a decimal number"));
    let s = text.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&all_digits).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return Err(bad());
    }
    let ten = BigInt::from(10u32);
    let power = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * power)
    } else {
        BigRational::new(numer, power)
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Sums masses in iteration order.
pub fn sum<'a, M: Mass, I: IntoIterator<Item = &'a M>>(values: I) -> M {
    values.into_iter().fold(M::zero(), |acc, value| acc + value.clone())
}
