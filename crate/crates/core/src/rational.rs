//! Exact rational helpers shared by every module.
//!
//! Rationals travel through JSON as `"p/q"` strings (or a bare integer string
//! when the denominator is one). Parsing is strict: no whitespace, no decimal
//! points, and a zero denominator is rejected.

use std::fmt;

use dashu_int::{IBig, UBig};
pub use dashu_ratio::RBig as Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: text.to_string(),
        reason,
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    if num.is_empty() || num.chars().any(|c| c.is_whitespace()) {
        return Err(err("malformed numerator"));
    }
    let numerator: IBig = num.parse().map_err(|_| err("malformed numerator"))?;
    let denominator: UBig = match den {
        None => UBig::ONE,
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("malformed denominator"));
            }
            let d: UBig = d.parse().map_err(|_| err("malformed denominator"))?;
            if d == UBig::ZERO {
                return Err(err("zero denominator"));
            }
            d
        }
    };
    Ok(Rational::from_parts(numerator, denominator))
}

/// Exact text form: `"p/q"`, or `"p"` when integral.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Truncated decimal rendering with `digits` fractional digits, prefixed with
/// `~` so it is never mistaken for an exact value.
pub fn format_decimal(value: &Rational, digits: usize) -> String {
    let negative = *value < Rational::ZERO;
    let magnitude = if negative { -value.clone() } else { value.clone() };
    let scale = UBig::from(10u8).pow(digits);
    let scaled = magnitude * Rational::from(scale.clone());
    let units: IBig = scaled.floor();
    let units = UBig::try_from(units).expect("non-negative");
    let int_part = &units / &scale;
    let frac_part = &units % &scale;
    let mut out = String::from("~");
    if negative && units != UBig::ZERO {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits));
    }
    out
}

pub fn int(value: i64) -> Rational {
    Rational::from(value)
}

pub fn ratio(numerator: i64, denominator: i64) -> Rational {
    assert!(denominator != 0, "zero denominator");
    Rational::from_parts_signed(IBig::from(numerator), IBig::from(denominator))
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}

pub fn is_negative(value: &Rational) -> bool {
    *value < Rational::ZERO
}

pub fn is_positive(value: &Rational) -> bool {
    *value > Rational::ZERO
}

/// Serde adapter: a rational as its exact string form.
pub mod serde_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}
