//! Arbitrary precision rationals and their `"p/q"` text form.
//!
//! Every rational that leaves the library (JSON, reports, CLI output) goes
//! through [`format_rational`], and every rational that enters goes through
//! [`parse_rational`]. Binary floats never appear on either side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"`, or a terminating decimal such as `"0.9"` or `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_rational_at(text, 0)
}

pub(crate) fn parse_rational_at(text: &str, offset: usize) -> Result<Rational> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    let col = offset + lead + 1;
    if trimmed.is_empty() {
        return Err(Error::parse(col, "expected a rational number"));
    }
    if let Some((num, den)) = trimmed.split_once('/') {
        let n = parse_int(num.trim(), col)?;
        let d = parse_int(den.trim(), col + num.len() + 1)?;
        if d.is_zero() {
            return Err(Error::parse(col + num.len() + 1, "zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, fraction)) = trimmed.split_once('.') {
        if fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(col + whole.len() + 1, "malformed decimal"));
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), fraction);
        let mut n = parse_int(&digits, col)?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), fraction.len());
        return Ok(Rational::new(n, d));
    }
    Ok(Rational::from_integer(parse_int(trimmed, col)?))
}

fn parse_int(text: &str, col: usize) -> Result<BigInt> {
    text.parse::<BigInt>().map_err(|_| Error::parse(col, format!("`{text}` is not an integer")))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_vec(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

/// Parses a comma separated coordinate list such as `"1,2"` or `"1/2, -3"`.
pub fn parse_coords(text: &str) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        out.push(parse_rational_at(piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod as_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
