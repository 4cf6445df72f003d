//! Exact arithmetic in real quadratic fields `Q(sqrt d)`.
//!
//! A [`QuadExt`] is `a + b*sqrt(d)` with `a, b` rational and `d` a squarefree
//! integer `>= 2`. Rational values carry `d = 1` and `b = 0`, so they mix
//! freely with any field. Two genuinely irrational values from different
//! fields cannot be combined by the ring operators (they panic); use
//! [`QuadExt::exact_cmp`] when such values only need to be compared.
//!
//! Signs are decided exactly: `sign(a + b sqrt d)` follows from the signs of
//! `a`, `b` and a comparison of `a^2` with `b^2 d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational_at, Rational};

/// Trial division bound used when extracting square factors. Radicands that
/// are not fully reduced below this bound are still handled correctly: field
/// compatibility falls back to a perfect-square test on the product.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadExt {
    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `a + b sqrt(r)` for a positive rational radicand `r`.
    pub fn new(a: Rational, b: Rational, r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidArgument(format!("radicand must be positive, got {}", format_rational(r))));
        }
        let root = Self::sqrt_of(r).expect("positive radicand");
        Ok(Self::from_rational(a) + root * Self::from_rational(b))
    }

    /// Exact square root of a nonnegative rational.
    pub fn sqrt_of(q: &Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(n/m) = sqrt(n m) / m
        let m = q.denom().clone();
        let nm = q.numer() * &m;
        let (s, d) = split_square(&nm);
        let coeff = Rational::new(s, m);
        if d.is_one() {
            Some(Self::from_rational(coeff))
        } else {
            Some(QuadExt { a: Rational::zero(), b: coeff, d })
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_coeff(&self) -> &Rational {
        &self.b
    }

    /// The squarefree radicand of the field this value lives in (1 if rational).
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn sign(&self) -> i8 {
        let sa = crate::rational::sign(&self.a);
        let sb = crate::rational::sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(self.d.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadExt { a: &self.a * q, b: &self.b * q, d: self.d.clone() }.canonical()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        let n = self.norm();
        QuadExt { a: &self.a / &n, b: -(&self.b / &n), d: self.d.clone() }.canonical()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (x, y, d) = align(self, other)?;
        Ok(QuadExt { a: &x.a + &y.a, b: &x.b + &y.b, d }.canonical())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (x, y, d) = align(self, other)?;
        let dq = Rational::from_integer(d.clone());
        let a = &x.a * &y.a + &x.b * &y.b * dq;
        let b = &x.a * &y.b + &x.b * &y.a;
        Ok(QuadExt { a, b, d }.canonical())
    }

    /// Nonnegative square root inside the same field, when one exists.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        match self.sign() {
            -1 => return None,
            0 => return Some(Self::zero()),
            _ => {}
        }
        if self.is_rational() {
            return Self::sqrt_of(&self.a);
        }
        // (x + y sqrt d)^2 = a + b sqrt d  =>  x^2 + d y^2 = a, 2xy = b.
        // x^2 = (a +- sqrt(norm)) / 2 with norm = a^2 - d b^2.
        let n = self.norm();
        let root_n = Self::sqrt_of(&n)?.as_rational()?.clone();
        let two = Rational::from_integer(2.into());
        for x_sq in [(&self.a + &root_n) / &two, (&self.a - &root_n) / &two] {
            if x_sq.is_positive() {
                if let Some(x) = Self::sqrt_of(&x_sq).and_then(|x| x.as_rational().cloned()) {
                    let y = &self.b / (&two * &x);
                    let cand = QuadExt { a: x.abs(), b: y * x.signum(), d: self.d.clone() };
                    let cand = if cand.is_negative() { -cand } else { cand };
                    if cand.square() == *self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// Exact comparison that also works across different quadratic fields.
    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        if let Ok((x, y, d)) = align(self, other) {
            let diff = QuadExt { a: &x.a - &y.a, b: &x.b - &y.b, d }.canonical();
            return diff.sign().cmp(&0);
        }
        // Distinct irrational fields: the values differ, so refining both
        // enclosures eventually separates them.
        let mut bits = 64u32;
        loop {
            let p = self.enclose_bits(bits);
            let q = other.enclose_bits(bits);
            if p.hi < q.lo {
                return Ordering::Less;
            }
            if q.hi < p.lo {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    /// Rational enclosure of width at most `width`.
    pub fn enclose(&self, width: &Rational) -> Interval {
        if self.is_rational() {
            return Interval::point(self.a.clone());
        }
        let mut bits = 48u32;
        loop {
            let iv = self.enclose_bits(bits);
            if &iv.width() <= width {
                return iv;
            }
            bits += 32;
        }
    }

    fn enclose_bits(&self, bits: u32) -> Interval {
        if self.is_rational() {
            return Interval::point(self.a.clone());
        }
        let scale = BigInt::one() << (2 * bits as usize);
        let s = (&self.d * &scale).sqrt();
        let den = BigInt::one() << bits as usize;
        let lo = Rational::new(s.clone(), den.clone());
        let hi = Rational::new(s + BigInt::one(), den);
        let (blo, bhi) =
            if self.b.is_negative() { (&self.b * &hi, &self.b * &lo) } else { (&self.b * &lo, &self.b * &hi) };
        Interval { lo: &self.a + blo, hi: &self.a + bhi }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    /// Parses `"p/q"`, a decimal, or `"sqrt(p/q)"` (optionally scaled as `"c*sqrt(p/q)"`).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let lead = text.len() - text.trim_start().len();
        if let Some(pos) = t.find("sqrt(") {
            let coeff = t[..pos].trim_end();
            let coeff = coeff.strip_suffix('*').unwrap_or(coeff).trim();
            let c = if coeff.is_empty() { Rational::one() } else { parse_rational_at(coeff, lead)? };
            let inner_start = pos + 5;
            let Some(close) = t[inner_start..].find(')') else {
                return Err(Error::parse(lead + t.len() + 1, "missing `)`"));
            };
            if inner_start + close + 1 != t.len() {
                return Err(Error::parse(lead + inner_start + close + 2, "unexpected trailing input"));
            }
            let r = parse_rational_at(&t[inner_start..inner_start + close], lead + inner_start)?;
            if r.is_negative() {
                return Err(Error::parse(lead + inner_start + 1, "negative radicand"));
            }
            return Ok(Self::sqrt_of(&r).expect("nonnegative") * Self::from_rational(c));
        }
        Ok(Self::from_rational(parse_rational_at(t, lead)?))
    }

    fn canonical(mut self) -> Self {
        if self.b.is_zero() {
            self.d = BigInt::one();
        }
        self
    }
}

/// Splits `n >= 0` as `s^2 * d` with `d` free of small square factors.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(TRIAL_DIVISION_LIMIT);
    while &p * &p * &p <= rest && p <= limit {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            s *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        return (s * r, BigInt::one());
    }
    (s, rest)
}

/// Brings two values into a common field representation.
fn align(x: &QuadExt, y: &QuadExt) -> Result<(QuadExt, QuadExt, BigInt)> {
    if x.b.is_zero() {
        return Ok((QuadExt { d: y.d.clone(), ..x.clone() }, y.clone(), y.d.clone()));
    }
    if y.b.is_zero() || x.d == y.d {
        return Ok((x.clone(), QuadExt { d: x.d.clone(), ..y.clone() }, x.d.clone()));
    }
    // Same field with unreduced radicands: sqrt(d2) = sqrt(d1 d2) / d1 * sqrt(d1).
    let prod = &x.d * &y.d;
    let r = prod.sqrt();
    if &r * &r == prod {
        let factor = Rational::new(r, x.d.clone());
        let y2 = QuadExt { a: y.a.clone(), b: &y.b * factor, d: x.d.clone() };
        return Ok((x.clone(), y2, x.d.clone()));
    }
    Err(Error::IncompatibleFields(x.d.to_string(), y.d.to_string()))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                let f: fn(&QuadExt, &QuadExt) -> QuadExt = $body;
                f(self, rhs)
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

// Mixing two distinct irrational fields is a caller bug; the checked_* forms
// surface it as an error instead.
forward_binop!(Add, add, |x, y| x.checked_add(y).unwrap_or_else(|e| panic!("{e}")));
forward_binop!(Sub, sub, |x, y| x.checked_add(&-y).unwrap_or_else(|e| panic!("{e}")));
forward_binop!(Mul, mul, |x, y| x.checked_mul(y).unwrap_or_else(|e| panic!("{e}")));
forward_binop!(Div, div, |x, y| x.checked_mul(&y.recip()).unwrap_or_else(|e| panic!("{e}")));

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        QuadExt::from_rational(q)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.a));
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            format!("{}*", format_rational(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{b}sqrt({})", self.d)
        } else {
            write!(f, "{} + {b}sqrt({})", format_rational(&self.a), self.d)
        }
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "interval": [format_rational(&self.lo), format_rational(&self.hi)] })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// A real number known either exactly or through a guaranteed enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicValue {
    Exact(QuadExt),
    Enclosure(Interval),
}

impl AlgebraicValue {
    pub fn exact(&self) -> Option<&QuadExt> {
        match self {
            AlgebraicValue::Exact(q) => Some(q),
            AlgebraicValue::Enclosure(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AlgebraicValue::Exact(q) => serde_json::Value::String(q.to_string()),
            AlgebraicValue::Enclosure(iv) => iv.to_json(),
        }
    }
}

/// Width budget for enclosures: `10^-12`.
pub fn enclosure_budget() -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12))
}
