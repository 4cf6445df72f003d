//! Slope functions, central charges and exact phase comparisons.

mod svg;
mod wall;

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use crate::chern::{h_degrees, twist, v_vector, ChernVector, Polarization, TwistedVector};
use crate::error::{Error, Result};
use crate::quad::QuadExt;
use crate::rational::{frac, rat, Rational};
use crate::ring::{CohRing, DivisorClass};

pub use svg::render_svg;
pub use wall::{wall_conic, wall_scan, Grid, WallConic, WallDiagram};

/// A slope value; the denominator vanishing gives `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedSlope {
    Finite(QuadExt),
    PlusInfinity,
}

impl ExtendedSlope {
    fn ratio(num: &QuadExt, den: &QuadExt) -> Self {
        if den.is_zero() {
            ExtendedSlope::PlusInfinity
        } else {
            ExtendedSlope::Finite(num / den)
        }
    }

    pub fn finite(&self) -> Option<&QuadExt> {
        match self {
            ExtendedSlope::Finite(q) => Some(q),
            ExtendedSlope::PlusInfinity => None,
        }
    }

    /// Exact comparison, valid even when the two values live in different fields.
    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedSlope::PlusInfinity, ExtendedSlope::PlusInfinity) => Ordering::Equal,
            (ExtendedSlope::PlusInfinity, _) => Ordering::Greater,
            (_, ExtendedSlope::PlusInfinity) => Ordering::Less,
            (ExtendedSlope::Finite(a), ExtendedSlope::Finite(b)) => a.exact_cmp(b),
        }
    }
}

impl fmt::Display for ExtendedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedSlope::Finite(q) => write!(f, "{q}"),
            ExtendedSlope::PlusInfinity => f.write_str("+inf"),
        }
    }
}

pub fn mu_slope(v: &TwistedVector) -> ExtendedSlope {
    ExtendedSlope::ratio(&v.v1, &v.v0)
}

pub fn nu_slope(v: &TwistedVector) -> ExtendedSlope {
    ExtendedSlope::ratio(&(&v.v2 - &v.v0.scale(&frac(1, 6))), &v.v1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    pub re: QuadExt,
    pub im: QuadExt,
}

impl Charge {
    pub fn new(re: QuadExt, im: QuadExt) -> Self {
        Charge { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Charge::new(self.re.scale(q), self.im.scale(q))
    }

    /// Charge of `E[n]`.
    pub fn shift(&self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.scale(&rat(-1))
        }
    }

    /// `Re(self) Im(other) - Im(self) Re(other)`: positive when `other` is
    /// reached from `self` by a counterclockwise turn of less than `pi`.
    pub fn cross(&self, other: &Charge) -> QuadExt {
        &self.re * &other.im - &self.im * &other.re
    }

    pub fn to_json(&self) -> Value {
        json!({ "re": self.re.to_string(), "im": self.im.to_string() })
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

/// `Z = -int e^{-i omega} ch^B`: `Re = -v3 + v1/2`, `Im = v2 - v0/6`.
pub fn central_charge(ch: &ChernVector, pol: &Polarization<'_>) -> Result<Charge> {
    let v = v_vector(ch, pol)?;
    Ok(charge_from_v(&v))
}

pub fn charge_from_v(v: &TwistedVector) -> Charge {
    Charge::new(v.v1.scale(&frac(1, 2)) - QuadExt::from_rational(v.v3.clone()), &v.v2 - &v.v0.scale(&frac(1, 6)))
}

/// `Z_{alpha,0,s} = -ch3 + s alpha^2 H^2 ch1 + i (alpha H ch2 - alpha^3 H^3 ch0 / 6)`.
pub fn charge_s(ring: &CohRing, ch: &ChernVector, alpha: &QuadExt, h: &DivisorClass, s: &Rational) -> Result<Charge> {
    let e = h_degrees(ring, ch, h)?;
    Ok(charge_s_from_degrees(&e, alpha, s))
}

pub fn charge_s_from_degrees(e: &[Rational; 4], alpha: &QuadExt, s: &Rational) -> Charge {
    let a2 = alpha.square();
    let re = a2.scale(&(s * &e[1])) - QuadExt::from_rational(e[3].clone());
    let im = alpha.scale(&e[2]) - alpha.pow(3).scale(&(&e[0] / rat(6)));
    Charge::new(re, im)
}

/// Outcome of placing charges in the closed half plane starting at the anchor's phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeVerdict {
    pub inside: bool,
    /// Indices of charges strictly outside.
    pub outside: Vec<usize>,
    /// Indices of zero charges; these have no phase and do not affect `inside`.
    pub zero_charges: Vec<usize>,
}

/// Every charge has phase in `[phi0, phi0 + 1]` where `phi0` is the anchor's
/// phase, decided by the sign of `cross(anchor, z)`.
pub fn cone_check(charges: &[Charge], anchor: &Charge) -> Result<ConeVerdict> {
    if anchor.is_zero() {
        return Err(Error::InvalidArgument("anchor charge is zero".into()));
    }
    let mut outside = Vec::new();
    let mut zero_charges = Vec::new();
    for (i, z) in charges.iter().enumerate() {
        if z.is_zero() {
            zero_charges.push(i);
        } else if anchor.cross(z).is_negative() {
            outside.push(i);
        }
    }
    Ok(ConeVerdict { inside: outside.is_empty(), outside, zero_charges })
}

/// Twisted slope `nu` at `omega = alpha H`, `B = beta H` with rational `alpha`,
/// evaluated directly from the Chern character.
pub fn nu_at(
    ring: &CohRing,
    ch: &ChernVector,
    h: &DivisorClass,
    alpha: &Rational,
    beta: &Rational,
) -> Result<ExtendedSlope> {
    let e = h_degrees(ring, &twist(ring, ch, &h.scale(beta))?, h)?;
    Ok(nu_slope(&TwistedVector::scaled(&QuadExt::from_rational(alpha.clone()), &e)))
}
