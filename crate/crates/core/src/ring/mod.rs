//! Even cohomology rings of threefolds given by structure constants.
//!
//! A ring is fixed by a divisor basis `e_1..e_rho`, a curve basis
//! `c_1..c_rho'`, the products `e_i * e_j` written in curve coordinates, and
//! the pairings `e_i . c_k`. Degree 0 and degree 6 are one-dimensional and
//! carried as bare rationals, with the point class integrating to 1.

mod document;
mod presets;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rational, Rational};

pub use document::RingDocument;
pub use presets::{preset, PRESET_NAMES};

macro_rules! coordinate_class {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            pub coords: Vec<Rational>,
        }

        impl $name {
            pub fn new(coords: Vec<Rational>) -> Self {
                $name { coords }
            }

            pub fn from_ints(coords: &[i64]) -> Self {
                $name { coords: coords.iter().map(|&c| Rational::from_integer(c.into())).collect() }
            }

            pub fn zero(len: usize) -> Self {
                $name { coords: vec![Rational::zero(); len] }
            }

            pub fn basis(len: usize, index: usize) -> Self {
                let mut z = Self::zero(len);
                z.coords[index] = Rational::one();
                z
            }

            pub fn len(&self) -> usize {
                self.coords.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coords.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(Zero::is_zero)
            }

            pub fn scale(&self, q: &Rational) -> Self {
                $name { coords: self.coords.iter().map(|c| c * q).collect() }
            }

            pub fn to_strings(&self) -> Vec<String> {
                self.coords.iter().map(format_rational).collect()
            }
        }

        impl Add<&$name> for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                assert_eq!(self.len(), rhs.len(), "coordinate length mismatch");
                $name { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
            }
        }

        impl Sub<&$name> for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                assert_eq!(self.len(), rhs.len(), "coordinate length mismatch");
                $name { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name { coords: self.coords.iter().map(|c| -c).collect() }
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({})", self.to_strings().join(", "))
            }
        }
    };
}

coordinate_class!(
    /// Degree-2 class in divisor-basis coordinates.
    DivisorClass
);
coordinate_class!(
    /// Degree-4 class in curve-basis coordinates.
    CurveClass
);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohRing {
    divisor_basis: Vec<String>,
    curve_basis: Vec<String>,
    /// `div_div[i][j]` holds the curve coordinates of `e_i * e_j`.
    div_div: Vec<Vec<CurveClass>>,
    /// `div_curve[i][k]` is the degree of `e_i . c_k`.
    div_curve: Vec<Vec<Rational>>,
}

/// One violated ring axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: &'static str,
    pub indices: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}: {}", self.kind, self.indices, self.message)
    }
}

impl CohRing {
    /// Builds a ring after checking only the shape of the structure constants.
    /// Algebraic consistency is left to [`CohRing::validate`].
    pub fn new(
        divisor_basis: Vec<String>,
        curve_basis: Vec<String>,
        div_div: Vec<Vec<CurveClass>>,
        div_curve: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let rho = divisor_basis.len();
        let rho_c = curve_basis.len();
        if rho == 0 {
            return Err(Error::InvalidRing("empty divisor basis".into()));
        }
        if div_div.len() != rho || div_curve.len() != rho {
            return Err(Error::InvalidRing(format!("expected {rho} rows of structure constants")));
        }
        for (i, row) in div_div.iter().enumerate() {
            if row.len() != rho {
                return Err(Error::InvalidRing(format!("div_div row {i} has {} entries, expected {rho}", row.len())));
            }
            if let Some(j) = row.iter().position(|c| c.len() != rho_c) {
                return Err(Error::InvalidRing(format!("div_div[{i}][{j}] is not a curve class of length {rho_c}")));
            }
        }
        for (i, row) in div_curve.iter().enumerate() {
            if row.len() != rho_c {
                return Err(Error::InvalidRing(format!(
                    "div_curve row {i} has {} entries, expected {rho_c}",
                    row.len()
                )));
            }
        }
        Ok(CohRing { divisor_basis, curve_basis, div_div, div_curve })
    }

    pub fn rho(&self) -> usize {
        self.divisor_basis.len()
    }

    pub fn curve_rank(&self) -> usize {
        self.curve_basis.len()
    }

    pub fn divisor_basis(&self) -> &[String] {
        &self.divisor_basis
    }

    pub fn curve_basis(&self) -> &[String] {
        &self.curve_basis
    }

    pub fn div_div(&self) -> &[Vec<CurveClass>] {
        &self.div_div
    }

    pub fn div_curve(&self) -> &[Vec<Rational>] {
        &self.div_curve
    }

    pub fn divisor(&self, coords: &[i64]) -> Result<DivisorClass> {
        let d = DivisorClass::from_ints(coords);
        self.check_divisor(&d)?;
        Ok(d)
    }

    pub fn zero_divisor(&self) -> DivisorClass {
        DivisorClass::zero(self.rho())
    }

    pub fn zero_curve(&self) -> CurveClass {
        CurveClass::zero(self.curve_rank())
    }

    pub fn check_divisor(&self, d: &DivisorClass) -> Result<()> {
        if d.len() != self.rho() {
            return Err(Error::DimensionMismatch { expected: self.rho(), found: d.len() });
        }
        Ok(())
    }

    pub fn check_curve(&self, c: &CurveClass) -> Result<()> {
        if c.len() != self.curve_rank() {
            return Err(Error::DimensionMismatch { expected: self.curve_rank(), found: c.len() });
        }
        Ok(())
    }

    pub fn mul_div_div(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<CurveClass> {
        self.check_divisor(d1)?;
        self.check_divisor(d2)?;
        let mut out = self.zero_curve();
        for (i, x) in d1.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in d2.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let w = x * y;
                for (o, c) in out.coords.iter_mut().zip(&self.div_div[i][j].coords) {
                    *o += &w * c;
                }
            }
        }
        Ok(out)
    }

    pub fn integrate(&self, d: &DivisorClass, c: &CurveClass) -> Result<Rational> {
        self.check_divisor(d)?;
        self.check_curve(c)?;
        let mut total = Rational::zero();
        for (i, x) in d.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in c.coords.iter().enumerate() {
                total += x * y * &self.div_curve[i][k];
            }
        }
        Ok(total)
    }

    pub fn triple(&self, d1: &DivisorClass, d2: &DivisorClass, d3: &DivisorClass) -> Result<Rational> {
        self.integrate(d1, &self.mul_div_div(d2, d3)?)
    }

    pub fn cube(&self, d: &DivisorClass) -> Result<Rational> {
        self.triple(d, d, d)
    }

    /// All diagnostics for commutativity and full symmetry of triple products.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let rho = self.rho();
        let mut out = Vec::new();
        for i in 0..rho {
            for j in i + 1..rho {
                if self.div_div[i][j] != self.div_div[j][i] {
                    out.push(Diagnostic {
                        kind: "commutativity",
                        indices: vec![i, j],
                        message: format!(
                            "{}*{} = {} but {}*{} = {}",
                            self.divisor_basis[i],
                            self.divisor_basis[j],
                            self.div_div[i][j],
                            self.divisor_basis[j],
                            self.divisor_basis[i],
                            self.div_div[j][i]
                        ),
                    });
                }
            }
        }
        let e = |i| DivisorClass::basis(rho, i);
        let t = |i, j, k| self.triple(&e(i), &e(j), &e(k)).expect("basis classes have matching length");
        for i in 0..rho {
            for j in i..rho {
                for k in j..rho {
                    let base = t(i, j, k);
                    let perms = [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)];
                    if let Some(&(p, q, r)) = perms.iter().find(|&&(p, q, r)| t(p, q, r) != base) {
                        out.push(Diagnostic {
                            kind: "symmetry",
                            indices: vec![i, j, k],
                            message: format!(
                                "<{},{},{}> = {} but <{},{},{}> = {}",
                                i,
                                j,
                                k,
                                format_rational(&base),
                                p,
                                q,
                                r,
                                format_rational(&t(p, q, r))
                            ),
                        });
                    }
                }
            }
        }
        out
    }

    /// The degree-6 pairing matrix `e_i . c_k`, used to solve for curve classes.
    pub fn curve_from_pairings(&self, pairings: &[Rational]) -> Result<CurveClass> {
        if self.rho() != self.curve_rank() {
            return Err(Error::InvalidArgument("pairing is not square".into()));
        }
        Ok(CurveClass::new(linalg::solve(&self.div_curve, pairings)?))
    }
}

/// Todd class components `td_1, td_2, td_3` (with `td_0 = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Todd {
    pub td1: DivisorClass,
    pub td2: CurveClass,
    pub td3: Rational,
}

impl Todd {
    /// Todd class from Chern classes: `c1/2`, `(c1^2 + c2)/12`, `c1 c2 / 24`.
    pub fn from_chern(ring: &CohRing, c1: &DivisorClass, c2: &CurveClass) -> Result<Self> {
        let c1sq = ring.mul_div_div(c1, c1)?;
        Ok(Todd {
            td1: c1.scale(&Rational::new(1.into(), 2.into())),
            td2: (&c1sq + c2).scale(&Rational::new(1.into(), 12.into())),
            td3: ring.integrate(c1, c2)? / Rational::from_integer(24.into()),
        })
    }
}

/// A ring together with the positivity and characteristic class data that the
/// stability computations need. Custom rings may omit the optional parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetThreefold {
    pub name: String,
    pub ring: CohRing,
    pub nef_cone: Vec<DivisorClass>,
    pub canonical: Option<DivisorClass>,
    pub todd: Option<Todd>,
    pub chi: Option<Rational>,
}

impl PresetThreefold {
    /// Coordinates of `d` with respect to the nef cone generators.
    pub fn cone_coordinates(&self, d: &DivisorClass) -> Result<Vec<Rational>> {
        self.ring.check_divisor(d)?;
        if self.nef_cone.len() != self.ring.rho() {
            return Err(Error::InvalidArgument(format!(
                "nef cone of `{}` is not simplicial ({} generators, rank {})",
                self.name,
                self.nef_cone.len(),
                self.ring.rho()
            )));
        }
        let cols: Vec<Vec<Rational>> = self.nef_cone.iter().map(|g| g.coords.clone()).collect();
        linalg::solve(&linalg::transpose(&cols), &d.coords)
    }

    pub fn is_nef(&self, d: &DivisorClass) -> Result<bool> {
        Ok(self.cone_coordinates(d)?.iter().all(|c| !c.is_negative()))
    }

    /// Ample means strictly inside the nef cone.
    pub fn is_ample(&self, d: &DivisorClass) -> Result<bool> {
        Ok(self.cone_coordinates(d)?.iter().all(Signed::is_positive))
    }

    pub fn todd(&self) -> Result<&Todd> {
        self.todd.as_ref().ok_or(Error::MissingTodd)
    }

    /// Preset diagnostics: ring axioms, cone rank, and `td_3` against the stored `chi`.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = self.ring.validate();
        if !self.nef_cone.is_empty() {
            let cols: Vec<Vec<Rational>> = self.nef_cone.iter().map(|g| g.coords.clone()).collect();
            if cols.len() != self.ring.rho() || linalg::determinant(&cols).is_zero() {
                out.push(Diagnostic {
                    kind: "nef-cone",
                    indices: vec![],
                    message: "nef cone generators are not a basis".into(),
                });
            }
        }
        if let (Some(td), Some(chi)) = (&self.todd, &self.chi) {
            if &td.td3 != chi {
                out.push(Diagnostic {
                    kind: "todd",
                    indices: vec![],
                    message: format!("td3 = {} but chi = {}", format_rational(&td.td3), format_rational(chi)),
                });
            }
        }
        out
    }
}
