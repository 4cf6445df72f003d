//! Multiplication maps on the cohomology and the toric Frobenius splitting.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::chern::{multiply, twist, ChernVector, GradedQuadruple};
use crate::error::{Error, Result};
use crate::rational::{format_rational, frac, Rational};
use crate::ring::{CohRing, DivisorClass};

fn positive(name: &str, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `(x, y, z, w) -> (x, m^2 y, m^4 z, m^6 w)`.
pub fn frobenius_pullback(c: &GradedQuadruple, m: u64) -> Result<GradedQuadruple> {
    positive("m", m)?;
    let m2 = Rational::from_integer((m * m).into());
    let m4 = &m2 * &m2;
    let m6 = &m4 * &m2;
    Ok(ChernVector::new(c.ch0.clone(), c.ch1.scale(&m2), c.ch2.scale(&m4), &c.ch3 * m6))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistIdentity {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

impl TwistIdentity {
    pub fn to_json(&self) -> Value {
        json!({ "lhs": format_rational(&self.lhs), "rhs": format_rational(&self.rhs), "equal": self.equal })
    }
}

/// Compares `ch3( F_{mq}^* ch(E) . exp(-m^2 q D) )` with `(mq)^6 ch3^{D/q}(E)`.
/// The left side multiplies by a line bundle class in the ring; the right
/// side uses the degree-wise twist formula.
pub fn ch3_twist_identity(ring: &CohRing, e: &ChernVector, d: &DivisorClass, m: u64, q: u64) -> Result<TwistIdentity> {
    positive("m", m)?;
    positive("q", q)?;
    let mq = m * q;
    let pulled = frobenius_pullback(e, mq)?;
    let line = ChernVector::line_bundle(ring, &d.scale(&-Rational::from_integer((m * m * q).into())))?;
    let lhs = multiply(ring, &pulled, &line)?.ch3;
    let twisted = twist(ring, e, &d.scale(&frac(1, q as i64)))?;
    let rhs = Rational::from_integer(mq.pow(6).into()) * twisted.ch3;
    Ok(TwistIdentity { equal: lhs == rhs, lhs, rhs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitCase {
    /// `P^1`-bundle over an abelian surface.
    P1BundleOverA,
    /// `P^2`-bundle over an elliptic curve.
    P2BundleOverC,
    /// `P^1 x P^1`-bundle over an elliptic curve.
    P1xP1BundleOverC,
}

impl SplitCase {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "p1a" | "P1BundleOverA" => Ok(SplitCase::P1BundleOverA),
            "p2c" | "P2BundleOverC" => Ok(SplitCase::P2BundleOverC),
            "p1p1c" | "P1xP1BundleOverC" => Ok(SplitCase::P1xP1BundleOverC),
            _ => Err(Error::InvalidArgument(format!("unknown split case `{s}` (expected p1a, p2c or p1p1c)"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SplitCase::P1BundleOverA => "P1BundleOverA",
            SplitCase::P2BundleOverC => "P2BundleOverC",
            SplitCase::P1xP1BundleOverC => "P1xP1BundleOverC",
        }
    }
}

/// One line bundle summand `O(fiber twists) (x) L^{base exponents / m}` with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitSummand {
    pub fiber_twist: Vec<i64>,
    /// Exponents of the `m`-th root `L^{1/m}` of the degree-0 line bundle(s).
    pub base_exponents: Vec<i64>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub case: SplitCase,
    pub m: u64,
    /// Fiber degrees as given.
    pub degrees: Vec<i64>,
    /// Common fiber twist `floor(a / m^2)` split off before decomposing.
    pub extracted: Vec<i64>,
    pub summands: Vec<SplitSummand>,
}

impl Split {
    pub fn rank(&self) -> u64 {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// Multiplicities of each fiber twist, ignoring base exponents.
    pub fn fiber_multiset(&self) -> BTreeMap<Vec<i64>, u64> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry(s.fiber_twist.clone()).or_insert(0) += s.multiplicity;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let n = self.m * self.m;
        json!({
            "case": self.case.label(),
            "m": self.m,
            "fiber_degrees": self.degrees,
            "extracted_fiber_twist": self.extracted,
            "rank": self.rank(),
            "base_convention": format!("exponents of L^(1/m), each in 0..={}", n - 1),
            "statement_convention": format!("exponents of L^j with 0 <= j <= {n}"),
            "summands": self.summands.iter().map(|s| json!({
                "fiber_twist": s.fiber_twist,
                "base_exponents": s.base_exponents,
                "multiplicity": s.multiplicity,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Summands `(fiber twist, base exponent)` for degree `a` on a `P^1` fiber with
/// `N = m^2`: `u1 = j` runs over `0..N`, `u0 = (a - j) mod N`, twist `(a - u0 - u1)/N`.
fn p1_pieces(a: i64, n: i64) -> Vec<(i64, i64)> {
    (0..n)
        .map(|u1| {
            let u0 = (a - u1).rem_euclid(n);
            ((a - u0 - u1).div_euclid(n), u1)
        })
        .collect()
}

fn collect(pieces: impl IntoIterator<Item = (Vec<i64>, Vec<i64>)>) -> Vec<SplitSummand> {
    let mut counts: BTreeMap<(Vec<i64>, Vec<i64>), u64> = BTreeMap::new();
    for key in pieces {
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|((fiber_twist, base_exponents), multiplicity)| SplitSummand { fiber_twist, base_exponents, multiplicity })
        .collect()
}

pub fn toric_split_summands(case: SplitCase, degrees: &[i64], m: u64) -> Result<Split> {
    positive("m", m)?;
    let expected = if case == SplitCase::P1xP1BundleOverC { 2 } else { 1 };
    if degrees.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: degrees.len() });
    }
    let n = (m * m) as i64;
    let extracted: Vec<i64> = degrees.iter().map(|a| a.div_euclid(n)).collect();
    let reduced: Vec<i64> = degrees.iter().map(|a| a.rem_euclid(n)).collect();
    let summands = match case {
        SplitCase::P1BundleOverA => {
            collect(p1_pieces(reduced[0], n).into_iter().map(|(t, j)| (vec![t + extracted[0]], vec![j])))
        }
        SplitCase::P2BundleOverC => {
            let a = reduced[0];
            let mut pieces = Vec::with_capacity((n * n) as usize);
            for u1 in 0..n {
                for u2 in 0..n {
                    let u0 = (a - u1 - u2).rem_euclid(n);
                    let t = (a - u0 - u1 - u2).div_euclid(n);
                    pieces.push((vec![t + extracted[0]], vec![u1, u2]));
                }
            }
            collect(pieces)
        }
        SplitCase::P1xP1BundleOverC => {
            let first = p1_pieces(reduced[0], n);
            let second = p1_pieces(reduced[1], n);
            let mut pieces = Vec::with_capacity(first.len() * second.len());
            for (t1, j1) in &first {
                for (t2, j2) in &second {
                    pieces.push((vec![t1 + extracted[0], t2 + extracted[1]], vec![*j1, *j2]));
                }
            }
            collect(pieces)
        }
    };
    Ok(Split { case, m, degrees: degrees.to_vec(), extracted, summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::ring::{preset, CurveClass};
    use proptest::prelude::*;

    fn summand(t: i64, j: i64) -> SplitSummand {
        SplitSummand { fiber_twist: vec![t], base_exponents: vec![j], multiplicity: 1 }
    }

    #[test]
    fn frobenius_scaling() {
        let x = preset("PT_P2").unwrap();
        let c = ChernVector::new(rat(1), x.ring.divisor(&[1, -2]).unwrap(), CurveClass::from_ints(&[3, 1]), rat(5));
        assert_eq!(frobenius_pullback(&c, 1).unwrap(), c);
        let p = frobenius_pullback(&c, 2).unwrap();
        assert_eq!(p.ch1, c.ch1.scale(&rat(4)));
        assert_eq!(p.ch2, c.ch2.scale(&rat(16)));
        assert_eq!(p.ch3, rat(320));
        assert!(frobenius_pullback(&c, 0).is_err());
    }

    #[test]
    fn twist_identity_small_cases() {
        let x = preset("P1xAbelianSurface").unwrap();
        let r = &x.ring;
        let o = ChernVector::structure_sheaf(r);
        let z = ch3_twist_identity(r, &o, &r.zero_divisor(), 2, 3).unwrap();
        assert_eq!((z.lhs.clone(), z.rhs.clone(), z.equal), (rat(0), rat(0), true));
        let p = preset("P1xP1xP1").unwrap();
        let d = p.ring.divisor(&[1, 2, -1]).unwrap();
        let t = ch3_twist_identity(&p.ring, &ChernVector::structure_sheaf(&p.ring), &d, 1, 1).unwrap();
        assert!(t.equal);
        assert_eq!(t.lhs, -p.ring.cube(&d).unwrap() / rat(6));
    }

    #[test]
    fn p1_case_m2_a1() {
        let s = toric_split_summands(SplitCase::P1BundleOverA, &[1], 2).unwrap();
        assert_eq!(s.summands, vec![summand(-1, 2), summand(-1, 3), summand(0, 0), summand(0, 1)]);
        assert_eq!(s.rank(), 4);
        let one = toric_split_summands(SplitCase::P1BundleOverA, &[0], 1).unwrap();
        assert_eq!(one.summands, vec![summand(0, 0)]);
    }

    #[test]
    fn reduction_extracts_common_twist() {
        let s = toric_split_summands(SplitCase::P1BundleOverA, &[9], 2).unwrap();
        assert_eq!(s.extracted, vec![2]);
        let t = toric_split_summands(SplitCase::P1BundleOverA, &[1], 2).unwrap();
        let shifted: Vec<SplitSummand> =
            t.summands.iter().map(|x| SplitSummand { fiber_twist: vec![x.fiber_twist[0] + 2], ..x.clone() }).collect();
        assert_eq!(s.summands, shifted);
        let neg = toric_split_summands(SplitCase::P1BundleOverA, &[-1], 2).unwrap();
        assert_eq!(neg.extracted, vec![-1]);
        assert_eq!(neg.rank(), 4);
    }

    #[test]
    fn higher_cases_have_rank_m4() {
        for m in 1..=3u64 {
            for a in 0..(m * m) as i64 {
                let p2 = toric_split_summands(SplitCase::P2BundleOverC, &[a], m).unwrap();
                assert_eq!(p2.rank(), m.pow(4));
                let pp = toric_split_summands(SplitCase::P1xP1BundleOverC, &[a, 0], m).unwrap();
                assert_eq!(pp.rank(), m.pow(4));
            }
        }
        // O_P2 under the square Frobenius with m = 1 is itself
        let s = toric_split_summands(SplitCase::P2BundleOverC, &[0], 1).unwrap();
        assert_eq!(s.summands.len(), 1);
        assert!(toric_split_summands(SplitCase::P1xP1BundleOverC, &[1], 2).is_err());
        assert!(toric_split_summands(SplitCase::P1BundleOverA, &[1], 0).is_err());
    }

    #[test]
    fn p2_fiber_multiplicities() {
        // N = 4: exponent pairs with 1 <= u1 + u2 <= 4 give twist -1, those
        // with u1 + u2 in {5, 6} give twist -2.
        let s = toric_split_summands(SplitCase::P2BundleOverC, &[0], 2).unwrap();
        let f = s.fiber_multiset();
        assert_eq!(f.get(&vec![0]), Some(&1));
        assert_eq!(f.get(&vec![-1]), Some(&12));
        assert_eq!(f.get(&vec![-2]), Some(&3));
    }

    proptest! {
        #[test]
        fn frobenius_composes(m in 1u64..5, n in 1u64..5, c in proptest::collection::vec(-9i64..9, 8)) {
            let x = preset("P1xP1xP1").unwrap();
            let v = ChernVector::new(rat(c[0]), x.ring.divisor(&c[1..4]).unwrap(), CurveClass::from_ints(&c[4..7]), rat(c[7]));
            let lhs = frobenius_pullback(&frobenius_pullback(&v, n).unwrap(), m).unwrap();
            prop_assert_eq!(lhs, frobenius_pullback(&v, m * n).unwrap());
        }

        #[test]
        fn frobenius_respects_products(m in 1u64..5, y1 in proptest::collection::vec(-9i64..9, 2), y2 in proptest::collection::vec(-9i64..9, 2)) {
            let x = preset("PT_P2").unwrap();
            let r = &x.ring;
            let (a, b) = (r.divisor(&y1).unwrap(), r.divisor(&y2).unwrap());
            let m2 = Rational::from_integer((m * m).into());
            prop_assert_eq!(
                r.mul_div_div(&a.scale(&m2), &b.scale(&m2)).unwrap(),
                r.mul_div_div(&a, &b).unwrap().scale(&(&m2 * &m2))
            );
        }

        #[test]
        fn p1_split_matches_fiber_model(m in 1u64..5, a in -40i64..40) {
            let n = (m * m) as i64;
            let s = toric_split_summands(SplitCase::P1BundleOverA, &[a], m).unwrap();
            let (q, r) = (a.div_euclid(n), a.rem_euclid(n));
            let f = s.fiber_multiset();
            prop_assert_eq!(f.get(&vec![q]).copied().unwrap_or(0), (r + 1) as u64);
            prop_assert_eq!(f.get(&vec![q - 1]).copied().unwrap_or(0), (n - r - 1) as u64);
            prop_assert_eq!(s.rank(), n as u64);
        }
    }
}
