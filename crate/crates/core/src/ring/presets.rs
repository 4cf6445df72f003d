//! Ring data for the eight threefolds with nef tangent bundle.
//!
//! Curve bases are products of divisor basis elements. Todd classes are
//! derived from the stored Chern classes; `chi` is stored independently so
//! that `td_3` can be checked against it.

use super::{CohRing, CurveClass, DivisorClass, PresetThreefold, Todd};
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

pub const PRESET_NAMES: [&str; 8] =
    ["P3", "Quadric3", "P1xP2", "P1xP1xP1", "PT_P2", "P1xAbelianSurface", "P2xEllipticCurve", "P1xP1xEllipticCurve"];

struct Table<'a> {
    divisors: &'a [&'a str],
    curves: &'a [&'a str],
    div_div: &'a [&'a [&'a [i64]]],
    div_curve: &'a [&'a [i64]],
    c1: &'a [i64],
    c2: &'a [i64],
    chi: i64,
}

fn build(name: &str, s: Table<'_>) -> PresetThreefold {
    let labels = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let ring = CohRing::new(
        labels(s.divisors),
        labels(s.curves),
        s.div_div.iter().map(|row| row.iter().map(|c| CurveClass::from_ints(c)).collect()).collect(),
        s.div_curve.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect(),
    )
    .expect("preset shapes are consistent");
    let rho = ring.rho();
    let c1 = DivisorClass::from_ints(s.c1);
    let c2 = CurveClass::from_ints(s.c2);
    let todd = Todd::from_chern(&ring, &c1, &c2).expect("preset classes match the ring");
    PresetThreefold {
        name: name.to_string(),
        nef_cone: (0..rho).map(|i| DivisorClass::basis(rho, i)).collect(),
        canonical: Some(-&c1),
        todd: Some(todd),
        chi: Some(Rational::from_integer(s.chi.into())),
        ring,
    }
}

pub fn preset(name: &str) -> Result<PresetThreefold> {
    let x = match name {
        "P3" => build(
            name,
            Table {
                divisors: &["H"],
                curves: &["H^2"],
                div_div: &[&[&[1]]],
                div_curve: &[&[1]],
                c1: &[4],
                c2: &[6],
                chi: 1,
            },
        ),
        "Quadric3" => build(
            name,
            Table {
                divisors: &["H"],
                curves: &["H^2"],
                div_div: &[&[&[1]]],
                div_curve: &[&[2]],
                c1: &[3],
                c2: &[4],
                chi: 1,
            },
        ),
        "P1xP2" => build(
            name,
            Table {
                divisors: &["h1", "h2"],
                curves: &["h1h2", "h2^2"],
                div_div: &[&[&[0, 0], &[1, 0]], &[&[1, 0], &[0, 1]]],
                div_curve: &[&[0, 1], &[1, 0]],
                c1: &[2, 3],
                c2: &[6, 3],
                chi: 1,
            },
        ),
        "P1xP1xP1" => build(
            name,
            Table {
                divisors: &["h1", "h2", "h3"],
                curves: &["h2h3", "h1h3", "h1h2"],
                div_div: &[
                    &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]],
                    &[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]],
                    &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]],
                ],
                div_curve: &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
                c1: &[2, 2, 2],
                c2: &[4, 4, 4],
                chi: 1,
            },
        ),
        // Divisor of bidegree (1,1) in P2 x P2: h1^3 = h2^3 = 0, h1^2 h2 = h1 h2^2 = 1,
        // so h1 h2 = h1^2 + h2^2 numerically.
        "PT_P2" => build(
            name,
            Table {
                divisors: &["h1", "h2"],
                curves: &["h1^2", "h2^2"],
                div_div: &[&[&[1, 0], &[1, 1]], &[&[1, 1], &[0, 1]]],
                div_curve: &[&[0, 1], &[1, 0]],
                c1: &[2, 2],
                c2: &[6, 6],
                chi: 1,
            },
        ),
        // theta^2 = 2 points on the principally polarized abelian surface.
        "P1xAbelianSurface" => build(
            name,
            Table {
                divisors: &["h", "theta"],
                curves: &["h.theta", "theta^2"],
                div_div: &[&[&[0, 0], &[1, 0]], &[&[1, 0], &[0, 1]]],
                div_curve: &[&[0, 2], &[2, 0]],
                c1: &[2, 0],
                c2: &[0, 0],
                chi: 0,
            },
        ),
        "P2xEllipticCurve" => build(
            name,
            Table {
                divisors: &["h", "f"],
                curves: &["h^2", "h.f"],
                div_div: &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]],
                div_curve: &[&[0, 1], &[1, 0]],
                c1: &[3, 0],
                c2: &[3, 0],
                chi: 0,
            },
        ),
        "P1xP1xEllipticCurve" => build(
            name,
            Table {
                divisors: &["h1", "h2", "f"],
                curves: &["h2.f", "h1.f", "h1h2"],
                div_div: &[
                    &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]],
                    &[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]],
                    &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]],
                ],
                div_curve: &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
                c1: &[2, 2, 0],
                c2: &[0, 0, 4],
                chi: 0,
            },
        ),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn every_preset_is_valid() {
        for name in PRESET_NAMES {
            let x = preset(name).unwrap();
            assert!(x.validate().is_empty(), "{name}: {:?}", x.validate());
        }
        assert!(matches!(preset("P4"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn todd_degree_three_matches_chi() {
        let expected = [1, 1, 1, 1, 1, 0, 0, 0];
        for (name, chi) in PRESET_NAMES.iter().zip(expected) {
            let x = preset(name).unwrap();
            assert_eq!(x.todd().unwrap().td3, rat(chi), "{name}");
        }
    }

    #[test]
    fn basic_normalizations() {
        let p3 = preset("P3").unwrap();
        assert_eq!(p3.ring.rho(), 1);
        assert_eq!(p3.ring.cube(&p3.ring.divisor(&[1]).unwrap()).unwrap(), rat(1));
        let q = preset("Quadric3").unwrap();
        assert_eq!(q.ring.cube(&q.ring.divisor(&[1]).unwrap()).unwrap(), rat(2));
    }

    #[test]
    fn cone_generators_pair_nonnegatively_with_ample_classes() {
        for name in PRESET_NAMES {
            let x = preset(name).unwrap();
            let r = &x.ring;
            let rho = r.rho();
            for weights in [vec![1; rho], (1..=rho as i64).collect::<Vec<_>>()] {
                let h = DivisorClass::from_ints(&weights);
                for g in &x.nef_cone {
                    assert!(!r.triple(&h, &h, g).unwrap().is_negative());
                    assert!(!r.triple(&h, g, g).unwrap().is_negative());
                }
            }
        }
    }
}
