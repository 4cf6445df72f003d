//! Closed forms computed by hand, compared against the library.

use nefstab::chern::{beta_bar, bms_check, v_vector, BmsVerdict, ChernVector, Polarization};
use nefstab::divisor_checks::{hodge_chain, Intersections};
use nefstab::ptp2::{self, Convention};
use nefstab::rational::{frac, rat};
use nefstab::stability::central_charge;
use nefstab::{preset, DivisorClass, QuadExt, Rational};

fn line(x: &nefstab::PresetThreefold, d: &[i64]) -> ChernVector {
    ChernVector::line_bundle(&x.ring, &DivisorClass::from_ints(d)).unwrap()
}

fn chi(x: &nefstab::PresetThreefold, d: &[i64]) -> Rational {
    let o = ChernVector::structure_sheaf(&x.ring);
    ptp2::euler_pairing(x, &o, &line(x, d)).unwrap()
}

#[test]
fn euler_characteristics_of_line_bundles() {
    let p3 = preset("P3").unwrap();
    for d in -6..=6 {
        assert_eq!(chi(&p3, &[d]), frac((d + 1) * (d + 2) * (d + 3), 6), "P3, O({d})");
    }
    let q = preset("Quadric3").unwrap();
    for d in -4..=4 {
        // (d+1)(d+2)(2d+3)/6 on the quadric threefold
        assert_eq!(chi(&q, &[d]), frac((d + 1) * (d + 2) * (2 * d + 3), 6), "Q3, O({d})");
    }
    let p12 = preset("P1xP2").unwrap();
    for a in -3..=3 {
        for b in -3..=3 {
            assert_eq!(chi(&p12, &[a, b]), frac((a + 1) * (b + 1) * (b + 2), 2));
        }
    }
    let p111 = preset("P1xP1xP1").unwrap();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                assert_eq!(chi(&p111, &[a, b, c]), rat((a + 1) * (b + 1) * (c + 1)));
            }
        }
    }
}

#[test]
fn flag_threefold_matches_weyl_dimension() {
    let x = preset("PT_P2").unwrap();
    for k in -4..=4 {
        for l in -4..=4 {
            assert_eq!(chi(&x, &[k, l]), frac((k + 1) * (l + 1) * (k + l + 2), 2), "O({k},{l})");
        }
    }
}

#[test]
fn flag_threefold_degrees_from_intersection_numbers() {
    // h1^3 = h2^3 = 0 and h1^2 h2 = h1 h2^2 = 1
    for a in 1..=3 {
        for b in 1..=3 {
            for k in -3..=3 {
                for l in -3..=3 {
                    let want = [
                        rat(3 * a * b * (a + b)),
                        rat(a * a * l + 2 * a * b * (k + l) + b * b * k),
                        frac(a * (2 * k * l + l * l) + b * (k * k + 2 * k * l), 2),
                        frac(3 * k * l * (k + l), 6),
                    ];
                    assert_eq!(ptp2::degrees(a, b, k, l, Convention::Ring), want);
                }
            }
        }
    }
}

#[test]
fn skyscraper_from_the_collection_by_hand() {
    let coeffs = [1, 2, 1, 1, 2, 1];
    let gens = [(-1, -1, 3), (0, -1, 2), (1, -1, 1), (-1, 0, 2), (0, 0, 1), (1, 0, 0)];
    assert_eq!(ptp2::decompose_skyscraper().unwrap(), coeffs.map(|c| c as u64));
    for (a, b) in [(1, 1), (1, 2), (3, 1), (2, 5)] {
        let mut total = [rat(0), rat(0), rat(0), rat(0)];
        for (&n, &(k, l, shift)) in coeffs.iter().zip(&gens) {
            let sign = if shift % 2 == 0 { n } else { -n };
            let e = [
                rat(3 * a * b * (a + b)),
                rat(a * a * l + 2 * a * b * (k + l) + b * b * k),
                frac(a * (2 * k * l + l * l) + b * (k * k + 2 * k * l), 2),
                frac(k * l * (k + l), 2),
            ];
            for i in 0..4 {
                total[i] += &e[i] * rat(sign);
            }
        }
        assert_eq!(total, [rat(0), rat(0), rat(0), rat(1)], "H = ({a},{b})");
    }
}

#[test]
fn central_charge_on_p3() {
    let x = preset("P3").unwrap();
    let h = DivisorClass::from_ints(&[1]);
    for (alpha, beta) in [(frac(1, 2), frac(-1, 3)), (rat(1), rat(0)), (frac(3, 2), frac(5, 4))] {
        let pol = Polarization::new(&x, h.clone(), QuadExt::from_rational(alpha.clone()), h.scale(&beta)).unwrap();
        for d in -3..=3 {
            let t = rat(d) - &beta;
            let v0 = &alpha * &alpha * &alpha;
            let v1 = &alpha * &alpha * &t;
            let v2 = &alpha * &t * &t / rat(2);
            let v3 = &t * &t * &t / rat(6);
            let z = central_charge(&line(&x, &[d]), &pol).unwrap();
            assert_eq!(z.re, QuadExt::from_rational(-v3 + v1 / rat(2)));
            assert_eq!(z.im, QuadExt::from_rational(v2 - v0 / rat(6)));
        }
    }
}

#[test]
fn irrational_alpha_stays_exact() {
    let x = preset("P3").unwrap();
    let h = DivisorClass::from_ints(&[1]);
    let alpha = QuadExt::sqrt_of(&frac(1, 12)).unwrap();
    let pol = Polarization::new(&x, h, alpha, DivisorClass::from_ints(&[0])).unwrap();
    let v = v_vector(&line(&x, &[1]), &pol).unwrap();
    // alpha^2 = 1/12, so v1 = 1/12 and the Delta-bar of a line bundle is 0
    assert_eq!(v.v1, QuadExt::from_rational(frac(1, 12)));
    assert!(v.delta_bar().is_zero());
}

#[test]
fn beta_bar_of_line_bundles_on_picard_rank_one() {
    for name in ["P3", "Quadric3"] {
        let x = preset(name).unwrap();
        let h = DivisorClass::from_ints(&[1]);
        let pol = Polarization::new(&x, h, QuadExt::one(), DivisorClass::from_ints(&[0])).unwrap();
        for d in -4..=4 {
            let l = line(&x, &[d]);
            assert_eq!(beta_bar(&l, &pol).unwrap().exact(), Some(&QuadExt::from_i64(d)));
            let r = bms_check(&l, &pol).unwrap();
            assert_eq!(r.verdict, BmsVerdict::Holds);
            assert!(r.value.is_zero());
        }
    }
}

#[test]
fn intersection_numbers_on_p1_cubed() {
    let x = preset("P1xP1xP1").unwrap();
    let h = DivisorClass::from_ints(&[1, 1, 1]);
    for (a, b, c) in [(1, 2, 3), (0, 1, 5), (2, 0, 0), (-1, 4, 2)] {
        let n = Intersections::compute(&DivisorClass::from_ints(&[a, b, c]), &h, &x).unwrap();
        assert_eq!(n.h3, rat(6));
        assert_eq!(n.h2d, rat(2 * (a + b + c)));
        assert_eq!(n.hd2, rat(2 * (a * b + b * c + c * a)));
        assert_eq!(n.d3, rat(6 * a * b * c));
    }
}

#[test]
fn hodge_chain_on_a_nef_fibre_class() {
    // D = h1 on P1 x P1 x P1 has D^2 = 0, so every quantity beyond H^2 D vanishes
    let x = preset("P1xP1xP1").unwrap();
    let c = hodge_chain(&DivisorClass::from_ints(&[1, 0, 0]), &DivisorClass::from_ints(&[1, 1, 1]), &x).unwrap();
    assert_eq!(c.numbers.hd2, rat(0));
    assert_eq!(c.numbers.d3, rat(0));
    assert!(c.inequalities.iter().all(|i| i.holds()));
}
