use nefstab::bundle_maps::frobenius_pullback;
use nefstab::chern::{twist, v_vector, ChernVector, Polarization};
use nefstab::rational::{frac, rat};
use nefstab::ring::PRESET_NAMES;
use nefstab::sampling::Sampler;
use nefstab::stability::central_charge;
use nefstab::{preset, QuadExt};
use proptest::prelude::*;

fn any_preset() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(PRESET_NAMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triple_products_are_symmetric(name in any_preset(), seed in any::<u64>()) {
        let x = preset(name).unwrap();
        let r = &x.ring;
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.rational_divisor(&x), s.rational_divisor(&x), s.rational_divisor(&x));
        let t = r.triple(&a, &b, &c).unwrap();
        prop_assert_eq!(&t, &r.triple(&b, &a, &c).unwrap());
        prop_assert_eq!(&t, &r.triple(&c, &b, &a).unwrap());
        prop_assert_eq!(&t, &r.triple(&a, &c, &b).unwrap());
    }

    #[test]
    fn twists_compose(name in any_preset(), seed in any::<u64>()) {
        let x = preset(name).unwrap();
        let r = &x.ring;
        let mut s = Sampler::new(seed);
        let e = s.chern_vector(&x);
        let (b1, b2) = (s.rational_divisor(&x), s.rational_divisor(&x));
        let stepwise = twist(r, &twist(r, &e, &b1).unwrap(), &b2).unwrap();
        prop_assert_eq!(stepwise, twist(r, &e, &(&b1 + &b2)).unwrap());
    }

    #[test]
    fn twisting_a_line_bundle_moves_its_divisor(name in any_preset(), seed in any::<u64>()) {
        let x = preset(name).unwrap();
        let r = &x.ring;
        let mut s = Sampler::new(seed);
        let d = s.integral_divisor(&x, 3);
        let b = s.rational_divisor(&x);
        let l = ChernVector::line_bundle(r, &d).unwrap();
        prop_assert_eq!(twist(r, &l, &b).unwrap(), ChernVector::line_bundle(r, &(&d - &b)).unwrap());
    }

    #[test]
    fn delta_bar_ignores_twists_along_h(name in any_preset(), seed in any::<u64>()) {
        let x = preset(name).unwrap();
        let mut s = Sampler::new(seed);
        let h = s.ample_divisor(&x);
        let e = s.chern_vector(&x);
        let alpha = QuadExt::from_rational(s.nonnegative_rational(6, 4) + frac(1, 4));
        let beta = s.rational(4, 3);
        let at0 = Polarization::new(&x, h.clone(), alpha.clone(), x.ring.zero_divisor()).unwrap();
        let moved = Polarization::new(&x, h.clone(), alpha, h.scale(&beta)).unwrap();
        let d0 = v_vector(&e, &at0).unwrap().delta_bar();
        prop_assert_eq!(d0, v_vector(&e, &moved).unwrap().delta_bar());
    }

    #[test]
    fn central_charge_is_additive_and_odd_under_shift(name in any_preset(), seed in any::<u64>()) {
        let x = preset(name).unwrap();
        let mut s = Sampler::new(seed);
        let h = s.ample_divisor(&x);
        let pol = Polarization::new(&x, h, QuadExt::sqrt_of(&s.nonnegative_rational(5, 3)).unwrap_or_else(QuadExt::one), s.rational_divisor(&x));
        let pol = match pol { Ok(p) => p, Err(_) => return Ok(()) };
        let (e, f) = (s.chern_vector(&x), s.chern_vector(&x));
        let (ze, zf) = (central_charge(&e, &pol).unwrap(), central_charge(&f, &pol).unwrap());
        let sum = central_charge(&(&e + &f), &pol).unwrap();
        prop_assert_eq!(&sum.re, &(&ze.re + &zf.re));
        prop_assert_eq!(&sum.im, &(&ze.im + &zf.im));
        let shifted = central_charge(&e.shift(1), &pol).unwrap();
        prop_assert_eq!(shifted, ze.scale(&rat(-1)));
    }

    #[test]
    fn frobenius_pullbacks_compose(name in any_preset(), seed in any::<u64>(), m in 1u64..5, n in 1u64..5) {
        let x = preset(name).unwrap();
        let e = Sampler::new(seed).chern_vector(&x);
        let twice = frobenius_pullback(&frobenius_pullback(&e, m).unwrap(), n).unwrap();
        prop_assert_eq!(twice, frobenius_pullback(&e, m * n).unwrap());
    }

    #[test]
    fn quadratic_comparisons_agree_with_floats(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50, r in 2i64..30) {
        let rr = rat(r);
        let x = QuadExt::new(rat(a), rat(b), &rr).unwrap();
        let y = QuadExt::new(rat(c), rat(d), &rr).unwrap();
        let gap = x.to_f64() - y.to_f64();
        if gap.abs() > 1e-9 {
            prop_assert_eq!(x.exact_cmp(&y), gap.partial_cmp(&0.0).unwrap());
        }
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) / &y, x);
        }
    }
}
