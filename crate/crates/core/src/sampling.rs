//! Seeded random classes for the property suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chern::ChernVector;
use crate::rational::{frac, Rational};
use crate::ring::{DivisorClass, PresetThreefold};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A seed derived from a base seed and a label, so that each suite draws
    /// an independent stream.
    pub fn for_label(seed: u64, label: &str) -> Self {
        let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Self::new(seed ^ h)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// `p/q` with `|p| <= num`, `1 <= q <= den`.
    pub fn rational(&mut self, num: i64, den: i64) -> Rational {
        frac(self.int(-num, num), self.int(1, den))
    }

    pub fn nonnegative_rational(&mut self, num: i64, den: i64) -> Rational {
        frac(self.int(0, num), self.int(1, den))
    }

    fn cone_combination(&mut self, x: &PresetThreefold, positive: bool) -> DivisorClass {
        let mut d = x.ring.zero_divisor();
        for g in &x.nef_cone {
            let c = if positive { frac(self.int(1, 6), self.int(1, 3)) } else { self.nonnegative_rational(6, 3) };
            d = &d + &g.scale(&c);
        }
        d
    }

    /// Nonnegative rational combination of the nef cone generators.
    pub fn nef_divisor(&mut self, x: &PresetThreefold) -> DivisorClass {
        self.cone_combination(x, false)
    }

    /// Strictly positive combination of the nef cone generators.
    pub fn ample_divisor(&mut self, x: &PresetThreefold) -> DivisorClass {
        self.cone_combination(x, true)
    }

    pub fn integral_divisor(&mut self, x: &PresetThreefold, bound: i64) -> DivisorClass {
        DivisorClass::from_ints(&(0..x.ring.rho()).map(|_| self.int(-bound, bound)).collect::<Vec<_>>())
    }

    pub fn rational_divisor(&mut self, x: &PresetThreefold) -> DivisorClass {
        DivisorClass::new((0..x.ring.rho()).map(|_| self.rational(4, 3)).collect())
    }

    pub fn line_bundle(&mut self, x: &PresetThreefold, bound: i64) -> ChernVector {
        let d = self.integral_divisor(x, bound);
        ChernVector::line_bundle(&x.ring, &d).expect("divisor built in the ring")
    }

    /// An integral combination of up to three line bundles, possibly shifted.
    pub fn chern_vector(&mut self, x: &PresetThreefold) -> ChernVector {
        let mut out = ChernVector::zero(&x.ring);
        for _ in 0..self.int(1, 3) {
            let l = self.line_bundle(x, 2);
            let c = Rational::from_integer(self.int(-2, 2).into());
            out = &out + &l.scale(&c);
        }
        out
    }
}
