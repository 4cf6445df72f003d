//! Numerical walls `nu(E) = nu(F)` in the `(alpha, beta)` plane.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::nu_at;
use crate::chern::{h_degrees, ChernVector};
use crate::error::{Error, Result};
use crate::rational::{format_rational, frac, rat, sign, Rational};
use crate::ring::{CohRing, DivisorClass};

/// Polynomial in `A = alpha^2` and `beta`, keyed by exponents `(A, beta)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly2(BTreeMap<(u32, u32), Rational>);

impl Poly2 {
    fn term(a: u32, b: u32, c: Rational) -> Self {
        let mut p = Poly2::default();
        p.add_term(a, b, c);
        p
    }

    fn add_term(&mut self, a: u32, b: u32, c: Rational) {
        let e = self.0.entry((a, b)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&(a, b));
        }
    }

    fn add(&self, o: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(a, b), c) in &o.0 {
            out.add_term(a, b, c.clone());
        }
        out
    }

    fn neg(&self) -> Poly2 {
        Poly2(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    fn mul(&self, o: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for (&(a1, b1), c1) in &self.0 {
            for (&(a2, b2), c2) in &o.0 {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    fn coeff(&self, a: u32, b: u32) -> Rational {
        self.0.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `nu` numerator and denominator (up to the common factor `1/alpha`) from
/// the `H`-degrees `e` of an untwisted class:
/// `N = e2 - beta e1 + (beta^2/2 - A/6) e0`, `D = e1 - beta e0`.
fn nu_parts(e: &[Rational; 4]) -> (Poly2, Poly2) {
    let mut n = Poly2::term(0, 0, e[2].clone());
    n.add_term(0, 1, -e[1].clone());
    n.add_term(0, 2, &e[0] / rat(2));
    n.add_term(1, 0, -(&e[0] / rat(6)));
    let mut d = Poly2::term(0, 0, e[1].clone());
    d.add_term(0, 1, -e[0].clone());
    (n, d)
}

/// The wall `c_A A + c_bb beta^2 + c_b beta + c_1 = 0` between two classes,
/// obtained from `N_E D_F - N_F D_E`. The cubic terms always cancel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallConic {
    pub c_a: Rational,
    pub c_bb: Rational,
    pub c_b: Rational,
    pub c_1: Rational,
    /// `H`-degrees `(H^3 ch0, H^2 ch1, H ch2, ch3)` of the two classes.
    pub e: [Rational; 4],
    pub f: [Rational; 4],
}

impl WallConic {
    pub fn is_degenerate(&self) -> bool {
        self.c_a.is_zero() && self.c_bb.is_zero() && self.c_b.is_zero() && self.c_1.is_zero()
    }

    pub fn eval(&self, a: &Rational, beta: &Rational) -> Rational {
        &self.c_a * a + &self.c_bb * beta * beta + &self.c_b * beta + &self.c_1
    }

    /// `sign(nu(E) - nu(F))` at `(alpha, beta)`, reading `+inf` when a
    /// denominator `D` vanishes.
    pub fn sign_at(&self, alpha: &Rational, beta: &Rational) -> i8 {
        let de = &self.e[1] - beta * &self.e[0];
        let df = &self.f[1] - beta * &self.f[0];
        match (de.is_zero(), df.is_zero()) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => -1,
            (false, false) => sign(&self.eval(&(alpha * alpha), beta)) * sign(&(de * df)),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha_sq": format_rational(&self.c_a),
            "beta_sq": format_rational(&self.c_bb),
            "beta": format_rational(&self.c_b),
            "constant": format_rational(&self.c_1),
            "degenerate": self.is_degenerate(),
        })
    }
}

pub fn wall_conic(ring: &CohRing, e: &ChernVector, f: &ChernVector, h: &DivisorClass) -> Result<WallConic> {
    let de = h_degrees(ring, e, h)?;
    let df = h_degrees(ring, f, h)?;
    let (ne, dne) = nu_parts(&de);
    let (nf, dnf) = nu_parts(&df);
    let p = ne.mul(&dnf).add(&nf.mul(&dne).neg());
    debug_assert!(p.0.keys().all(|k| matches!(k, (1, 0) | (0, 2) | (0, 1) | (0, 0))));
    Ok(WallConic { c_a: p.coeff(1, 0), c_bb: p.coeff(0, 2), c_b: p.coeff(0, 1), c_1: p.coeff(0, 0), e: de, f: df })
}

/// Cell-centred sampling grid. Cell `(i, j)` sits at
/// `alpha = lo + (i + 1/2) (hi - lo) / steps` and likewise for `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub alpha: (Rational, Rational),
    pub beta: (Rational, Rational),
    pub alpha_steps: usize,
    pub beta_steps: usize,
}

impl Grid {
    pub fn new(alpha: (Rational, Rational), beta: (Rational, Rational), alpha_steps: usize, beta_steps: usize) -> Self {
        Grid { alpha, beta, alpha_steps, beta_steps }
    }

    fn check(&self) -> Result<()> {
        if self.alpha_steps == 0 || self.beta_steps == 0 {
            return Err(Error::InvalidArgument("empty grid".into()));
        }
        if self.alpha.0.is_negative() || self.alpha.1 <= self.alpha.0 {
            return Err(Error::InvalidArgument("alpha range must be a nonempty interval in (0, inf)".into()));
        }
        if self.beta.1 < self.beta.0 {
            return Err(Error::InvalidArgument("beta range is reversed".into()));
        }
        Ok(())
    }

    fn centers(range: &(Rational, Rational), steps: usize) -> Vec<Rational> {
        let width = &range.1 - &range.0;
        (0..steps).map(|i| &range.0 + &width * frac(2 * i as i64 + 1, 2 * steps as i64)).collect()
    }

    pub fn alphas(&self) -> Vec<Rational> {
        Self::centers(&self.alpha, self.alpha_steps)
    }

    pub fn betas(&self) -> Vec<Rational> {
        Self::centers(&self.beta, self.beta_steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallDiagram {
    pub conic: WallConic,
    pub grid: Grid,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
    /// `sign(nu(E) - nu(F))` by direct evaluation, row `i` for `alphas[i]`.
    pub cells: Vec<Vec<i8>>,
    /// Whether the conic reproduces every sampled sign.
    pub consistent: bool,
}

impl WallDiagram {
    pub fn degenerate(&self) -> bool {
        self.conic.is_degenerate()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "conic": self.conic.to_json(),
            "degenerate": self.degenerate(),
            "consistent": self.consistent,
            "alphas": self.alphas.iter().map(format_rational).collect::<Vec<_>>(),
            "betas": self.betas.iter().map(format_rational).collect::<Vec<_>>(),
            "signs": self.cells,
        })
    }
}

struct Scan<'a> {
    ring: &'a CohRing,
    e: &'a ChernVector,
    f: &'a ChernVector,
    h: &'a DivisorClass,
    conic: &'a WallConic,
}

impl Scan<'_> {
    /// Directly evaluated sign and whether the conic agrees with it.
    fn cell(&self, alpha: &Rational, beta: &Rational) -> Result<(i8, bool)> {
        let ne = nu_at(self.ring, self.e, self.h, alpha, beta)?;
        let nf = nu_at(self.ring, self.f, self.h, alpha, beta)?;
        let direct = match ne.exact_cmp(&nf) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        };
        Ok((direct, direct == self.conic.sign_at(alpha, beta)))
    }
}

pub fn wall_scan(
    ring: &CohRing,
    e: &ChernVector,
    f: &ChernVector,
    h: &DivisorClass,
    grid: &Grid,
) -> Result<WallDiagram> {
    grid.check()?;
    let conic = wall_conic(ring, e, f, h)?;
    let alphas = grid.alphas();
    let betas = grid.betas();
    let scan = Scan { ring, e, f, h, conic: &conic };
    let nb = betas.len();
    let flat: Vec<(i8, bool)> = (0..alphas.len() * nb)
        .into_par_iter()
        .map(|k| scan.cell(&alphas[k / nb], &betas[k % nb]))
        .collect::<Result<_>>()?;
    let consistent = flat.iter().all(|&(_, ok)| ok);
    let cells = flat.chunks(nb).map(|row| row.iter().map(|&(s, _)| s).collect()).collect();
    Ok(WallDiagram { conic, grid: grid.clone(), alphas, betas, cells, consistent })
}
