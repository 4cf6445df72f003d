//! Computations on `X = P(T_{P^2})`, the flag threefold, with `H = a h1 + b h2`.
//!
//! Two conventions for `H.ch2(O(k,l))` are carried side by side: the value
//! computed in the cohomology ring ([`Convention::Ring`]) and the closed form
//! `(2k+l) l a + (k+2l) k b` ([`Convention::ClosedForm`]), which is exactly twice
//! the ring value. `H^2.ch1` and `ch3` agree in both.
//!
//! Charge and heart tests depend on `alpha` only through `t = alpha^2` once the
//! positive factor `alpha` is divided out of every imaginary part, so all of
//! them are evaluated in `t`. This keeps thresholds such as the smallest root
//! of a quadratic in `t` exact.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::chern::{h_degrees, multiply, ChernVector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::quad::QuadExt;
use crate::rational::{format_rational, frac, rat, Rational};
use crate::ring::{preset, DivisorClass, PresetThreefold};
use crate::stability::{cone_check, Charge, ConeVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    ClosedForm,
    Ring,
}

impl Convention {
    pub fn label(&self) -> &'static str {
        match self {
            Convention::ClosedForm => "closed-form",
            Convention::Ring => "ring",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One object `O(k,l)[shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub k: i64,
    pub l: i64,
    pub shift: i64,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({},{})[{}]", self.k, self.l, self.shift)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrant {
    /// `Re > 0, Im > 0`.
    First,
    /// `Re <= 0, Im > 0`.
    Second,
    /// `Re < 0, Im < 0`.
    Third,
}

/// The full Ext-exceptional collection generating the heart `C`, together with
/// the quadrant each generator's charge is expected to occupy and the shift
/// `n` with `O(k,l)[n]` in the doubly tilted heart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCollection {
    pub items: [Generator; 6],
}

const fn g(k: i64, l: i64, shift: i64) -> Generator {
    Generator { k, l, shift }
}

impl ExceptionalCollection {
    pub fn standard() -> Self {
        ExceptionalCollection { items: [g(-1, -1, 3), g(0, -1, 2), g(1, -1, 1), g(-1, 0, 2), g(0, 0, 1), g(1, 0, 0)] }
    }

    pub fn expected_quadrant(item: &Generator) -> Quadrant {
        match (item.k, item.l) {
            (1, 0) => Quadrant::First,
            (-1, -1) => Quadrant::Third,
            _ => Quadrant::Second,
        }
    }

    /// Placement of each line bundle in the doubly tilted heart `A`.
    pub fn expected_heart_shift(k: i64, l: i64) -> Option<i64> {
        match (k, l) {
            (1, 0) => Some(0),
            (0, 0) | (1, -1) => Some(1),
            (-1, 0) | (0, -1) | (-1, -1) => Some(2),
            _ => None,
        }
    }
}

/// `H`-degrees `(H^3 ch0, H^2 ch1, H ch2, ch3)` of `O(k,l)`.
pub fn degrees(a: i64, b: i64, k: i64, l: i64, convention: Convention) -> [Rational; 4] {
    let r = ClosedFormReport::compute(a, b, k, l);
    let h3 = rat(3 * a * b * (a + b));
    let hch2 = match convention {
        Convention::ClosedForm => r.h_ch2.closed_form,
        Convention::Ring => r.h_ch2.ring,
    };
    [h3, r.h2_ch1.ring, hch2, r.ch3.ring]
}

fn ptp2() -> PresetThreefold {
    preset("PT_P2").expect("PT_P2 is a preset")
}

pub fn ch_line_bundle(k: i64, l: i64) -> ChernVector {
    let x = ptp2();
    ChernVector::line_bundle(&x.ring, &DivisorClass::from_ints(&[k, l])).expect("rank two divisor")
}

/// One closed form against the value computed in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCheck {
    pub closed_form: Rational,
    pub ring: Rational,
}

impl FormulaCheck {
    pub fn matches(&self) -> bool {
        self.closed_form == self.ring
    }

    /// `closed_form / ring`, when the ring value is nonzero.
    pub fn ratio(&self) -> Option<Rational> {
        (!self.ring.is_zero()).then(|| &self.closed_form / &self.ring)
    }

    fn to_json(&self) -> Value {
        json!({
            "closed_form": format_rational(&self.closed_form),
            "ring": format_rational(&self.ring),
            "matches": self.matches(),
            "ratio": self.ratio().map(|q| format_rational(&q)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub a: i64,
    pub b: i64,
    pub k: i64,
    pub l: i64,
    pub h2_ch1: FormulaCheck,
    pub h_ch2: FormulaCheck,
    pub ch3: FormulaCheck,
}

impl ClosedFormReport {
    pub fn compute(a: i64, b: i64, k: i64, l: i64) -> Self {
        let x = ptp2();
        let r = &x.ring;
        let h = DivisorClass::from_ints(&[a, b]);
        let ch = ChernVector::line_bundle(r, &DivisorClass::from_ints(&[k, l])).expect("rank two divisor");
        let e = h_degrees(r, &ch, &h).expect("rank two divisor");
        ClosedFormReport {
            a,
            b,
            k,
            l,
            h2_ch1: FormulaCheck { closed_form: rat(l * a * a + 2 * (k + l) * a * b + k * b * b), ring: e[1].clone() },
            h_ch2: FormulaCheck { closed_form: rat((2 * k + l) * l * a + (k + 2 * l) * k * b), ring: e[2].clone() },
            ch3: FormulaCheck { closed_form: frac(k * l * (k + l), 2), ring: e[3].clone() },
        }
    }

    /// Formulas for `H^2.ch1` and `ch3` agree with the ring and the one for
    /// `H.ch2` is exactly twice the ring value.
    pub fn expected_pattern(&self) -> bool {
        self.h2_ch1.matches() && self.ch3.matches() && self.h_ch2.closed_form == rat(2) * &self.h_ch2.ring
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a, "b": self.b, "k": self.k, "l": self.l,
            "H^2.ch1": self.h2_ch1.to_json(),
            "H.ch2": self.h_ch2.to_json(),
            "ch3": self.ch3.to_json(),
            "expected_pattern": self.expected_pattern(),
        })
    }
}

pub fn closed_form_report(a: i64, b: i64, k: i64, l: i64) -> ClosedFormReport {
    ClosedFormReport::compute(a, b, k, l)
}

/// A positive real `alpha` known through `alpha^2`, with `alpha` itself kept
/// when it lies in a quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaParam {
    sq: QuadExt,
    exact: Option<QuadExt>,
}

impl AlphaParam {
    pub fn from_alpha(alpha: QuadExt) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
        }
        Ok(AlphaParam { sq: alpha.square(), exact: Some(alpha) })
    }

    pub fn from_sq(sq: QuadExt) -> Result<Self> {
        if !sq.is_positive() {
            return Err(Error::InvalidArgument(format!("alpha^2 must be positive, got {sq}")));
        }
        let exact = sq.sqrt_in_field();
        Ok(AlphaParam { sq, exact })
    }

    pub fn sq(&self) -> &QuadExt {
        &self.sq
    }

    pub fn exact(&self) -> Option<&QuadExt> {
        self.exact.as_ref()
    }

    /// `q alpha` for positive rational `q`.
    pub fn scaled(&self, q: &Rational) -> Self {
        AlphaParam { sq: self.sq.scale(&(q * q)), exact: self.exact.as_ref().map(|a| a.scale(q)) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha_sq": self.sq.to_string(),
            "alpha": self.exact.as_ref().map_or_else(|| format!("sqrt({})", self.sq), |a| a.to_string()),
        })
    }
}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(a) => write!(f, "{a}"),
            None => write!(f, "sqrt({})", self.sq),
        }
    }
}

/// Polynomial in `t = alpha^2` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TPoly(Vec<Rational>);

impl TPoly {
    fn linear(c0: Rational, c1: Rational) -> Self {
        TPoly(vec![c0, c1])
    }

    fn mul(&self, o: &TPoly) -> TPoly {
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in o.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        TPoly(out)
    }

    fn sub(&self, o: &TPoly) -> TPoly {
        let n = self.0.len().max(o.0.len());
        let at = |p: &TPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(Rational::zero);
        TPoly((0..n).map(|i| at(self, i) - at(o, i)).collect())
    }

    fn neg(&self) -> TPoly {
        TPoly(self.0.iter().map(|c| -c).collect())
    }

    fn eval(&self, t: &QuadExt) -> QuadExt {
        self.0.iter().rev().fold(QuadExt::zero(), |acc, c| &acc * t + QuadExt::from_rational(c.clone()))
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Supremum of `T` with the polynomial positive on `(0, T)`: `Some(0)` if it
    /// is not positive just right of 0, `None` if it stays positive.
    fn positivity_bound(&self) -> Option<QuadExt> {
        let mut c: Vec<Rational> = self.0.iter().skip_while(|c| c.is_zero()).cloned().collect();
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        if c.is_empty() || !c[0].is_positive() {
            return Some(QuadExt::zero());
        }
        let roots: Vec<QuadExt> = match c.len() {
            1 => vec![],
            2 => vec![QuadExt::from_rational(-&c[0] / &c[1])],
            3 => {
                let disc = &c[1] * &c[1] - rat(4) * &c[2] * &c[0];
                match QuadExt::sqrt_of(&disc) {
                    None => vec![],
                    Some(s) => {
                        let den = rat(2) * &c[2];
                        let base = QuadExt::from_rational(-&c[1] / &den);
                        let half = s.scale(&den.recip());
                        vec![&base + &half, &base - &half]
                    }
                }
            }
            _ => unreachable!("conditions are at most quadratic in t"),
        };
        roots.into_iter().filter(QuadExt::is_positive).min_by(|x, y| x.exact_cmp(y))
    }
}

/// Charge `Z_{alpha,0,s}` with the imaginary part divided by `alpha`, as
/// polynomials in `t`.
#[derive(Clone, Debug)]
struct ReducedCharge {
    re: TPoly,
    im: TPoly,
}

fn reduced_charge(a: i64, b: i64, item: &Generator, s: &Rational, convention: Convention) -> ReducedCharge {
    let e = degrees(a, b, item.k, item.l, convention);
    let sign = if item.shift.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
    ReducedCharge {
        re: TPoly::linear(-&e[3] * &sign, s * &e[1] * &sign),
        im: TPoly::linear(&e[2] * &sign, -(&e[0] / rat(6)) * &sign),
    }
}

/// Named strict positivity conditions in `t` for the placement of all six
/// charges and for the final cross inequality.
fn charge_conditions(a: i64, b: i64, s: &Rational, convention: Convention) -> Vec<(String, TPoly)> {
    let coll = ExceptionalCollection::standard();
    let mut out = Vec::new();
    let mut anchor = None;
    let mut last = None;
    for item in &coll.items {
        let z = reduced_charge(a, b, item, s, convention);
        let (re_cond, im_cond) = match ExceptionalCollection::expected_quadrant(item) {
            Quadrant::First => (Some(z.re.clone()), z.im.clone()),
            Quadrant::Second => (None, z.im.clone()),
            Quadrant::Third => (Some(z.re.neg()), z.im.neg()),
        };
        out.push((format!("{item}: Im sign"), im_cond));
        if let Some(r) = re_cond {
            out.push((format!("{item}: Re sign"), r));
        } else if !z.re.is_zero() {
            // second quadrant: Re <= 0, kept strict away from the imaginary axis
            out.push((format!("{item}: Re sign"), z.re.neg()));
        }
        if (item.k, item.l) == (1, 0) {
            anchor = Some(z.clone());
        }
        if (item.k, item.l) == (-1, -1) {
            last = Some(z.clone());
        }
    }
    let (z1, z6) = (anchor.expect("O(1,0) present"), last.expect("O(-1,-1) present"));
    out.push(("cross: Re1 Im6 - Im1 Re6".to_string(), z1.re.mul(&z6.im).sub(&z1.im.mul(&z6.re))));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha0 {
    pub mode: Convention,
    pub alpha: AlphaParam,
    /// Which term attains the minimum.
    pub binding: String,
    /// Every candidate threshold for `alpha^2`.
    pub thresholds: Vec<(String, QuadExt)>,
}

impl Alpha0 {
    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode.label(),
            "alpha0": self.alpha.to_json(),
            "binding": self.binding,
            "thresholds": self.thresholds.iter().map(|(n, v)| json!({ "condition": n, "alpha_sq": v.to_string() })).collect::<Vec<_>>(),
        })
    }
}

fn check_ab(a: i64, b: i64) -> Result<()> {
    if a <= 0 || b <= 0 {
        return Err(Error::InvalidArgument(format!("H = {a} h1 + {b} h2 must have positive coefficients")));
    }
    Ok(())
}

/// Supremum of `alpha^2` below which every charge condition holds under the
/// given convention, with `s` fixed.
pub fn derived_threshold(a: i64, b: i64, s: &Rational, convention: Convention) -> Result<Alpha0> {
    check_ab(a, b)?;
    let thresholds: Vec<(String, QuadExt)> = charge_conditions(a, b, s, convention)
        .into_iter()
        .filter_map(|(name, p)| p.positivity_bound().map(|t| (name, t)))
        .collect();
    let (binding, t) = thresholds
        .iter()
        .min_by(|x, y| x.1.exact_cmp(&y.1))
        .cloned()
        .ok_or_else(|| Error::Undefined("no condition bounds alpha".into()))?;
    Ok(Alpha0 { mode: convention, alpha: AlphaParam::from_sq(t)?, binding, thresholds })
}

/// `alpha_0`. Closed-form mode is `min{ sqrt(2/(a(a+b))), sqrt(18/(a^2+6ab+b^2)) }`
/// verbatim; ring mode is the derived threshold at `s = 1/18` with ring values.
pub fn alpha0(a: i64, b: i64, mode: Convention) -> Result<Alpha0> {
    check_ab(a, b)?;
    match mode {
        Convention::Ring => derived_threshold(a, b, &frac(1, 18), Convention::Ring),
        Convention::ClosedForm => {
            let thresholds = vec![
                ("2/(a(a+b))".to_string(), QuadExt::from_rational(frac(2, a * (a + b)))),
                ("18/(a^2+6ab+b^2)".to_string(), QuadExt::from_rational(frac(18, a * a + 6 * a * b + b * b))),
            ];
            let (binding, t) = thresholds.iter().min_by(|x, y| x.1.exact_cmp(&y.1)).cloned().expect("two terms");
            Ok(Alpha0 { mode, alpha: AlphaParam::from_sq(t)?, binding, thresholds })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeartStatus {
    InHeart,
    NotInHeart,
    /// `nu` vanishes, on the boundary between the two halves of the torsion pair.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeartMembership {
    pub generator: Generator,
    /// `0` if `O(k,l)` lies in the first tilt, `1` if `O(k,l)[1]` does.
    pub coh_shift: i64,
    /// `n` with `O(k,l)[n]` in the second tilt.
    pub heart_shift: i64,
    pub status: HeartStatus,
    pub mu_numerator: Rational,
    /// `H ch2 - alpha^2 H^3 ch0 / 6`, i.e. `Im Z / alpha` of `O(k,l)`.
    pub nu_numerator: QuadExt,
}

impl HeartMembership {
    pub fn to_json(&self) -> Value {
        json!({
            "object": self.generator.to_string(),
            "coh_shift": self.coh_shift,
            "heart_shift": self.heart_shift,
            "status": match self.status {
                HeartStatus::InHeart => "in_heart",
                HeartStatus::NotInHeart => "not_in_heart",
                HeartStatus::Boundary => "boundary",
            },
            "mu_numerator": format_rational(&self.mu_numerator),
            "nu_numerator": self.nu_numerator.to_string(),
        })
    }
}

/// Places `O(k,l)[shift]` relative to the tilted hearts at `B = 0`,
/// `omega = alpha H`, using that line bundles are slope and tilt stable.
pub fn heart_membership(
    k: i64,
    l: i64,
    shift: i64,
    a: i64,
    b: i64,
    alpha: &AlphaParam,
    convention: Convention,
) -> Result<HeartMembership> {
    check_ab(a, b)?;
    let e = degrees(a, b, k, l, convention);
    let mu_numerator = e[1].clone();
    // mu <= 0 puts the bundle in the torsion-free half, so its shift is in the tilt
    let coh_shift = if mu_numerator.is_positive() { 0 } else { 1 };
    let nu_numerator = QuadExt::from_rational(e[2].clone()) - alpha.sq().scale(&(&e[0] / rat(6)));
    // nu is unchanged by the shift; nu = +inf when mu's numerator vanishes
    let nu_sign = if mu_numerator.is_zero() { 1 } else { nu_numerator.sign() * crate::rational::sign(&mu_numerator) };
    let heart_shift = coh_shift + if nu_sign > 0 { 0 } else { 1 };
    let status = if nu_sign == 0 {
        HeartStatus::Boundary
    } else if heart_shift == shift {
        HeartStatus::InHeart
    } else {
        HeartStatus::NotInHeart
    };
    Ok(HeartMembership {
        generator: Generator { k, l, shift },
        coh_shift,
        heart_shift,
        status,
        mu_numerator,
        nu_numerator,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub value: QuadExt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeConeReport {
    pub a: i64,
    pub b: i64,
    pub alpha: AlphaParam,
    pub s: Rational,
    pub convention: Convention,
    /// `(object, Z)` with `Im Z` divided by `alpha`.
    pub reduced_charges: Vec<(Generator, Charge)>,
    /// `Z(O(1,0))` itself, when `alpha` is exact.
    pub anchor_charge: Option<Charge>,
    pub witnesses: Vec<Witness>,
    pub cone: ConeVerdict,
    pub precondition_violations: Vec<String>,
}

impl ChargeConeReport {
    /// Every strict inequality holds and the cone contains all charges.
    pub fn passed(&self) -> bool {
        self.witnesses.iter().all(|w| w.holds) && self.cone.inside && self.cone.zero_charges.is_empty()
    }

    pub fn cross(&self) -> &Witness {
        self.witnesses.last().expect("cross inequality is recorded last")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "b": self.b,
            "alpha": self.alpha.to_json(),
            "s": format_rational(&self.s),
            "convention": self.convention.label(),
            "reduced_charges": self.reduced_charges.iter().map(|(g, z)| json!({ "object": g.to_string(), "re": z.re.to_string(), "im_over_alpha": z.im.to_string() })).collect::<Vec<_>>(),
            "anchor_charge": self.anchor_charge.as_ref().map(Charge::to_json),
            "witnesses": self.witnesses.iter().map(|w| json!({ "name": w.name, "value": w.value.to_string(), "holds": w.holds })).collect::<Vec<_>>(),
            "cone_inside": self.cone.inside,
            "precondition_violations": self.precondition_violations,
            "passed": self.passed(),
        })
    }
}

/// Checks that the six generator charges of `C` lie in the half plane of
/// phases `[phi0, phi0 + 1]`, `phi0` being the phase of `Z(O(1,0))`.
pub fn charge_cone_check(
    a: i64,
    b: i64,
    alpha: &AlphaParam,
    s: &Rational,
    convention: Convention,
) -> Result<ChargeConeReport> {
    check_ab(a, b)?;
    let mut precondition_violations = Vec::new();
    if b <= a {
        precondition_violations.push(format!("b > a fails for (a, b) = ({a}, {b})"));
    }
    let bound = alpha0(a, b, convention)?;
    if alpha.sq().exact_cmp(bound.alpha.sq()) != std::cmp::Ordering::Less {
        precondition_violations.push(format!("alpha = {alpha} is not below alpha0 = {} ({convention})", bound.alpha));
    }
    let t = alpha.sq();
    let coll = ExceptionalCollection::standard();
    let reduced_charges: Vec<(Generator, Charge)> = coll
        .items
        .iter()
        .map(|item| {
            let z = reduced_charge(a, b, item, s, convention);
            (*item, Charge::new(z.re.eval(t), z.im.eval(t)))
        })
        .collect();
    let witnesses = charge_conditions(a, b, s, convention)
        .into_iter()
        .map(|(name, p)| {
            let value = p.eval(t);
            Witness { holds: value.is_positive(), name, value }
        })
        .collect();
    let charges: Vec<Charge> = reduced_charges.iter().map(|(_, z)| z.clone()).collect();
    let anchor_index = coll.items.iter().position(|g| (g.k, g.l) == (1, 0)).expect("O(1,0) present");
    let cone = cone_check(&charges, &charges[anchor_index])?;
    let anchor_charge = alpha.exact().map(|al| {
        let z = &charges[anchor_index];
        Charge::new(z.re.clone(), &z.im * al)
    });
    Ok(ChargeConeReport {
        a,
        b,
        alpha: alpha.clone(),
        s: s.clone(),
        convention,
        reduced_charges,
        anchor_charge,
        witnesses,
        cone,
        precondition_violations,
    })
}

/// Coefficients `n_i` with `sum n_i (-1)^{shift_i} ch(O(k_i,l_i)) = target`.
pub fn decompose(target: &ChernVector) -> Result<Vec<Rational>> {
    let coll = ExceptionalCollection::standard();
    let coords = |c: &ChernVector| -> Vec<Rational> {
        let mut v = vec![c.ch0.clone()];
        v.extend(c.ch1.coords.iter().cloned());
        v.extend(c.ch2.coords.iter().cloned());
        v.push(c.ch3.clone());
        v
    };
    let columns: Vec<Vec<Rational>> =
        coll.items.iter().map(|it| coords(&ch_line_bundle(it.k, it.l).shift(it.shift))).collect();
    let m = linalg::transpose(&columns);
    if linalg::determinant(&m).is_zero() {
        return Err(Error::SingularSystem);
    }
    linalg::solve(&m, &coords(target))
}

/// The dimension vector of a skyscraper sheaf with respect to the collection.
pub fn decompose_skyscraper() -> Result<[u64; 6]> {
    let n = decompose(&ChernVector::point(&ptp2().ring))?;
    let mut out = [0u64; 6];
    for (o, q) in out.iter_mut().zip(&n) {
        if !q.is_integer() || q.is_negative() {
            return Err(Error::Undefined(format!("coefficient {} is not a nonnegative integer", format_rational(q))));
        }
        *o = q.to_integer().try_into().map_err(|_| Error::Undefined("coefficient too large".into()))?;
    }
    Ok(out)
}

/// `chi(E, F) = int ch(E)^vee ch(F) td(X)`.
pub fn euler_pairing(x: &PresetThreefold, e: &ChernVector, f: &ChernVector) -> Result<Rational> {
    let td = x.todd()?;
    let r = &x.ring;
    let todd = ChernVector::new(Rational::one(), td.td1.clone(), td.td2.clone(), td.td3.clone());
    Ok(multiply(r, &multiply(r, &e.dual(), f)?, &todd)?.ch3)
}

/// JSON report for one `(a, b, alpha)` covering every check above under both conventions.
pub fn verify_report(a: i64, b: i64, alpha: &AlphaParam, s: &Rational) -> Result<Value> {
    let coll = ExceptionalCollection::standard();
    let mut per_convention = serde_json::Map::new();
    let mut ok = true;
    for conv in [Convention::Ring, Convention::ClosedForm] {
        let hearts: Vec<HeartMembership> = coll
            .items
            .iter()
            .map(|it| {
                let heart_shift = ExceptionalCollection::expected_heart_shift(it.k, it.l).expect("collection member");
                heart_membership(it.k, it.l, heart_shift, a, b, alpha, conv)
            })
            .collect::<Result<_>>()?;
        let hearts_ok = hearts.iter().all(|h| h.status == HeartStatus::InHeart);
        let cone = charge_cone_check(a, b, alpha, s, conv)?;
        ok &= hearts_ok && cone.passed();
        per_convention.insert(
            conv.label().to_string(),
            json!({
                "alpha0": alpha0(a, b, conv)?.to_json(),
                "hearts": hearts.iter().map(HeartMembership::to_json).collect::<Vec<_>>(),
                "hearts_match_placement": hearts_ok,
                "charge_cone": cone.to_json(),
            }),
        );
    }
    let formulas: Vec<Value> = coll.items.iter().map(|it| closed_form_report(a, b, it.k, it.l).to_json()).collect();
    let x = ptp2();
    let o = ChernVector::structure_sheaf(&x.ring);
    Ok(json!({
        "a": a,
        "b": b,
        "alpha": alpha.to_json(),
        "s": format_rational(s),
        "conventions": per_convention,
        "chern_formulas": formulas,
        "skyscraper_dimension_vector": decompose_skyscraper()?.to_vec(),
        "chi_O_O": format_rational(&euler_pairing(&x, &o, &o)?),
        "chi_O_O(1,0)": format_rational(&euler_pairing(&x, &o, &ch_line_bundle(1, 0))?),
        "all_conventions_pass": ok,
    }))
}
