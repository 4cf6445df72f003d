//! Positivity tests for divisors: the negativity inequality and the chain of
//! Hodge index inequalities that rules it out for nef divisors.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, Rational};
use crate::ring::{DivisorClass, PresetThreefold};

pub fn is_nef(d: &DivisorClass, x: &PresetThreefold) -> Result<bool> {
    x.is_nef(d)
}

fn require_ample(h: &DivisorClass, x: &PresetThreefold) -> Result<()> {
    if !x.is_ample(h)? {
        return Err(Error::NotAmple(format!("{h} is not in the interior of the nef cone")));
    }
    Ok(())
}

/// The four intersection numbers `H^3, H^2 D, H D^2, D^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersections {
    pub h3: Rational,
    pub h2d: Rational,
    pub hd2: Rational,
    pub d3: Rational,
}

impl Intersections {
    pub fn compute(d: &DivisorClass, h: &DivisorClass, x: &PresetThreefold) -> Result<Self> {
        let r = &x.ring;
        Ok(Intersections {
            h3: r.triple(h, h, h)?,
            h2d: r.triple(h, h, d)?,
            hd2: r.triple(h, d, d)?,
            d3: r.triple(d, d, d)?,
        })
    }

    fn to_json(&self) -> Value {
        json!({
            "H^3": format_rational(&self.h3),
            "H^2.D": format_rational(&self.h2d),
            "H.D^2": format_rational(&self.hd2),
            "D^3": format_rational(&self.d3),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegTest {
    /// Whether `D^3 > (H^2 D)^3 / (4 (H^3)^2) + 3 (H D^2)^2 / (4 H^2 D)` holds.
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl NegTest {
    pub fn to_json(&self) -> Value {
        json!({ "holds": self.holds, "lhs": format_rational(&self.lhs), "rhs": format_rational(&self.rhs) })
    }
}

pub fn neg_divisor_test(d: &DivisorClass, h: &DivisorClass, x: &PresetThreefold) -> Result<NegTest> {
    require_ample(h, x)?;
    let n = Intersections::compute(d, h, x)?;
    if n.h2d.is_zero() {
        return Err(Error::Undefined("H^2.D = 0 leaves the right-hand side undefined".into()));
    }
    let rhs = n.h2d.pow(3) / (rat(4) * n.h3.pow(2)) + rat(3) * n.hd2.pow(2) / (rat(4) * &n.h2d);
    Ok(NegTest { holds: n.d3 > rhs, lhs: n.d3, rhs })
}

/// One inequality `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub label: &'static str,
    pub statement: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Inequality {
    fn new(label: &'static str, statement: &'static str, lhs: Rational, rhs: Rational) -> Self {
        Inequality { label, statement, lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "statement": self.statement,
            "lhs": format_rational(&self.lhs),
            "rhs": format_rational(&self.rhs),
            "holds": self.holds(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeChain {
    pub numbers: Intersections,
    /// `(h1)` to `(h5)`; `(h5)` is the conclusion `(H D^2)^2 / H^2 D >= D^3`
    /// with the denominator cleared.
    pub inequalities: Vec<Inequality>,
    /// The three displayed steps leading to `(h5)`, each `None` when one of its
    /// denominators vanishes.
    pub h5_steps: Vec<Option<Inequality>>,
}

impl HodgeChain {
    pub fn all_hold(&self) -> bool {
        self.inequalities.iter().all(Inequality::holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "intersections": self.numbers.to_json(),
            "inequalities": self.inequalities.iter().map(Inequality::to_json).collect::<Vec<_>>(),
            "h5_steps": self.h5_steps.iter().map(|s| s.as_ref().map_or(Value::Null, Inequality::to_json)).collect::<Vec<_>>(),
            "all_hold": self.all_hold(),
        })
    }
}

pub fn hodge_chain(d: &DivisorClass, h: &DivisorClass, x: &PresetThreefold) -> Result<HodgeChain> {
    if !x.is_nef(d)? {
        return Err(Error::NotNef);
    }
    require_ample(h, x)?;
    let n = Intersections::compute(d, h, x)?;
    let Intersections { h3, h2d, hd2, d3 } = n.clone();
    let inequalities = vec![
        Inequality::new("h1", "(H^2.D)^3 >= (H^3)^2 D^3", h2d.pow(3), h3.pow(2) * &d3),
        Inequality::new("h2", "(H.D^2)^3 >= H^3 (D^3)^2", hd2.pow(3), &h3 * d3.pow(2)),
        Inequality::new("h3", "(H^2.D)^2 >= H^3 H.D^2", h2d.pow(2), &h3 * &hd2),
        Inequality::new("h4", "(H^2.D)^3 / (H^3)^2 >= D^3", h2d.pow(3) / h3.pow(2), d3.clone()),
        Inequality::new("h5", "(H.D^2)^2 >= D^3 H^2.D", hd2.pow(2), &d3 * &h2d),
    ];
    let steps_defined = !h2d.is_zero() && !hd2.is_zero();
    let h5_steps = if steps_defined {
        let first = hd2.pow(2) / &h2d;
        let second = &h3 * d3.pow(2) / (&h2d * &hd2);
        let third = h2d.pow(2) / (&hd2 * &h3) * &d3;
        vec![
            Some(Inequality::new("h5.1", "(H.D^2)^2/H^2.D >= H^3 (D^3)^2/(H^2.D H.D^2)", first, second.clone())),
            Some(Inequality::new(
                "h5.2",
                "H^3 (D^3)^2/(H^2.D H.D^2) >= (H^2.D)^2 D^3/(H.D^2 H^3)",
                second,
                third.clone(),
            )),
            Some(Inequality::new("h5.3", "(H^2.D)^2 D^3/(H.D^2 H^3) >= D^3", third, d3.clone())),
        ]
    } else {
        vec![None, None, None]
    };
    debug_assert!(h3.is_positive());
    Ok(HodgeChain { numbers: n, inequalities, h5_steps })
}
