//! The regression suite: one exact check per acceptance criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::bundle_maps::{ch3_twist_identity, frobenius_pullback, toric_split_summands, SplitCase};
use crate::chern::{bg_quantity, bms_check, delta_bar, v_vector, BmsVerdict, ChernVector, Polarization};
use crate::classexpr::parse_class;
use crate::divisor_checks::{hodge_chain, neg_divisor_test};
use crate::error::{Error, Result};
use crate::ptp2::{
    alpha0, ch_line_bundle, charge_cone_check, closed_form_report, decompose_skyscraper, euler_pairing,
    heart_membership, Convention, ExceptionalCollection, HeartStatus,
};
use crate::quad::QuadExt;
use crate::rational::{format_rational, frac, rat, Rational};
use crate::ring::{preset, DivisorClass, PresetThreefold, PRESET_NAMES};
use crate::sampling::Sampler;
use crate::stability::{nu_slope, wall_scan, Charge, Grid};

pub const SUITES: [&str; 6] = ["ring", "ptp2", "divisors", "bundle_maps", "chern", "walls"];

/// Failures kept per criterion in the report.
const WITNESS_CAP: usize = 12;

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Restrict to one entry of [`SUITES`].
    pub suite: Option<String>,
    /// Extra ring checked alongside the presets by the ring-axiom criterion.
    pub custom: Option<PresetThreefold>,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub name: &'static str,
    pub suite: &'static str,
    pub verdict: bool,
    pub elapsed: Duration,
    pub budget: Duration,
    pub details: Value,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed < self.budget
    }

    pub fn passed(&self) -> bool {
        self.verdict && self.within_budget()
    }

    /// One line: status, id, name, timing against the budget.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let time = if self.within_budget() { "" } else { " over budget" };
        format!(
            "{status} {:<3} {} [{:.3} s / {} s{time}]",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }

    /// Timings are left out so that reports are reproducible.
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "suite": self.suite,
            "verdict": self.verdict,
            "budget_seconds": self.budget.as_secs(),
            "details": self.details,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub suite: Option<String>,
    pub results: Vec<CriterionResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CriterionResult::passed)
    }

    pub fn get(&self, id: &str) -> Option<&CriterionResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": "verify-all",
            "seed": self.seed,
            "suite": self.suite,
            "criteria": self.results.iter().map(CriterionResult::to_json).collect::<Vec<_>>(),
            "passed": self.results.iter().all(|r| r.verdict),
        })
    }
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    suite: &'static str,
    budget_secs: u64,
    run: fn(&VerifyConfig) -> Result<(bool, Value)>,
}

const CRITERIA: [Criterion; 13] = [
    Criterion {
        id: "1",
        name: "ring axioms and triple-product symmetry",
        suite: "ring",
        budget_secs: 1,
        run: ring_axioms,
    },
    Criterion {
        id: "2",
        name: "closed forms for O(k,l) on P(T_P2) against the ring",
        suite: "ptp2",
        budget_secs: 5,
        run: closed_form_grid,
    },
    Criterion {
        id: "3",
        name: "Hodge index chain on sampled nef divisors",
        suite: "divisors",
        budget_secs: 10,
        run: hodge_sampling,
    },
    Criterion {
        id: "4",
        name: "negativity inequality never holds for nef divisors",
        suite: "divisors",
        budget_secs: 10,
        run: neg_sampling,
    },
    Criterion {
        id: "5",
        name: "Frobenius composition and ch3 twist identity",
        suite: "bundle_maps",
        budget_secs: 5,
        run: frobenius_sampling,
    },
    Criterion {
        id: "6",
        name: "toric Frobenius splitting multisets and ranks",
        suite: "bundle_maps",
        budget_secs: 5,
        run: toric_split,
    },
    Criterion { id: "7", name: "Todd class oracles on P(T_P2)", suite: "ptp2", budget_secs: 1, run: todd_oracles },
    Criterion { id: "8", name: "skyscraper dimension vector", suite: "ptp2", budget_secs: 1, run: skyscraper },
    Criterion {
        id: "9a",
        name: "heart placement and charge cone, ring convention",
        suite: "ptp2",
        budget_secs: 10,
        run: charge_grid_ring,
    },
    Criterion {
        id: "9b",
        name: "heart placement and charge cone, closed-form convention and its alpha0",
        suite: "ptp2",
        budget_secs: 10,
        run: charge_grid_closed_form,
    },
    Criterion {
        id: "10a",
        name: "line bundles: discriminant, BG quantity, BMS inequality",
        suite: "chern",
        budget_secs: 10,
        run: bms_sanity,
    },
    Criterion {
        id: "10b",
        name: "line bundles: BMS value exactly zero",
        suite: "chern",
        budget_secs: 10,
        run: bms_zero,
    },
    Criterion {
        id: "11",
        name: "wall scanner against direct slope evaluation",
        suite: "walls",
        budget_secs: 10,
        run: wall_oracle,
    },
];

pub fn criterion_ids() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.id).collect()
}

pub fn verify_all(config: &VerifyConfig) -> Result<VerifyReport> {
    if let Some(s) = &config.suite {
        if !SUITES.contains(&s.as_str()) {
            return Err(Error::InvalidArgument(format!("unknown suite `{s}` (expected one of {})", SUITES.join(", "))));
        }
    }
    let results = CRITERIA
        .iter()
        .filter(|c| config.suite.as_deref().is_none_or(|s| s == c.suite))
        .map(|c| run_one(c, config))
        .collect();
    Ok(VerifyReport { seed: config.seed, suite: config.suite.clone(), results })
}

/// Runs a single criterion by id.
pub fn verify_one(id: &str, config: &VerifyConfig) -> Result<CriterionResult> {
    let c = CRITERIA
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown criterion `{id}`")))?;
    Ok(run_one(c, config))
}

fn run_one(c: &Criterion, config: &VerifyConfig) -> CriterionResult {
    let start = Instant::now();
    let (verdict, details) = match (c.run)(config) {
        Ok(out) => out,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    CriterionResult {
        id: c.id,
        name: c.name,
        suite: c.suite,
        verdict,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(c.budget_secs),
        details,
    }
}

fn presets() -> Vec<PresetThreefold> {
    PRESET_NAMES.iter().map(|n| preset(n).expect("preset")).collect()
}

/// Collects up to [`WITNESS_CAP`] failures and counts the rest.
#[derive(Default)]
struct Failures {
    count: usize,
    witnesses: Vec<Value>,
}

impl Failures {
    fn push(&mut self, w: Value) {
        self.count += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(w);
        }
    }

    fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn finish(self, checked: usize, mut extra: Value) -> (bool, Value) {
        let ok = self.is_empty();
        if let Value::Object(m) = &mut extra {
            m.insert("checked".into(), json!(checked));
            m.insert("failures".into(), json!(self.count));
            m.insert("failure_witnesses".into(), Value::Array(self.witnesses));
        }
        (ok, extra)
    }
}

fn ring_axioms(config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut all: Vec<PresetThreefold> = presets();
    all.extend(config.custom.clone());
    let mut fails = Failures::default();
    let mut checked = 0;
    for x in &all {
        let r = &x.ring;
        let n = r.rho();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    checked += 1;
                    let e = |t| DivisorClass::basis(n, t);
                    let v = r.triple(&e(i), &e(j), &e(k))?;
                    for (p, q, s) in [(j, i, k), (i, k, j), (k, j, i)] {
                        let w = r.triple(&e(p), &e(q), &e(s))?;
                        if w != v {
                            fails.push(json!({ "ring": x.name, "indices": [i, j, k], "values": [format_rational(&v), format_rational(&w)] }));
                        }
                    }
                }
            }
        }
        for d in x.validate() {
            fails.push(json!({ "ring": x.name, "diagnostic": d.kind, "indices": d.indices, "message": d.message }));
        }
    }
    Ok(fails.finish(checked, json!({ "rings": all.iter().map(|x| x.name.clone()).collect::<Vec<_>>() })))
}

fn closed_form_grid(_: &VerifyConfig) -> Result<(bool, Value)> {
    let mut fails = Failures::default();
    let mut checked = 0;
    let mut ratios = BTreeMap::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for k in -3..=3 {
                for l in -3..=3 {
                    checked += 1;
                    let r = closed_form_report(a, b, k, l);
                    if let Some(q) = r.h_ch2.ratio() {
                        *ratios.entry(format_rational(&q)).or_insert(0u64) += 1;
                    }
                    if !r.expected_pattern() {
                        fails.push(r.to_json());
                    }
                }
            }
        }
    }
    let finding = "H^2.ch1 and ch3 closed forms match the ring; the H.ch2 closed form is exactly twice the ring value";
    Ok(fails.finish(checked, json!({ "finding": finding, "H.ch2_ratio_histogram": ratios })))
}

fn hodge_sampling(config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut fails = Failures::default();
    let mut checked = 0;
    for x in presets() {
        let mut s = Sampler::for_label(config.seed, &format!("hodge/{}", x.name));
        let hs: Vec<DivisorClass> = (0..20).map(|_| s.ample_divisor(&x)).collect();
        for i in 0..500 {
            let d = s.nef_divisor(&x);
            let h = &hs[i % hs.len()];
            checked += 1;
            let c = hodge_chain(&d, h, &x)?;
            if !c.all_hold() {
                fails.push(json!({ "preset": x.name, "D": d.to_strings(), "H": h.to_strings(), "chain": c.to_json() }));
            }
        }
    }
    Ok(fails.finish(checked, json!({ "per_preset": { "nef_D": 500, "ample_H": 20 } })))
}

fn neg_sampling(config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut fails = Failures::default();
    let mut checked = 0;
    let mut zero_skipped = 0;
    for x in presets() {
        let mut s = Sampler::for_label(config.seed, &format!("neg/{}", x.name));
        let hs: Vec<DivisorClass> = (0..20).map(|_| s.ample_divisor(&x)).collect();
        for i in 0..500 {
            let d = s.nef_divisor(&x);
            if d.is_zero() {
                // H^2.D = 0 leaves the inequality undefined
                zero_skipped += 1;
                continue;
            }
            checked += 1;
            let h = &hs[i % hs.len()];
            let t = neg_divisor_test(&d, h, &x)?;
            if t.holds {
                fails.push(json!({ "preset": x.name, "D": d.to_strings(), "H": h.to_strings(), "test": t.to_json() }));
            }
        }
    }
    Ok(fails.finish(checked, json!({ "zero_divisors_skipped": zero_skipped })))
}

fn frobenius_sampling(config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut fails = Failures::default();
    let mut checked = 0;
    for x in presets() {
        let mut s = Sampler::for_label(config.seed, &format!("frobenius/{}", x.name));
        for _ in 0..100 {
            checked += 1;
            let e = s.chern_vector(&x);
            let d = s.rational_divisor(&x);
            let (m, q) = (s.int(1, 3) as u64, s.int(1, 3) as u64);
            let composed = frobenius_pullback(&frobenius_pullback(&e, m)?, q)?;
            if composed != frobenius_pullback(&e, m * q)? {
                fails.push(json!({ "preset": x.name, "check": "composition", "E": e.to_json(), "m": m, "n": q }));
            }
            let t = ch3_twist_identity(&x.ring, &e, &d, m, q)?;
            if !t.equal {
                fails.push(json!({ "preset": x.name, "check": "twist", "E": e.to_json(), "D": d.to_strings(), "m": m, "q": q, "identity": t.to_json() }));
            }
        }
    }
    Ok(fails.finish(checked, json!({ "per_preset": 100, "m_q_max": 3 })))
}

fn toric_split(_: &VerifyConfig) -> Result<(bool, Value)> {
    let mut fails = Failures::default();
    let mut checked = 0;
    for m in 1..=4u64 {
        let n = (m * m) as i64;
        for a in 0..n {
            checked += 1;
            let split = toric_split_summands(SplitCase::P1BundleOverA, &[a], m)?;
            let mut want = BTreeMap::new();
            want.insert(vec![0], (a + 1) as u64);
            if n - a - 1 > 0 {
                want.insert(vec![-1], (n - a - 1) as u64);
            }
            if split.fiber_multiset() != want {
                fails.push(json!({ "case": "p1a", "m": m, "a": a, "got": split.to_json() }));
            }
            let p2 = toric_split_summands(SplitCase::P2BundleOverC, &[a], m)?;
            if p2.rank() != m.pow(4) {
                fails.push(json!({ "case": "p2c", "m": m, "a": a, "rank": p2.rank() }));
            }
            for b in 0..n {
                let pp = toric_split_summands(SplitCase::P1xP1BundleOverC, &[a, b], m)?;
                if pp.rank() != m.pow(4) {
                    fails.push(json!({ "case": "p1p1c", "m": m, "a": a, "b": b, "rank": pp.rank() }));
                }
            }
        }
    }
    Ok(fails.finish(checked, json!({ "m_max": 4 })))
}

fn todd_oracles(_: &VerifyConfig) -> Result<(bool, Value)> {
    let x = preset("PT_P2")?;
    let o = ChernVector::structure_sheaf(&x.ring);
    let chi_o = euler_pairing(&x, &o, &o)?;
    let chi_1 = euler_pairing(&x, &o, &ch_line_bundle(1, 0))?;
    let ok = chi_o == rat(1) && chi_1 == rat(3);
    Ok((ok, json!({ "chi(O)": format_rational(&chi_o), "chi(O, O(1,0))": format_rational(&chi_1) })))
}

fn skyscraper(_: &VerifyConfig) -> Result<(bool, Value)> {
    let v = decompose_skyscraper()?;
    let coll = ExceptionalCollection::standard();
    Ok((
        v == [1, 2, 1, 1, 2, 1],
        json!({
            "collection": coll.items.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "dimension_vector": v.to_vec(),
        }),
    ))
}

fn charge_grid(convention: Convention) -> Result<(bool, Value)> {
    let s = frac(1, 18);
    let coll = ExceptionalCollection::standard();
    let mut fails = Failures::default();
    let mut checked = 0;
    for a in 1..=5 {
        for b in a + 1..=5 {
            let bound = alpha0(a, b, convention)?;
            for (label, factor) in [("alpha0/2", frac(1, 2)), ("0.9 alpha0", frac(9, 10))] {
                checked += 1;
                let alpha = bound.alpha.scaled(&factor);
                let mut hearts = Vec::new();
                for it in &coll.items {
                    let want = ExceptionalCollection::expected_heart_shift(it.k, it.l).expect("collection member");
                    let h = heart_membership(it.k, it.l, want, a, b, &alpha, convention)?;
                    if h.status != HeartStatus::InHeart {
                        hearts.push(h.to_json());
                    }
                }
                let cone = charge_cone_check(a, b, &alpha, &s, convention)?;
                if !hearts.is_empty() || !cone.passed() || !cone.precondition_violations.is_empty() {
                    let failed: Vec<Value> = cone
                        .witnesses
                        .iter()
                        .filter(|w| !w.holds)
                        .map(|w| json!({ "name": w.name, "value": w.value.to_string(), "approx": w.value.to_f64() }))
                        .collect();
                    fails.push(json!({
                        "a": a, "b": b, "alpha": label,
                        "alpha0": bound.alpha.to_json(),
                        "heart_mismatches": hearts,
                        "failed_inequalities": failed,
                        "cone_outside": cone.cone.outside,
                    }));
                }
            }
        }
    }
    Ok(fails.finish(checked, json!({ "convention": convention.label(), "s": format_rational(&s) })))
}

fn charge_grid_ring(_: &VerifyConfig) -> Result<(bool, Value)> {
    let (mut ok, mut details) = charge_grid(Convention::Ring)?;
    let al = crate::ptp2::AlphaParam::from_alpha(QuadExt::from_rational(frac(1, 3)))?;
    let r = charge_cone_check(1, 2, &al, &frac(1, 18), Convention::Ring)?;
    let want = Charge::new(QuadExt::from_rational(frac(4, 81)), QuadExt::from_rational(frac(2, 9)));
    let witness_ok = r.anchor_charge.as_ref() == Some(&want);
    ok &= witness_ok;
    if let Value::Object(m) = &mut details {
        m.insert(
            "witness Z(O(1,0)) at (a,b,alpha) = (1,2,1/3)".into(),
            json!({ "value": r.anchor_charge.as_ref().map(Charge::to_json), "expected": want.to_json(), "matches": witness_ok }),
        );
    }
    Ok((ok, details))
}

fn charge_grid_closed_form(_: &VerifyConfig) -> Result<(bool, Value)> {
    charge_grid(Convention::ClosedForm)
}

/// Random line bundles with a random ample `H`, rational `alpha` and `B`.
fn line_bundle_samples(seed: u64) -> Vec<(PresetThreefold, ChernVector, DivisorClass, Rational, DivisorClass)> {
    let all = presets();
    let mut s = Sampler::for_label(seed, "bms");
    (0..200)
        .map(|_| {
            let x = all[s.int(0, all.len() as i64 - 1) as usize].clone();
            let l = s.line_bundle(&x, 3);
            let h = s.ample_divisor(&x);
            let alpha = frac(s.int(1, 6), s.int(1, 4));
            let b = s.rational_divisor(&x);
            (x, l, h, alpha, b)
        })
        .collect()
}

fn bms_sanity(config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut fails = Failures::default();
    let samples = line_bundle_samples(config.seed);
    for (x, l, h, alpha, b) in &samples {
        let witness = || json!({ "preset": x.name, "ch": l.to_json(), "H": h.to_strings(), "alpha": format_rational(alpha), "B": b.to_strings() });
        let pol = Polarization::new(x, h.clone(), QuadExt::from_rational(alpha.clone()), b.clone())?;
        let db = delta_bar(l, &pol)?;
        if db.is_negative() {
            fails.push(json!({ "sample": witness(), "delta_bar": db.to_string() }));
        }
        if let Err(e) = bg_quantity(l, &pol) {
            fails.push(json!({ "sample": witness(), "bg_quantity_error": e.to_string() }));
        }
        match bms_check(l, &pol) {
            Ok(r) if r.verdict == BmsVerdict::Holds => {}
            Ok(r) => fails.push(json!({ "sample": witness(), "bms": r.to_json() })),
            Err(e) => fails.push(json!({ "sample": witness(), "bms_error": e.to_string() })),
        }
    }
    Ok(fails.finish(samples.len(), json!({})))
}

fn bms_zero(config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut fails = Failures::default();
    let mut by_rho: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    let samples = line_bundle_samples(config.seed);
    for (x, l, h, alpha, b) in &samples {
        let pol = Polarization::new(x, h.clone(), QuadExt::from_rational(alpha.clone()), b.clone())?;
        let entry = by_rho.entry(x.ring.rho()).or_insert((0, 0));
        entry.0 += 1;
        match bms_check(l, &pol) {
            Ok(r) if r.value.is_zero() => {}
            Ok(r) => {
                entry.1 += 1;
                fails.push(json!({ "preset": x.name, "ch": l.to_json(), "H": h.to_strings(), "alpha": format_rational(alpha), "B": b.to_strings(), "value": r.value.to_string() }));
            }
            Err(e) => {
                entry.1 += 1;
                fails.push(json!({ "preset": x.name, "error": e.to_string() }));
            }
        }
    }
    let by_rho: BTreeMap<String, Value> =
        by_rho.into_iter().map(|(k, (n, bad))| (format!("rho={k}"), json!({ "samples": n, "nonzero": bad }))).collect();
    Ok(fails.finish(samples.len(), json!({ "by_picard_rank": by_rho })))
}

fn wall_oracle(_: &VerifyConfig) -> Result<(bool, Value)> {
    let pairs = [("P3", "O", "O(1)", vec![1]), ("P3", "pt", "O", vec![1]), ("PT_P2", "O(1,0)", "O(0,1)", vec![1, 1])];
    let grid = Grid::new((rat(0), rat(2)), (rat(-2), rat(2)), 50, 50);
    let mut fails = Failures::default();
    let mut checked = 0;
    let mut summary = Vec::new();
    for (name, e, f, h) in pairs {
        let x = preset(name)?;
        let r = &x.ring;
        let (ce, cf) = (parse_class(r, e)?, parse_class(r, f)?);
        let h = DivisorClass::from_ints(&h);
        let d = wall_scan(r, &ce, &cf, &h, &grid)?;
        let again = wall_scan(r, &ce, &cf, &h, &grid)?;
        let deterministic = serde_json::to_string(&d.to_json())? == serde_json::to_string(&again.to_json())?;
        if !deterministic {
            fails.push(json!({ "pair": [name, e, f], "check": "determinism" }));
        }
        for (i, alpha) in d.alphas.iter().enumerate() {
            for (j, beta) in d.betas.iter().enumerate() {
                checked += 1;
                let pol = Polarization::new(&x, h.clone(), QuadExt::from_rational(alpha.clone()), h.scale(beta))?;
                let ne = nu_slope(&v_vector(&ce, &pol)?);
                let nf = nu_slope(&v_vector(&cf, &pol)?);
                let direct = match ne.exact_cmp(&nf) {
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1,
                };
                let predicted = d.conic.sign_at(alpha, beta);
                if direct != d.cells[i][j] || direct != predicted {
                    fails.push(json!({
                        "pair": [name, e, f], "alpha": format_rational(alpha), "beta": format_rational(beta),
                        "direct": direct, "cell": d.cells[i][j], "conic": predicted,
                    }));
                }
            }
        }
        summary.push(
            json!({ "preset": name, "E": e, "F": f, "degenerate": d.degenerate(), "deterministic": deterministic }),
        );
    }
    Ok(fails.finish(checked, json!({ "pairs": summary, "grid": "50x50, alpha in (0,2), beta in (-2,2)" })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_filter() {
        let r = verify_all(&VerifyConfig { suite: Some("ptp2".into()), ..Default::default() }).unwrap();
        let ids: Vec<&str> = r.results.iter().map(|c| c.id).collect();
        assert_eq!(ids, vec!["2", "7", "8", "9a", "9b"]);
        assert!(verify_all(&VerifyConfig { suite: Some("nope".into()), ..Default::default() }).is_err());
    }

    #[test]
    fn ids_are_unique() {
        let mut ids = criterion_ids();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CRITERIA.len());
    }
}
