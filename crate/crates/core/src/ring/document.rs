//! JSON form of a ring. Every rational is a `"p/q"` string.

use serde::{Deserialize, Serialize};

use super::{CohRing, CurveClass, DivisorClass, PresetThreefold, Todd};
use crate::error::{Error, Result};
use crate::rational::{format_vec, parse_rational, parse_vec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub divisor_basis: Vec<String>,
    pub curve_basis: Vec<String>,
    pub div_div: Vec<Vec<Vec<String>>>,
    pub div_curve: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nef_cone: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub todd: Option<ToddDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToddDocument {
    pub td1: Vec<String>,
    pub td2: Vec<String>,
    pub td3: String,
}

fn field<T>(what: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::InvalidRing(format!("{what}: {e}")))
}

impl RingDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidRing(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_threefold(x: &PresetThreefold) -> Self {
        let r = &x.ring;
        RingDocument {
            name: Some(x.name.clone()),
            divisor_basis: r.divisor_basis().to_vec(),
            curve_basis: r.curve_basis().to_vec(),
            div_div: r.div_div().iter().map(|row| row.iter().map(CurveClass::to_strings).collect()).collect(),
            div_curve: r.div_curve().iter().map(|row| format_vec(row)).collect(),
            nef_cone: (!x.nef_cone.is_empty()).then(|| x.nef_cone.iter().map(DivisorClass::to_strings).collect()),
            canonical: x.canonical.as_ref().map(DivisorClass::to_strings),
            todd: x.todd.as_ref().map(|t| ToddDocument {
                td1: t.td1.to_strings(),
                td2: t.td2.to_strings(),
                td3: crate::rational::format_rational(&t.td3),
            }),
            chi: x.chi.as_ref().map(crate::rational::format_rational),
        }
    }

    /// Converts to a threefold. Shape errors are fatal; algebraic
    /// inconsistencies are left for [`PresetThreefold::validate`].
    pub fn into_threefold(self) -> Result<PresetThreefold> {
        let div_div = field(
            "div_div",
            self.div_div
                .iter()
                .map(|row| row.iter().map(|c| parse_vec(c).map(CurveClass::new)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>(),
        )?;
        let div_curve =
            field("div_curve", self.div_curve.iter().map(|row| parse_vec(row)).collect::<Result<Vec<_>>>())?;
        let ring = CohRing::new(self.divisor_basis, self.curve_basis, div_div, div_curve)?;
        let divisor = |what: &str, v: &[String]| -> Result<DivisorClass> {
            let d = DivisorClass::new(field(what, parse_vec(v))?);
            field(what, ring.check_divisor(&d))?;
            Ok(d)
        };
        let nef_cone = match &self.nef_cone {
            Some(gens) => gens.iter().map(|g| divisor("nef_cone", g)).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let canonical = self.canonical.as_deref().map(|k| divisor("canonical", k)).transpose()?;
        let todd = match &self.todd {
            Some(t) => {
                let td2 = CurveClass::new(field("todd.td2", parse_vec(&t.td2))?);
                field("todd.td2", ring.check_curve(&td2))?;
                Some(Todd { td1: divisor("todd.td1", &t.td1)?, td2, td3: field("todd.td3", parse_rational(&t.td3))? })
            }
            None => None,
        };
        let chi: Option<Rational> = self.chi.as_deref().map(|c| field("chi", parse_rational(c))).transpose()?;
        Ok(PresetThreefold {
            name: self.name.unwrap_or_else(|| "custom".to_string()),
            ring,
            nef_cone,
            canonical,
            todd,
            chi,
        })
    }
}
