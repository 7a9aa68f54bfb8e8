//! JSON scenario files: a base surface given as lattice data, the marked
//! discriminant components on it, and the exceptional classes whose
//! contraction is to be tested.
//!
//! ```json
//! {
//!   "surface": {
//!     "basis": ["h", "Gamma"],
//!     "gram": [[1, 0], [0, -1]],
//!     "canonical": {"h": -3, "Gamma": 1},
//!     "curves": {"f1": {"h": 1, "Gamma": -1}, "f2": {"h": 1, "Gamma": -1}},
//!     "exceptional": ["Gamma"]
//!   },
//!   "components": [{"class": "f1", "type": "I0", "multiplicity": 3}],
//!   "blowdowns": ["Gamma"]
//! }
//! ```
//!
//! Coefficients may be integers or strings such as `"2/3"`. Point blow-ups
//! can also be replayed from the listed lattice with `"blowups"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::collision::{equidimensional_verdict, Verdict};
use crate::kodaira::{FiberType, KodairaError};
use crate::logsurface::{
    delta_of_contraction, is_log_extremal, lambda_of, mmp_drive, MarkedComponent, MmpOutcome,
    QDivisor, Surface, SurfaceError,
};
use crate::rational::Rational;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("malformed scenario: {0}")]
    Malformed(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub canonical: QDivisor,
    /// Named curves in basis coordinates.
    #[serde(default)]
    pub curves: BTreeMap<String, QDivisor>,
    /// Basis classes that are `(-1)`-curves of earlier blow-ups.
    #[serde(default)]
    pub exceptional: Vec<String>,
    /// Point blow-ups applied after the lattice is built, in order.
    #[serde(default)]
    pub blowups: Vec<BlowUpSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowUpSpec {
    pub exceptional: String,
    #[serde(default)]
    pub multiplicities: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub class: String,
    #[serde(rename = "type")]
    pub fiber_type: FiberType,
    /// Alternative to the `mK:` prefix of the type.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u32>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub surface: SurfaceSpec,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub blowdowns: Vec<String>,
    /// Whether the defect divisors on the threefold are known effective.
    #[serde(default = "default_true")]
    pub pullback_defect_effective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowdownReport {
    pub class: String,
    #[serde(with = "crate::rational::serde_str")]
    pub log_canonical_degree: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
    pub log_extremal: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub lambda: QDivisor,
    pub blowdowns: Vec<BlowdownReport>,
    pub mmp: MmpOutcome,
}

impl ComponentSpec {
    fn marked(&self) -> Result<MarkedComponent, KodairaError> {
        let t = match self.multiplicity {
            None => self.fiber_type,
            Some(m) if self.fiber_type.multiplicity() == 1 => self.fiber_type.with_multiplicity(m)?,
            Some(m) if m == self.fiber_type.multiplicity() => self.fiber_type,
            Some(m) => {
                return Err(KodairaError::InvalidMultiplicity {
                    kind: self.fiber_type.to_string(),
                    multiplicity: m,
                })
            }
        };
        Ok(MarkedComponent::new(&self.class, t))
    }
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<Surface, SurfaceError> {
        let mut s = Surface::new(self.basis.clone(), self.gram.clone(), self.canonical.clone())?;
        for name in &self.exceptional {
            s = s.with_exceptional(name)?;
        }
        for (name, class) in &self.curves {
            s = s.with_curve(name, class.clone())?;
        }
        for b in &self.blowups {
            s = s.blow_up(&b.exceptional, &b.multiplicities)?;
        }
        Ok(s)
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Malformed(e.to_string()))
    }

    pub fn components(&self) -> Result<Vec<MarkedComponent>, KodairaError> {
        self.components.iter().map(ComponentSpec::marked).collect()
    }

    /// Builds the surface, assembles `Lambda`, tests each requested
    /// blow-down and runs the contraction loop.
    pub fn evaluate(&self) -> Result<ScenarioReport, ScenarioError> {
        let surface = self.surface.build()?;
        let lambda = lambda_of(&self.components()?);
        // every component must name a class the surface knows
        surface.expand(&lambda)?;
        let mut blowdowns = Vec::new();
        for class in &self.blowdowns {
            let delta = delta_of_contraction(&surface, &lambda, class)?;
            blowdowns.push(BlowdownReport {
                class: class.clone(),
                log_canonical_degree: -delta.clone(),
                log_extremal: is_log_extremal(&surface, &lambda, class)?,
                verdict: equidimensional_verdict(&delta, self.pullback_defect_effective),
                delta,
            });
        }
        let mmp = mmp_drive(&surface, &lambda)?;
        Ok(ScenarioReport {
            lambda,
            blowdowns,
            mmp,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logsurface::MmpStatus;
    use crate::rational::{int, ratio};

    const F1: &str = r#"{
        "surface": {
            "basis": ["h", "Gamma"],
            "gram": [[1, 0], [0, -1]],
            "canonical": {"h": -3, "Gamma": 1},
            "curves": {"f1": {"h": 1, "Gamma": -1}, "f2": {"h": 1, "Gamma": -1}},
            "exceptional": ["Gamma"]
        },
        "components": [
            {"class": "f1", "type": "m3:I0"},
            {"class": "f2", "type": "I0", "multiplicity": 3}
        ],
        "blowdowns": ["Gamma"]
    }"#;

    #[test]
    fn hirzebruch_scenario() {
        let r = Scenario::from_json(F1).unwrap().evaluate().unwrap();
        assert_eq!(
            r.lambda,
            QDivisor::from_terms([("f1", ratio(2, 3)), ("f2", ratio(2, 3))])
        );
        let b = &r.blowdowns[0];
        assert_eq!(b.delta, ratio(-1, 3));
        assert_eq!(b.log_canonical_degree, ratio(1, 3));
        assert!(!b.log_extremal);
        assert_eq!(b.verdict, Verdict::Impossible);
        assert!(r.mmp.steps.is_empty());
        assert_eq!(r.mmp.blocked[0].class, "Gamma");
        assert!(matches!(r.mmp.status, MmpStatus::NotMinimal { .. }));
    }

    #[test]
    fn replayed_blow_up_matches_lattice() {
        let text = r#"{
            "surface": {
                "basis": ["h"], "gram": [[1]], "canonical": {"h": -3},
                "curves": {"f1": {"h": 1}, "f2": {"h": 1}},
                "blowups": [{"exceptional": "Gamma", "multiplicities": {"f1": 1, "f2": 1}}]
            },
            "components": [{"class": "f1", "type": "m3:I0"}, {"class": "f2", "type": "m3:I0"}],
            "blowdowns": ["Gamma"],
            "pullback_defect_effective": false
        }"#;
        let r = Scenario::from_json(text).unwrap().evaluate().unwrap();
        assert_eq!(r.blowdowns[0].delta, ratio(-1, 3));
        assert_eq!(r.blowdowns[0].verdict, Verdict::Impossible);
    }

    #[test]
    fn bare_blow_up_contracts() {
        let text = r#"{
            "surface": {"basis": ["h"], "gram": [[1]], "canonical": {"h": -3},
                        "blowups": [{"exceptional": "E"}]},
            "components": [],
            "blowdowns": ["E"]
        }"#;
        let r = Scenario::from_json(text).unwrap().evaluate().unwrap();
        assert_eq!(r.blowdowns[0].delta, int(1));
        assert_eq!(r.blowdowns[0].verdict, Verdict::ExistsWithOneDimFiber);
        assert_eq!(r.mmp.steps.len(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Scenario::from_json(r#"{"surface": {}, "components": []}"#),
            Err(ScenarioError::Malformed(_))
        ));
        assert!(matches!(
            Scenario::from_json(&F1.replace("\"blowdowns\"", "\"blowdown\"")),
            Err(ScenarioError::Malformed(_))
        ));
        let bad_class = F1.replace(r#""class": "f1""#, r#""class": "g""#);
        assert!(matches!(
            Scenario::from_json(&bad_class).unwrap().evaluate(),
            Err(ScenarioError::Surface(SurfaceError::UnknownClass(_)))
        ));
        let bad_mult = F1.replace(r#""type": "I0", "multiplicity": 3"#, r#""type": "II", "multiplicity": 3"#);
        assert!(matches!(
            Scenario::from_json(&bad_mult).unwrap().evaluate(),
            Err(ScenarioError::Kodaira(KodairaError::InvalidMultiplicity { .. }))
        ));
        let not_exc = F1.replace(r#""blowdowns": ["Gamma"]"#, r#""blowdowns": ["h"]"#);
        assert!(matches!(
            Scenario::from_json(&not_exc).unwrap().evaluate(),
            Err(ScenarioError::Surface(SurfaceError::NotExceptional(_)))
        ));
    }

    #[test]
    fn report_round_trips() {
        let r = Scenario::from_json(F1).unwrap().evaluate().unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: ScenarioReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
