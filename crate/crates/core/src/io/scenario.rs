use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conic::{welschinger_wd, PointConfig, StrataSet, StratumKind};
use crate::curve::{CurveSpec, ImmersedCurve};
use crate::error::{Error, Result};
use crate::fti::{preset_spec, Functional, FunctionalKind, SingularCurveSpec};
use crate::invariant::HomotopyPath;
use crate::kernel::{Pt, Tol};

pub const SCHEMA: u32 = 1;

/// One supplied stratum point; `ι` is derived from the kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumInput {
    pub point: Pt,
    pub kind: StratumKind,
    #[serde(default)]
    pub provenance: String,
}

/// Stratum set override, required for `d = 3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrataInput {
    /// Defaults to the tabulated `W_d`.
    #[serde(default)]
    pub wd: Option<i64>,
    pub entries: Vec<StratumInput>,
}

impl StrataInput {
    pub fn build(&self, d: u32) -> Result<StrataSet> {
        let wd = match self.wd {
            Some(w) => w,
            None => welschinger_wd(d)?,
        };
        let mut s = StrataSet::new(wd);
        for e in &self.entries {
            s.push(e.point, e.kind.clone(), e.provenance.clone());
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteInput {
    pub functional: FunctionalKind,
    pub d: u32,
    pub k: u32,
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
}

/// Finite-type-invariant task: either one spec (inline or preset) with a
/// functional, or a random degree-bound suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtiInput {
    #[serde(default)]
    pub spec: Option<SingularCurveSpec>,
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub functional: Option<Functional>,
    #[serde(default)]
    pub suite: Option<SuiteInput>,
}

impl FtiInput {
    pub fn singular_spec(&self) -> Result<SingularCurveSpec> {
        match (&self.spec, &self.preset) {
            (Some(s), None) => Ok(s.clone()),
            (None, Some(name)) => preset_spec(name),
            (Some(_), Some(_)) => Err(Error::InvalidInput(
                "give either fti.spec or fti.preset, not both".into(),
            )),
            (None, None) => Err(Error::InvalidInput(
                "fti needs a spec, a preset or a suite".into(),
            )),
        }
    }
}

/// Everything one CLI invocation reads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub config: Option<PointConfig>,
    #[serde(default)]
    pub curve: Option<CurveSpec>,
    #[serde(default)]
    pub path: Option<HomotopyPath>,
    #[serde(default)]
    pub strata: Option<StrataInput>,
    #[serde(default)]
    pub tol: Option<Tol>,
    #[serde(default)]
    pub fti: Option<FtiInput>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.check()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn check(&self) -> Result<()> {
        if self.schema != SCHEMA {
            return Err(Error::InvalidInput(format!(
                "unsupported scenario schema {} (expected {SCHEMA})",
                self.schema
            )));
        }
        if let Some(t) = &self.tol {
            t.validate()?;
        }
        if let Some(p) = &self.path {
            p.validate()?;
        }
        if let Some(f) = &self.fti {
            if f.suite.is_none() {
                f.singular_spec()?;
            }
        }
        Ok(())
    }

    pub fn tol(&self) -> Tol {
        self.tol.unwrap_or_default()
    }

    pub fn config(&self) -> Result<&PointConfig> {
        self.config
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("scenario has no config".into()))
    }

    pub fn curve(&self) -> Result<ImmersedCurve> {
        self.curve
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("scenario has no curve".into()))?
            .build()
    }

    pub fn path(&self) -> Result<&HomotopyPath> {
        self.path
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("scenario has no path".into()))
    }

    /// Stratum override, if any, built for the scenario's degree.
    pub fn strata_override(&self) -> Result<Option<StrataSet>> {
        match &self.strata {
            None => Ok(None),
            Some(s) => Ok(Some(s.build(self.config()?.d)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario() {
        let s = Scenario::from_json(
            r#"{"schema":1,"config":{"d":1,"points":[[2,0]]},
                "curve":{"kind":"circle","center":[0,0],"radius":1,"turns":1}}"#,
        )
        .unwrap();
        assert_eq!(s.config().unwrap().points[0], Pt::new(2.0, 0.0));
        assert!(s.curve().is_ok());
        assert!(s.path().is_err());
    }

    #[test]
    fn wrong_schema_rejected() {
        assert!(Scenario::from_json(r#"{"schema":2}"#).is_err());
    }

    #[test]
    fn unknown_fti_preset_rejected() {
        assert!(Scenario::from_json(r#"{"schema":1,"fti":{"preset":"nope"}}"#).is_err());
    }

    #[test]
    fn strata_defaults_to_table() {
        let s = Scenario::from_json(
            r#"{"schema":1,"config":{"d":3,"points":[[0,0],[1,0],[2,1],[0,3],[4,4],[5,0],[3,-2]]},
                "strata":{"entries":[{"point":[0,0],"kind":{"type":"base_point","node_signs":[1]}}]}}"#,
        )
        .unwrap();
        let st = s.strata_override().unwrap().unwrap();
        assert_eq!(st.wd, 8);
        assert_eq!(st.entries[0].iota, -6);
    }
}
