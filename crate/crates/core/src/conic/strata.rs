use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::Pt;

/// Why a point belongs to the stratum set, with the node data `ι` needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StratumKind {
    /// A fixed point; `node_signs` lists `w_C` for every irreducible rational
    /// nodal curve through the configuration with a crossing node there.
    BasePoint {
        #[serde(default)]
        node_signs: Vec<i8>,
    },
    /// Cusp of the unique cuspidal curve through the configuration and the point.
    Cusp { w: i8 },
    /// Intersection of the two components of a reducible curve.
    Reducible { w: i8 },
}

/// Weight of a stratum point in the invariant formula.
pub fn iota(kind: &StratumKind, wd: i64) -> i64 {
    match kind {
        StratumKind::BasePoint { node_signs } => {
            -wd + 2 * node_signs.iter().map(|&w| i64::from(w)).sum::<i64>()
        }
        StratumKind::Cusp { w } => -i64::from(*w),
        StratumKind::Reducible { w } => i64::from(*w),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumEntry {
    pub point: Pt,
    pub kind: StratumKind,
    pub iota: i64,
    #[serde(default)]
    pub provenance: String,
}

/// Stratum points with their weights and the Welschinger constant `W_d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrataSet {
    pub wd: i64,
    pub entries: Vec<StratumEntry>,
}

impl StrataSet {
    pub fn new(wd: i64) -> Self {
        StrataSet {
            wd,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, point: Pt, kind: StratumKind, provenance: impl Into<String>) {
        let iota = iota(&kind, self.wd);
        self.entries.push(StratumEntry {
            point,
            kind,
            iota,
            provenance: provenance.into(),
        });
    }

    /// The single stratum `{p}` with `ι = −1` of the line-counting problem.
    pub fn toy(p: Pt) -> Self {
        let mut s = StrataSet::new(1);
        s.push(
            p,
            StratumKind::BasePoint { node_signs: vec![] },
            "fixed point",
        );
        s
    }

    pub fn points(&self) -> Vec<Pt> {
        self.entries.iter().map(|e| e.point).collect()
    }

    /// Weights re-derivable from kinds, unit Welschinger signs, distinct points.
    pub fn validate(&self, eps: f64) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            let signs_ok = match &e.kind {
                StratumKind::BasePoint { node_signs } => node_signs.iter().all(|w| w.abs() == 1),
                StratumKind::Cusp { w } | StratumKind::Reducible { w } => w.abs() == 1,
            };
            if !signs_ok {
                return Err(Error::InvalidInput(format!(
                    "stratum {i}: Welschinger signs must be ±1"
                )));
            }
            if e.iota != iota(&e.kind, self.wd) {
                return Err(Error::InvalidInput(format!(
                    "stratum {i}: iota {} does not match its kind (expected {})",
                    e.iota,
                    iota(&e.kind, self.wd)
                )));
            }
            if !e.point.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "stratum {i}: point is not finite"
                )));
            }
            for (j, f) in self.entries.iter().enumerate().skip(i + 1) {
                if e.point.dist(f.point) <= eps {
                    return Err(Error::InvalidInput(format!("strata {i} and {j} coincide")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iota_table() {
        assert_eq!(iota(&StratumKind::BasePoint { node_signs: vec![] }, 1), -1);
        assert_eq!(
            iota(
                &StratumKind::BasePoint {
                    node_signs: vec![1]
                },
                8
            ),
            -6
        );
        assert_eq!(iota(&StratumKind::BasePoint { node_signs: vec![] }, 8), -8);
        assert_eq!(iota(&StratumKind::Cusp { w: 1 }, 8), -1);
        assert_eq!(iota(&StratumKind::Reducible { w: 1 }, 8), 1);
        assert_eq!(iota(&StratumKind::Reducible { w: -1 }, 8), -1);
    }

    #[test]
    fn validation_catches_wrong_iota() {
        let mut s = StrataSet::toy(Pt::ORIGIN);
        s.validate(1e-9).unwrap();
        s.entries[0].iota = 3;
        assert!(s.validate(1e-9).is_err());
    }

    #[test]
    fn json_kind_tags() {
        let k: StratumKind = serde_json::from_str(r#"{"type":"cusp","w":1}"#).unwrap();
        assert_eq!(k, StratumKind::Cusp { w: 1 });
        let k: StratumKind = serde_json::from_str(r#"{"type":"base_point"}"#).unwrap();
        assert_eq!(k, StratumKind::BasePoint { node_signs: vec![] });
    }
}
