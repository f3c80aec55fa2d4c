//! The index-formula side of the count: stratum weights, formula
//! evaluation, the two-sided check, and homotopy scans.

mod homotopy;

use serde::{Deserialize, Serialize};

use crate::conic::{diagonal_points, welschinger_wd, PointConfig, StrataSet, StratumKind};
use crate::curve::{whitney_index, winding_index, ClosedCurve};
use crate::error::{Error, Result};
use crate::kernel::{Pt, Tol};
use crate::tangency::{audit_and_enumerate, signed_count, TangencyEvent};

pub use crate::conic::iota;
pub use homotopy::{homotopy_scan, Crossing, HomotopyPath, ScanReport, ScanSample};

/// Strata of the conic problem: the four base points (`ι = −1`) and the
/// affine diagonal points (`ι = +1`), with the labels of partitions whose
/// diagonal point lies at infinity.
pub fn strata_for_d2(cfg: &PointConfig, tol: &Tol) -> Result<(StrataSet, Vec<String>)> {
    let quad = cfg.quad()?;
    let mut s = StrataSet::new(welschinger_wd(2)?);
    for (i, p) in quad.iter().enumerate() {
        s.push(
            *p,
            StratumKind::BasePoint { node_signs: vec![] },
            format!("base point {}", i + 1),
        );
    }
    let mut at_infinity = Vec::new();
    for dp in diagonal_points(&quad, tol)? {
        match dp.point {
            Some(p) => s.push(
                p,
                StratumKind::Reducible { w: 1 },
                format!("diagonal point {}", dp.label),
            ),
            None => at_infinity.push(dp.label),
        }
    }
    Ok((s, at_infinity))
}

/// Default stratum set for `d ≤ 2`; higher degrees need supplied strata.
pub fn default_strata(cfg: &PointConfig, tol: &Tol) -> Result<(StrataSet, Vec<String>)> {
    match cfg.d {
        1 => match cfg.points.as_slice() {
            [p] => Ok((StrataSet::toy(*p), Vec::new())),
            _ => Err(Error::InvalidInput("d = 1 needs exactly one point".into())),
        },
        2 => strata_for_d2(cfg, tol),
        d => Err(Error::Unsupported { d }),
    }
}

/// One term `ι_p · ind_p` of the formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumTerm {
    pub point: Pt,
    pub iota: i64,
    pub ind: i64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub whitney: i64,
    pub terms: Vec<StratumTerm>,
    pub value: i64,
}

/// `2 (W_d · ind(Γ) + Σ ι_p · ind_p(Γ))` with every index computed on `c`.
pub fn evaluate_formula<C: ClosedCurve + ?Sized>(
    strata: &StrataSet,
    c: &C,
    tol: &Tol,
) -> Result<FormulaValue> {
    let whitney = whitney_index(c, tol)?;
    let mut terms = Vec::with_capacity(strata.entries.len());
    let mut acc = strata.wd * whitney;
    for e in &strata.entries {
        let ind = winding_index(c, e.point, tol)?;
        acc += e.iota * ind;
        terms.push(StratumTerm {
            point: e.point,
            iota: e.iota,
            ind,
            provenance: e.provenance.clone(),
        });
    }
    Ok(FormulaValue {
        whitney,
        terms,
        value: 2 * acc,
    })
}

pub fn formula_n<C: ClosedCurve + ?Sized>(strata: &StrataSet, c: &C, tol: &Tol) -> Result<i64> {
    Ok(evaluate_formula(strata, c, tol)?.value)
}

/// `2 ind(Γ) − 2 ind_p(Γ)`.
pub fn toy_n1<C: ClosedCurve + ?Sized>(p: Pt, c: &C, tol: &Tol) -> Result<i64> {
    Ok(2 * whitney_index(c, tol)? - 2 * winding_index(c, p, tol)?)
}

/// Both sides of the count for one configuration and curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub d: u32,
    pub wd: i64,
    pub whitney: i64,
    pub strata: Vec<StratumTerm>,
    #[serde(rename = "N_formula")]
    pub n_formula: i64,
    #[serde(rename = "N_enum")]
    pub n_enum: Option<i64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    /// Partitions whose diagonal point lies at infinity.
    #[serde(default)]
    pub excluded: Vec<String>,
    #[serde(default)]
    pub events: Vec<TangencyEvent>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Audits the input, enumerates tangencies (for `d ≤ 2`) and evaluates the
/// formula. `strata` overrides the default stratum set.
pub fn evaluate<C: ClosedCurve + ?Sized>(
    cfg: &PointConfig,
    strata: Option<&StrataSet>,
    c: &C,
    tol: &Tol,
) -> Result<InvariantReport> {
    cfg.validate(tol)?;
    let (strata, excluded) = match strata {
        Some(s) => (s.clone(), Vec::new()),
        None => default_strata(cfg, tol)?,
    };
    strata.validate(tol.eps_abs * cfg.diameter())?;
    let (audit, events) = audit_and_enumerate(cfg, &strata, c, tol);
    if !audit.ok {
        return Err(Error::Audit(audit.violations));
    }
    let f = evaluate_formula(&strata, c, tol)?;
    let n_enum = events.as_deref().map(signed_count);
    Ok(InvariantReport {
        d: cfg.d,
        wd: strata.wd,
        whitney: f.whitney,
        strata: f.terms,
        n_formula: f.value,
        n_enum,
        matches: n_enum.map(|n| n == f.value),
        excluded,
        events: events.unwrap_or_default(),
        notes: audit.notes,
    })
}

/// Enumerated signed count `Σ ε` for `d ≤ 2`, after the general-position
/// audit with the default strata.
pub fn enumerated_count<C: ClosedCurve + ?Sized>(
    cfg: &PointConfig,
    c: &C,
    tol: &Tol,
) -> Result<i64> {
    cfg.validate(tol)?;
    let (strata, _) = default_strata(cfg, tol)?;
    match audit_and_enumerate(cfg, &strata, c, tol) {
        (audit, _) if !audit.ok => Err(Error::Audit(audit.violations)),
        (_, Some(events)) => Ok(signed_count(&events)),
        (_, None) => Err(Error::Unsupported { d: cfg.d }),
    }
}

/// Two-sided check for `d ∈ {1, 2}` with the default strata.
pub fn verify_theorem<C: ClosedCurve + ?Sized>(
    cfg: &PointConfig,
    c: &C,
    tol: &Tol,
) -> Result<InvariantReport> {
    if !(1..=2).contains(&cfg.d) {
        return Err(Error::Unsupported { d: cfg.d });
    }
    evaluate(cfg, None, c, tol)
}
