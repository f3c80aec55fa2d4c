use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{default_strata, evaluate_formula};
use crate::conic::{PointConfig, StrataSet};
use crate::curve::{winding_index, CurveSpec, ImmersedCurve};
use crate::error::{Error, Result};
use crate::kernel::{Pt, Tol};
use crate::tangency::{audit_and_enumerate, signed_count, Violation};

/// Maximum number of interval halvings spent looking for an unexplained jump.
const MAX_REFINE_DEPTH: u32 = 12;
/// Path-parameter accuracy of crossing localization.
const CROSSING_TOL: f64 = 1e-6;

/// A curve translated along a polyline of centers.
///
/// At path parameter `s ∈ [0, 1]` the curve is `curve` shifted by
/// `P(s) − P(0)`, where `P` runs along `centers` at constant speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomotopyPath {
    pub curve: CurveSpec,
    pub centers: Vec<Pt>,
    pub samples: usize,
}

impl HomotopyPath {
    pub fn validate(&self) -> Result<()> {
        if self.centers.len() < 2 {
            return Err(Error::InvalidInput(
                "path needs at least two centers".into(),
            ));
        }
        if self.samples < 2 {
            return Err(Error::InvalidInput(
                "path needs at least two samples".into(),
            ));
        }
        if self.length() <= 0.0 {
            return Err(Error::InvalidInput("path has zero length".into()));
        }
        Ok(())
    }

    pub fn length(&self) -> f64 {
        self.centers.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// Point of the center polyline at arc-length fraction `s`.
    pub fn center(&self, s: f64) -> Pt {
        let total = self.length();
        let mut left = s.clamp(0.0, 1.0) * total;
        for w in self.centers.windows(2) {
            let l = w[0].dist(w[1]);
            if left <= l && l > 0.0 {
                return w[0].lerp(w[1], left / l);
            }
            left -= l;
        }
        *self.centers.last().expect("validated")
    }

    pub fn curve_at(&self, base: &ImmersedCurve, s: f64) -> ImmersedCurve {
        base.translated(self.center(s) - self.centers[0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSample {
    pub s: f64,
    pub center: Pt,
    pub ok: bool,
    #[serde(rename = "N_enum")]
    pub n_enum: Option<i64>,
    #[serde(rename = "N_formula")]
    pub n_formula: Option<i64>,
    pub whitney: Option<i64>,
    /// Winding number around each stratum point, in stratum order.
    pub windings: Vec<i64>,
    #[serde(default)]
    pub violations: Vec<Violation>,
}

/// A stratum point crossed by the moving curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    /// Localized crossing parameter.
    pub s: f64,
    pub stratum: usize,
    pub point: Pt,
    pub iota: i64,
    pub delta_ind: i64,
    /// Contribution `2 ι_p Δind_p` predicted for this crossing.
    pub predicted: i64,
}

/// A change of the count between two consecutive passing samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub s_lo: f64,
    pub s_hi: f64,
    pub delta_n: i64,
    pub predicted: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: u32,
    pub strata: StrataSet,
    pub samples: Vec<ScanSample>,
    pub crossings: Vec<Crossing>,
    pub jumps: Vec<Jump>,
    /// Every jump equals its predicted value and the count is constant
    /// between crossings.
    pub consistent: bool,
}

fn sample(
    path: &HomotopyPath,
    base: &ImmersedCurve,
    cfg: &PointConfig,
    strata: &StrataSet,
    s: f64,
    tol: &Tol,
) -> ScanSample {
    let c = path.curve_at(base, s);
    let center = path.center(s);
    let (audit, events) = audit_and_enumerate(cfg, strata, &c, tol);
    let formula = if audit.ok {
        evaluate_formula(strata, &c, tol).ok()
    } else {
        None
    };
    let ok = audit.ok && formula.is_some();
    ScanSample {
        s,
        center,
        ok,
        n_enum: events.as_deref().map(signed_count),
        n_formula: formula.as_ref().map(|f| f.value),
        whitney: formula.as_ref().map(|f| f.whitney),
        windings: formula
            .map(|f| f.terms.iter().map(|t| t.ind).collect())
            .unwrap_or_default(),
        violations: audit.violations,
    }
}

fn count(s: &ScanSample) -> Option<i64> {
    s.n_enum.or(s.n_formula)
}

/// Bisects on `s` for the point where the winding number around `p` changes.
fn localize(
    path: &HomotopyPath,
    base: &ImmersedCurve,
    p: Pt,
    mut lo: f64,
    mut hi: f64,
    w_lo: i64,
    tol: &Tol,
) -> f64 {
    while hi - lo > CROSSING_TOL {
        let mid = 0.5 * (lo + hi);
        match winding_index(&path.curve_at(base, mid), p, tol) {
            Ok(w) if w == w_lo => lo = mid,
            Ok(_) => hi = mid,
            // On (or numerically on) the point: this is the crossing.
            Err(_) => return mid,
        }
    }
    0.5 * (lo + hi)
}

/// Evaluates the count along the path, localizes every crossing of a
/// stratum point and checks each jump against `2 ι_p Δind_p`.
pub fn homotopy_scan(
    path: &HomotopyPath,
    cfg: &PointConfig,
    strata: Option<&StrataSet>,
    tol: &Tol,
) -> Result<ScanReport> {
    path.validate()?;
    cfg.validate(tol)?;
    let strata = match strata {
        Some(s) => s.clone(),
        None => default_strata(cfg, tol)?.0,
    };
    let base = path.curve.build()?;
    let n = path.samples;
    let mut samples: Vec<ScanSample> = (0..n)
        .into_par_iter()
        .map(|i| sample(path, &base, cfg, &strata, i as f64 / (n - 1) as f64, tol))
        .collect();

    for end in [samples.first(), samples.last()].into_iter().flatten() {
        if !end.ok {
            return Err(Error::Audit(end.violations.clone()));
        }
    }

    // Refine intervals where the count changes without any winding change.
    let mut extra = Vec::new();
    let passing: Vec<ScanSample> = samples.iter().filter(|x| x.ok).cloned().collect();
    for w in passing.windows(2) {
        refine(path, &base, cfg, &strata, &w[0], &w[1], tol, 0, &mut extra)?;
    }
    samples.extend(extra);
    samples.sort_by(|a, b| a.s.total_cmp(&b.s));

    let mut crossings = Vec::new();
    let mut jumps = Vec::new();
    let mut consistent = true;
    let passing: Vec<&ScanSample> = samples.iter().filter(|x| x.ok).collect();
    for w in passing.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut predicted = 2 * strata.wd * (b.whitney.unwrap_or(0) - a.whitney.unwrap_or(0));
        for (i, e) in strata.entries.iter().enumerate() {
            let d = b.windings[i] - a.windings[i];
            if d != 0 {
                let s = localize(path, &base, e.point, a.s, b.s, a.windings[i], tol);
                crossings.push(Crossing {
                    s,
                    stratum: i,
                    point: e.point,
                    iota: e.iota,
                    delta_ind: d,
                    predicted: 2 * e.iota * d,
                });
                predicted += 2 * e.iota * d;
            }
        }
        let (na, nb) = (count(a), count(b));
        if let (Some(na), Some(nb)) = (na, nb) {
            if na != nb || predicted != 0 {
                consistent &= nb - na == predicted;
                jumps.push(Jump {
                    s_lo: a.s,
                    s_hi: b.s,
                    delta_n: nb - na,
                    predicted,
                });
            }
        }
    }
    crossings.sort_by(|a, b| a.s.total_cmp(&b.s));
    Ok(ScanReport {
        schema: 1,
        strata,
        samples,
        crossings,
        jumps,
        consistent,
    })
}

#[allow(clippy::too_many_arguments)]
fn refine(
    path: &HomotopyPath,
    base: &ImmersedCurve,
    cfg: &PointConfig,
    strata: &StrataSet,
    a: &ScanSample,
    b: &ScanSample,
    tol: &Tol,
    depth: u32,
    out: &mut Vec<ScanSample>,
) -> Result<()> {
    let windings_same = a.windings == b.windings && a.whitney == b.whitney;
    if count(a) == count(b) || !windings_same {
        return Ok(());
    }
    if depth >= MAX_REFINE_DEPTH {
        return Err(Error::UnresolvedCrossing {
            s_lo: a.s,
            s_hi: b.s,
        });
    }
    let m = sample(path, base, cfg, strata, 0.5 * (a.s + b.s), tol);
    if !m.ok {
        out.push(m);
        return Err(Error::UnresolvedCrossing {
            s_lo: a.s,
            s_hi: b.s,
        });
    }
    refine(path, base, cfg, strata, a, &m, tol, depth + 1, out)?;
    refine(path, base, cfg, strata, &m, b, tol, depth + 1, out)?;
    out.push(m);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PointConfig {
        PointConfig::new(
            2,
            vec![
                Pt::new(0.0, 0.0),
                Pt::new(1.0, 0.0),
                Pt::new(1.0, 1.0),
                Pt::new(0.0, 1.0),
            ],
        )
    }

    fn circle_path(centers: Vec<Pt>, samples: usize) -> HomotopyPath {
        HomotopyPath {
            curve: CurveSpec::Circle {
                center: centers[0],
                radius: 0.1,
                turns: 1,
                phase: 0.0,
            },
            centers,
            samples,
        }
    }

    #[test]
    fn center_interpolation() {
        let p = circle_path(vec![Pt::ORIGIN, Pt::new(1.0, 0.0), Pt::new(1.0, 1.0)], 2);
        assert!(p.center(0.25).dist(Pt::new(0.5, 0.0)) < 1e-15);
        assert!(p.center(0.75).dist(Pt::new(1.0, 0.5)) < 1e-15);
        assert!(p.center(1.0).dist(Pt::new(1.0, 1.0)) < 1e-15);
    }

    #[test]
    fn far_region_constant() {
        let p = circle_path(vec![Pt::new(10.0, 10.0), Pt::new(12.0, 9.0)], 20);
        let r = homotopy_scan(&p, &square(), None, &Tol::default()).unwrap();
        assert!(r.samples.iter().all(|s| s.ok && s.n_enum == Some(2)));
        assert!(r.crossings.is_empty());
        assert!(r.consistent);
    }

    #[test]
    fn engulfing_diagonal_point() {
        let p = circle_path(vec![Pt::new(0.3, 0.15), Pt::new(0.54, 0.47)], 40);
        let r = homotopy_scan(&p, &square(), None, &Tol::default()).unwrap();
        assert!(r.consistent);
        assert_eq!(r.samples.first().unwrap().n_enum, Some(2));
        assert_eq!(r.samples.last().unwrap().n_enum, Some(4));
        assert_eq!(r.crossings.len(), 1);
        let x = &r.crossings[0];
        assert_eq!((x.iota, x.delta_ind, x.predicted), (1, 1, 2));
        // The circle reaches (0.5, 0.5) when its center is 0.1 away.
        assert!((p.center(x.s).dist(Pt::new(0.5, 0.5)) - 0.1).abs() < 1e-5);
    }
}
