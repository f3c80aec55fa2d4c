use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{line_tangencies, pencil_tangencies, TangencyEvent};
use crate::conic::ImplicitCurve;
use crate::conic::{ConfigProblem, Pencil, PointConfig, StrataSet, PARTITIONS};
use crate::curve::{distance_to_point, self_intersections, ClosedCurve};
use crate::error::Error;
use crate::kernel::{roots_periodic, Pt, Tol};

/// Events closer than this (in parameter) are reported as merged.
const MERGE_GAP: f64 = 1e-9;
/// Two events whose tangent members differ by less than this share a member.
const SAME_MEMBER: f64 = 1e-7;
/// Samples used for the immersion check.
const SPEED_SAMPLES: usize = 4096;

/// One way the input fails general position.
#[derive(Debug, Clone, PartialEq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    #[error("points {i} and {j} are not distinct")]
    PointsNotDistinct { i: usize, j: usize },
    #[error("points {i}, {j}, {k} are collinear")]
    Collinear { i: usize, j: usize, k: usize },
    #[error("curve is not immersed near t = {t}")]
    NotImmersed { t: f64 },
    #[error("non-transversal self-intersection at t = {t1}, {t2}")]
    NonTransversalSelfIntersection { t1: f64, t2: f64 },
    #[error("curve meets stratum point {index} at distance {distance:e}")]
    CurveMeetsStratum {
        index: usize,
        point: Pt,
        distance: f64,
    },
    #[error("curve is not transversal to the line {line} of a reducible member near t = {t}")]
    NotTransversalToReducible { line: String, t: f64 },
    #[error("tangency at t = {t} is not of first order")]
    HigherOrderTangency { t: f64 },
    #[error("curve is tangent to a reducible member at t = {t}")]
    ReducibleTangency { t: f64 },
    #[error("tangency events at t = {t1} and {t2} merge")]
    MergedEvents { t1: f64, t2: f64 },
    #[error("one member is tangent at both t = {t1} and {t2}")]
    DoubleTangency { t1: f64, t2: f64 },
    #[error("numerical failure: {message}")]
    Numeric { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Conditions that are assumed rather than checked.
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn into_result(self) -> crate::error::Result<AuditReport> {
        if self.ok {
            Ok(self)
        } else {
            Err(Error::Audit(self.violations))
        }
    }
}

fn tangency_violation(e: Error) -> Violation {
    match e {
        Error::HigherOrderTangency { t } | Error::DegenerateZero { t } => {
            Violation::HigherOrderTangency { t }
        }
        Error::ReducibleTangency { t } => Violation::ReducibleTangency { t },
        Error::NotImmersed { t, .. } => Violation::NotImmersed { t },
        e => Violation::Numeric {
            message: e.to_string(),
        },
    }
}

fn check_events(events: &[TangencyEvent], out: &mut Vec<Violation>) {
    let mut ts: Vec<f64> = events.iter().map(|e| e.t).collect();
    ts.sort_by(f64::total_cmp);
    for w in ts.windows(2) {
        if w[1] - w[0] <= MERGE_GAP {
            out.push(Violation::MergedEvents { t1: w[0], t2: w[1] });
        }
    }
    if let (Some(first), Some(last)) = (ts.first(), ts.last()) {
        if ts.len() > 1 && first + 1.0 - last <= MERGE_GAP {
            out.push(Violation::MergedEvents {
                t1: *last,
                t2: *first,
            });
        }
    }
    for (i, a) in events.iter().enumerate() {
        for b in &events[i + 1..] {
            if a.curve.coeff_distance(&b.curve) <= SAME_MEMBER {
                out.push(Violation::DoubleTangency { t1: a.t, t2: b.t });
            }
        }
    }
}

/// Transversality of the curve to the six lines of the reducible members.
fn check_reducible_lines<C: ClosedCurve + ?Sized>(
    pts: &[Pt; 4],
    c: &C,
    tol: &Tol,
    out: &mut Vec<Violation>,
) {
    for part in PARTITIONS {
        for pair in part {
            let label = format!("p{}p{}", pair[0] + 1, pair[1] + 1);
            let line = match ImplicitCurve::line_through(pts[pair[0]], pts[pair[1]]) {
                Ok(l) => l,
                Err(e) => {
                    out.push(Violation::Numeric {
                        message: e.to_string(),
                    });
                    continue;
                }
            };
            match roots_periodic(|t| line.eval(c.point(t)), tol) {
                Ok(_) => {}
                Err(Error::DegenerateZero { t }) => {
                    out.push(Violation::NotTransversalToReducible { line: label, t })
                }
                Err(e) => out.push(Violation::Numeric {
                    message: e.to_string(),
                }),
            }
        }
    }
}

/// Runs every check and, when the curve is usable, the tangency enumeration.
pub(crate) fn audit_and_enumerate<C: ClosedCurve + ?Sized>(
    cfg: &PointConfig,
    strata: &StrataSet,
    c: &C,
    tol: &Tol,
) -> (AuditReport, Option<Vec<TangencyEvent>>) {
    let mut v = Vec::new();
    let mut notes = Vec::new();
    for p in cfg.problems(tol) {
        v.push(match p {
            ConfigProblem::Coincident(i, j) => Violation::PointsNotDistinct { i, j },
            ConfigProblem::Collinear(i, j, k) => Violation::Collinear { i, j, k },
        });
    }

    let diam = c.diameter();
    let mut immersed = true;
    for i in 0..SPEED_SAMPLES {
        let t = i as f64 / SPEED_SAMPLES as f64;
        if c.jet(t).d1.norm() <= tol.eps_abs * diam {
            v.push(Violation::NotImmersed { t });
            immersed = false;
            break;
        }
    }
    if immersed {
        match self_intersections(c, tol) {
            Ok(_) => {}
            Err(Error::NonTransversalSelfIntersection { t1, t2 }) => {
                v.push(Violation::NonTransversalSelfIntersection { t1, t2 })
            }
            Err(e) => v.push(Violation::Numeric {
                message: e.to_string(),
            }),
        }
    }

    let mut near_stratum = false;
    for (index, e) in strata.entries.iter().enumerate() {
        let (distance, _) = distance_to_point(c, e.point);
        if distance <= tol.eps_abs * diam {
            near_stratum = true;
            v.push(Violation::CurveMeetsStratum {
                index,
                point: e.point,
                distance,
            });
        }
    }

    let mut events = None;
    if immersed && !near_stratum && v.is_empty() {
        let found = match cfg.d {
            1 => line_tangencies(cfg.points[0], c, tol),
            2 => cfg
                .quad()
                .and_then(|q| Pencil::new(q, tol))
                .and_then(|pencil| {
                    check_reducible_lines(&pencil.points, c, tol, &mut v);
                    pencil_tangencies(&pencil, c, tol)
                }),
            d => {
                notes.push(format!(
                    "d = {d}: tangencies are not enumerated; strata and their node data are taken as supplied"
                ));
                Ok(Vec::new())
            }
        };
        match found {
            Ok(ev) => {
                check_events(&ev, &mut v);
                if cfg.d <= 2 {
                    events = Some(ev);
                }
            }
            Err(e) => v.push(tangency_violation(e)),
        }
    }
    if cfg.d == 2 {
        notes.push("diagonal points at infinity are excluded from the strata".into());
    }
    let ok = v.is_empty();
    (
        AuditReport {
            ok,
            violations: v,
            notes,
        },
        if ok { events } else { None },
    )
}

/// Checks the configuration, curve and stratum set against the
/// general-position conditions, reporting every violation found.
pub fn audit_general_position<C: ClosedCurve + ?Sized>(
    cfg: &PointConfig,
    strata: &StrataSet,
    c: &C,
    tol: &Tol,
) -> AuditReport {
    audit_and_enumerate(cfg, strata, c, tol).0
}
