//! Enumeration of the lines or conics through a configuration that are
//! tangent to a curve, with their signs, plus the general-position audit.

mod audit;

use serde::{Deserialize, Serialize};

use crate::conic::{ImplicitCurve, Pencil, PointConfig};
use crate::curve::{distance_to_point, ClosedCurve};
use crate::error::{Error, Result};
use crate::kernel::{roots_periodic, Pt, Tol};

pub(crate) use audit::audit_and_enumerate;
pub use audit::{audit_general_position, AuditReport, Violation};

/// Side-test offset as a fraction of the curve diameter, before shrinking.
const SIDE_STEP: f64 = 1e-2;
const SIDE_SHRINKS: usize = 6;
/// Relative discriminant below which a tangent conic counts as reducible.
const REDUCIBLE_DISC: f64 = 1e-9;

/// One tangency between the curve and a member of the family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangencyEvent {
    pub t: f64,
    pub point: Pt,
    pub curve: ImplicitCurve,
    /// Welschinger sign of the tangent curve (always `+1` for `d ≤ 2`).
    pub w: i8,
    /// Orientation sign of the curve relative to the tangent member.
    pub tau: i8,
    /// `w · τ`.
    pub eps: i8,
    /// Derivative of the tangency function at the root, for diagnostics.
    pub slope: f64,
    /// Distance of the side samples from the tangent member.
    pub side_margin: f64,
}

/// Result of the local side test at one tangency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideTest {
    pub tau: i8,
    pub margin: f64,
}

/// Orientation sign of `c` at a tangency with `q` at `t0`.
///
/// The normal to `q` is chosen to point into the side where `c` lies near
/// the tangency; `τ = +1` when `(γ', n)` is a positive frame. The side is read
/// off from `q` evaluated at points of `c` on both sides of `t0`, shrinking
/// the offset until both samples agree, clear the noise floor, and match the
/// sign of the second derivative of `q ∘ γ`.
pub fn tangency_sign<C: ClosedCurve + ?Sized>(
    q: &ImplicitCurve,
    c: &C,
    t0: f64,
    tol: &Tol,
) -> Result<SideTest> {
    let j = c.jet(t0);
    let g = q.grad(j.p);
    let gn = g.norm();
    let speed = j.d1.norm();
    if gn == 0.0 || speed == 0.0 {
        return Err(Error::HigherOrderTangency { t: t0 });
    }
    let diam = c.diameter();
    let curvature_term = q.hessian_form(j.d1) + g.dot(j.d2);
    let mut step = SIDE_STEP * diam;
    for _ in 0..=SIDE_SHRINKS {
        let h = step / speed;
        let qp = q.eval(c.point(t0 + h)) / gn;
        let qm = q.eval(c.point(t0 - h)) / gn;
        let margin = qp.abs().min(qm.abs());
        let agrees = qp.signum() == qm.signum()
            && (curvature_term == 0.0 || qp.signum() == curvature_term.signum());
        if agrees && margin > 10.0 * tol.eps_abs * diam {
            let n = g * (qp.signum() / gn);
            let tau = if j.d1.cross(n) > 0.0 { 1 } else { -1 };
            return Ok(SideTest { tau, margin });
        }
        step /= 10.0;
    }
    Err(Error::HigherOrderTangency { t: t0 })
}

fn central_slope<F: Fn(f64) -> f64>(f: F, t: f64) -> f64 {
    let h = 1e-7;
    (f(t + h) - f(t - h)) / (2.0 * h)
}

/// Lines through `p` tangent to `c`: zeros of `det[γ − p, γ']`.
pub fn line_tangencies<C: ClosedCurve + ?Sized>(
    p: Pt,
    c: &C,
    tol: &Tol,
) -> Result<Vec<TangencyEvent>> {
    let diam = c.diameter();
    let (dist, _) = distance_to_point(c, p);
    if dist <= tol.eps_abs * diam {
        return Err(Error::PointOnCurve {
            x: p.x,
            y: p.y,
            distance: dist,
        });
    }
    let g = |t: f64| {
        let j = c.jet(t);
        (j.p - p).cross(j.d1)
    };
    let roots = roots_periodic(g, tol).map_err(|e| match e {
        Error::DegenerateZero { t } => Error::HigherOrderTangency { t },
        e => e,
    })?;
    roots
        .into_iter()
        .map(|r| {
            let x = c.point(r.t);
            let line = ImplicitCurve::line_through(p, x)?;
            let side = tangency_sign(&line, c, r.t, tol)?;
            Ok(TangencyEvent {
                t: r.t,
                point: x,
                curve: line,
                w: 1,
                tau: side.tau,
                eps: side.tau,
                slope: central_slope(g, r.t),
                side_margin: side.margin,
            })
        })
        .collect()
}

/// True when the conic is a line pair up to a scale-free threshold.
pub fn is_reducible(q: &ImplicitCurve, center: Pt, scale: f64) -> bool {
    match q.in_frame(center, scale) {
        Ok(local) => local.discriminant().abs() <= REDUCIBLE_DISC,
        Err(_) => true,
    }
}

/// Conics through the four points of `cfg` tangent to `c`.
///
/// The curve must keep away from the base points; tangencies to reducible
/// members are rejected.
pub fn conic_tangencies<C: ClosedCurve + ?Sized>(
    cfg: &PointConfig,
    c: &C,
    tol: &Tol,
) -> Result<Vec<TangencyEvent>> {
    let pencil = Pencil::new(cfg.quad()?, tol)?;
    pencil_tangencies(&pencil, c, tol)
}

pub fn pencil_tangencies<C: ClosedCurve + ?Sized>(
    pencil: &Pencil,
    c: &C,
    tol: &Tol,
) -> Result<Vec<TangencyEvent>> {
    let diam = c.diameter();
    for p in &pencil.points {
        let (dist, _) = distance_to_point(c, *p);
        if dist <= tol.eps_abs * diam {
            return Err(Error::PointOnCurve {
                x: p.x,
                y: p.y,
                distance: dist,
            });
        }
    }
    let g = |t: f64| {
        let j = c.jet(t);
        pencil.tangency_function(j.p, j.d1)
    };
    let roots = roots_periodic(g, tol).map_err(|e| match e {
        Error::DegenerateZero { t } => Error::HigherOrderTangency { t },
        e => e,
    })?;
    let center = pencil.points.iter().fold(Pt::ORIGIN, |s, p| s + *p) / 4.0;
    let scale = pencil.diameter();
    roots
        .into_iter()
        .map(|r| {
            let x = c.point(r.t);
            let q = pencil.member_through(x, tol)?;
            if is_reducible(&q, center, scale) {
                return Err(Error::ReducibleTangency { t: r.t });
            }
            let side = tangency_sign(&q, c, r.t, tol)?;
            Ok(TangencyEvent {
                t: r.t,
                point: x,
                curve: q,
                w: 1,
                tau: side.tau,
                eps: side.tau,
                slope: central_slope(g, r.t),
                side_margin: side.margin,
            })
        })
        .collect()
}

/// Signed count `Σ ε` over the events.
pub fn signed_count(events: &[TangencyEvent]) -> i64 {
    events.iter().map(|e| i64::from(e.eps)).sum()
}
