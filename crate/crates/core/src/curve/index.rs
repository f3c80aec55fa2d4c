//! Whitney index, winding numbers and self-intersections.
//!
//! Both indices are computed twice: by summing small angle increments of a
//! plane vector field along the curve, and by a signed count of the
//! parameters where that vector crosses a fixed ray. The two must agree.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::ClosedCurve;
use crate::error::{Error, Result};
use crate::kernel::{roots_periodic, Pt, Tol};

const ANGLE_SAMPLES: usize = 1024;
const MAX_STEP_ANGLE: f64 = PI / 8.0;
const MAX_DEPTH: u32 = 24;
const MAX_DEFECT: f64 = 0.25;

/// Ray directions tried in turn until one avoids tangencies.
const RAY_ANGLES: [f64; 8] = [
    0.3719, 1.9277, 4.0031, 2.7191, 5.4467, 0.9901, 3.3319, 5.0123,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub whitney: i64,
    pub windings: BTreeMap<usize, i64>,
    /// Largest distance (in turns) of any angle sum from its rounded value.
    pub residual: f64,
}

/// Total turning of `v(t)` over one period, in turns.
fn turning<V: Fn(f64) -> Pt>(v: &V, n: usize) -> f64 {
    fn segment<V: Fn(f64) -> Pt>(v: &V, a: f64, b: f64, va: Pt, vb: Pt, depth: u32) -> f64 {
        let d = va.cross(vb).atan2(va.dot(vb));
        if d.abs() <= MAX_STEP_ANGLE || depth >= MAX_DEPTH {
            return d;
        }
        let m = 0.5 * (a + b);
        let vm = v(m);
        segment(v, a, m, va, vm, depth + 1) + segment(v, m, b, vm, vb, depth + 1)
    }
    let h = 1.0 / n as f64;
    let mut total = 0.0;
    let mut prev = v(0.0);
    let first = prev;
    for i in 1..=n {
        let t = i as f64 * h;
        let cur = if i == n { first } else { v(t) };
        total += segment(v, t - h, t, prev, cur, 0);
        prev = cur;
    }
    total / TAU
}

fn round_checked(turns: f64) -> Result<(i64, f64)> {
    let k = turns.round();
    let defect = (turns - k).abs();
    if defect > MAX_DEFECT {
        return Err(Error::AngularDefect { defect });
    }
    Ok((k as i64, defect))
}

/// Signed count of the parameters where `v(t)` points along `dir`.
fn ray_count<V: Fn(f64) -> Pt>(v: &V, dir: Pt, tol: &Tol) -> Result<i64> {
    let roots = roots_periodic(|t| dir.cross(v(t)), tol)?;
    Ok(roots
        .iter()
        .filter(|r| dir.dot(v(r.t)) > 0.0)
        .map(|r| r.change.sign())
        .sum())
}

fn ray_count_any<V: Fn(f64) -> Pt>(v: &V, tol: &Tol) -> Result<i64> {
    let mut last = None;
    for a in RAY_ANGLES {
        match ray_count(v, Pt::polar(1.0, a), tol) {
            Ok(k) => return Ok(k),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one direction tried"))
}

/// Degree of the Gauss map `t ↦ γ'(t)/‖γ'(t)‖`.
pub fn whitney_index<C: ClosedCurve + ?Sized>(c: &C, tol: &Tol) -> Result<i64> {
    Ok(whitney_with_defect(c, tol)?.0)
}

fn whitney_with_defect<C: ClosedCurve + ?Sized>(c: &C, tol: &Tol) -> Result<(i64, f64)> {
    let floor = tol.eps_abs * c.diameter();
    let tangent = |t: f64| c.jet(t).d1;
    for i in 0..ANGLE_SAMPLES {
        let t = i as f64 / ANGLE_SAMPLES as f64;
        let speed = tangent(t).norm();
        if !(speed >= floor) {
            return Err(Error::NotImmersed { t, speed });
        }
    }
    let (k, defect) = round_checked(turning(&tangent, ANGLE_SAMPLES))?;
    // Signed preimage count of a regular value of the Gauss map.
    let oracle = ray_count_any(&tangent, tol)?;
    if oracle != k {
        return Err(Error::OracleMismatch {
            angle: k,
            ray: oracle,
        });
    }
    Ok((k, defect))
}

/// Distance from `p` to the curve and the closest parameter.
pub fn distance_to_point<C: ClosedCurve + ?Sized>(c: &C, p: Pt) -> (f64, f64) {
    let n = ANGLE_SAMPLES * 2;
    let h = 1.0 / n as f64;
    let (mut best_t, mut best) = (0.0, f64::MAX);
    for i in 0..n {
        let t = i as f64 * h;
        let d = c.point(t).dist(p);
        if d < best {
            best = d;
            best_t = t;
        }
    }
    // Golden-section refinement around the best sample.
    let (mut a, mut b) = (best_t - h, best_t + h);
    let f = |t: f64| c.point(t).dist(p);
    const G: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - G * (b - a);
    let mut x2 = a + G * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - G * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + G * (b - a);
            f2 = f(x2);
        }
    }
    let (t, d) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    if d < best {
        (d, t.rem_euclid(1.0))
    } else {
        (best, best_t)
    }
}

/// Number of turns of `γ(t) − p`.
///
/// Fails with [`Error::PointOnCurve`] when `p` is within
/// `eps_abs · diameter` of the curve.
pub fn winding_index<C: ClosedCurve + ?Sized>(c: &C, p: Pt, tol: &Tol) -> Result<i64> {
    Ok(winding_with_defect(c, p, tol)?.0)
}

fn winding_with_defect<C: ClosedCurve + ?Sized>(c: &C, p: Pt, tol: &Tol) -> Result<(i64, f64)> {
    let (dist, _) = distance_to_point(c, p);
    if dist <= tol.eps_abs * c.diameter() {
        return Err(Error::PointOnCurve {
            x: p.x,
            y: p.y,
            distance: dist,
        });
    }
    let radial = |t: f64| c.point(t) - p;
    let (k, defect) = round_checked(turning(&radial, ANGLE_SAMPLES))?;
    let oracle = ray_count_any(&radial, tol)?;
    if oracle != k {
        return Err(Error::OracleMismatch {
            angle: k,
            ray: oracle,
        });
    }
    Ok((k, defect))
}

/// Whitney index plus the winding numbers about each of `points`, keyed by
/// position in the slice.
pub fn index_report<C: ClosedCurve + ?Sized>(
    c: &C,
    points: &[Pt],
    tol: &Tol,
) -> Result<IndexReport> {
    let (whitney, mut residual) = whitney_with_defect(c, tol)?;
    let mut windings = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let (w, d) = winding_with_defect(c, *p, tol)?;
        residual = residual.max(d);
        windings.insert(i, w);
    }
    Ok(IndexReport {
        whitney,
        windings,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfIntersection {
    pub t1: f64,
    pub t2: f64,
    pub point: Pt,
}

const POLY_SEGMENTS: usize = 2048;
const MIN_SEPARATION: usize = 2;
/// `|sin|` of the crossing angle below which a double point is tangential.
const TRANSVERSAL_SIN: f64 = 1e-6;

/// All double points of the curve, each verified transversal.
///
/// Candidates come from crossings (and near contacts) of a fine polyline,
/// pruned by a sweep over segment bounding boxes, then refined by a 2-D Newton
/// iteration on `γ(t₁) = γ(t₂)`.
pub fn self_intersections<C: ClosedCurve + ?Sized>(
    c: &C,
    tol: &Tol,
) -> Result<Vec<SelfIntersection>> {
    let n = POLY_SEGMENTS;
    let h = 1.0 / n as f64;
    let diam = c.diameter();
    let pts: Vec<Pt> = (0..n).map(|i| c.point(i as f64 * h)).collect();
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
    let near = 1e-6 * diam;

    let mut order: Vec<(f64, f64, usize)> = (0..n)
        .map(|i| {
            let (a, b) = seg(i);
            (a.x.min(b.x) - near, a.x.max(b.x) + near, i)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut found: Vec<SelfIntersection> = Vec::new();
    let mut active: Vec<(f64, usize)> = Vec::new();
    for &(lo, hi, i) in &order {
        active.retain(|&(end, _)| end >= lo);
        for &(_, j) in &active {
            let gap = (i + n - j) % n;
            if gap.min(n - gap) < MIN_SEPARATION {
                continue;
            }
            let (a, b) = seg(i);
            let (p, q) = seg(j);
            let (ylo1, yhi1) = (a.y.min(b.y), a.y.max(b.y));
            let (ylo2, yhi2) = (p.y.min(q.y), p.y.max(q.y));
            if ylo1 > yhi2 + near || ylo2 > yhi1 + near {
                continue;
            }
            let guess = match segment_crossing(a, b, p, q) {
                Some((s, r)) => Some(((i as f64 + s) * h, (j as f64 + r) * h)),
                None if segment_distance(a, b, p, q) <= near => {
                    Some(((i as f64 + 0.5) * h, (j as f64 + 0.5) * h))
                }
                None => None,
            };
            let Some((t1, t2)) = guess else { continue };
            if let Some(x) = refine_double_point(c, t1, t2, tol)? {
                let (t1, t2) = if x.t1 <= x.t2 {
                    (x.t1, x.t2)
                } else {
                    (x.t2, x.t1)
                };
                let same = |a: f64, b: f64| circ_dist(a, b) < 1e-8;
                let dup = found.iter().any(|y| {
                    (same(y.t1, t1) && same(y.t2, t2)) || (same(y.t1, t2) && same(y.t2, t1))
                });
                if !dup {
                    found.push(SelfIntersection {
                        t1,
                        t2,
                        point: x.point,
                    });
                }
            }
        }
        active.push((hi, i));
    }
    found.sort_by(|a, b| a.t1.total_cmp(&b.t1).then(a.t2.total_cmp(&b.t2)));
    Ok(found)
}

fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

fn segment_crossing(a: Pt, b: Pt, p: Pt, q: Pt) -> Option<(f64, f64)> {
    let r = b - a;
    let s = q - p;
    let den = r.cross(s);
    if den == 0.0 {
        return None;
    }
    let u = (p - a).cross(s) / den;
    let v = (p - a).cross(r) / den;
    ((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)).then_some((u, v))
}

fn point_segment_distance(x: Pt, a: Pt, b: Pt) -> f64 {
    let ab = b - a;
    let l2 = ab.norm2();
    if l2 == 0.0 {
        return x.dist(a);
    }
    let s = ((x - a).dot(ab) / l2).clamp(0.0, 1.0);
    x.dist(a + ab * s)
}

fn segment_distance(a: Pt, b: Pt, p: Pt, q: Pt) -> f64 {
    point_segment_distance(a, p, q)
        .min(point_segment_distance(b, p, q))
        .min(point_segment_distance(p, a, b))
        .min(point_segment_distance(q, a, b))
}

/// Newton on `γ(t₁) − γ(t₂) = 0`. Returns `None` when the iteration shows the
/// candidate was only a near miss, and an error for a tangential contact.
fn refine_double_point<C: ClosedCurve + ?Sized>(
    c: &C,
    mut t1: f64,
    mut t2: f64,
    tol: &Tol,
) -> Result<Option<SelfIntersection>> {
    let diam = c.diameter();
    let contact = tol.eps_abs * diam;
    let mut best = (f64::MAX, t1, t2);
    for _ in 0..60 {
        let j1 = c.jet(t1);
        let j2 = c.jet(t2);
        let r = j1.p - j2.p;
        let rn = r.norm();
        if rn < best.0 {
            best = (rn, t1, t2);
        }
        if rn <= 1e-14 * diam {
            break;
        }
        // [γ'(t1), −γ'(t2)] (dt1, dt2)ᵀ = −r
        let det = j1.d1.cross(-j2.d1);
        if det.abs() <= 1e-14 * j1.d1.norm() * j2.d1.norm() {
            break;
        }
        let dt1 = (-r).cross(-j2.d1) / det;
        let dt2 = j1.d1.cross(-r) / det;
        let step = dt1.abs().max(dt2.abs());
        if step > 0.05 {
            break;
        }
        t1 += dt1;
        t2 += dt2;
    }
    let (dist, t1, t2) = best;
    let (t1, t2) = (t1.rem_euclid(1.0), t2.rem_euclid(1.0));
    if circ_dist(t1, t2) < 1.0 / POLY_SEGMENTS as f64 {
        return Ok(None);
    }
    let j1 = c.jet(t1);
    let j2 = c.jet(t2);
    let sin = j1.d1.cross(j2.d1).abs() / (j1.d1.norm() * j2.d1.norm());
    if dist <= contact {
        if sin <= TRANSVERSAL_SIN {
            return Err(Error::NonTransversalSelfIntersection { t1, t2 });
        }
        return Ok(Some(SelfIntersection {
            t1,
            t2,
            point: (j1.p + j2.p) * 0.5,
        }));
    }
    if dist <= 1e3 * contact && sin <= 1e-3 {
        // Nearly parallel strands that Newton cannot separate from touching.
        return Err(Error::NonTransversalSelfIntersection { t1, t2 });
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{figure_eight, ImmersedCurve, Jet};

    #[test]
    fn circle_indices() {
        let tol = Tol::default();
        for k in -5..=5 {
            if k == 0 {
                continue;
            }
            let c = ImmersedCurve::circle(Pt::new(0.2, -0.4), 1.3, k).unwrap();
            assert_eq!(whitney_index(&c, &tol).unwrap(), i64::from(k));
        }
        let c = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        assert_eq!(winding_index(&c, Pt::ORIGIN, &tol).unwrap(), 1);
        assert_eq!(winding_index(&c, Pt::new(3.0, 0.0), &tol).unwrap(), 0);
    }

    #[test]
    fn point_on_curve_rejected() {
        let c = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        let err = winding_index(&c, Pt::new(0.0, 1.0), &Tol::default()).unwrap_err();
        assert!(matches!(err, Error::PointOnCurve { .. }));
    }

    #[test]
    fn figure_eight_indices() {
        let tol = Tol::default();
        let c = figure_eight(Pt::ORIGIN, 1.0).unwrap();
        assert_eq!(whitney_index(&c, &tol).unwrap(), 0);
        assert_eq!(winding_index(&c, Pt::new(0.5, 0.0), &tol).unwrap(), -1);
        assert_eq!(winding_index(&c, Pt::new(-0.5, 0.0), &tol).unwrap(), 1);
    }

    #[test]
    fn double_points() {
        let tol = Tol::default();
        let c = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        assert!(self_intersections(&c, &tol).unwrap().is_empty());
        let c = figure_eight(Pt::ORIGIN, 1.0).unwrap();
        let x = self_intersections(&c, &tol).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x[0].point.norm() < 1e-9);
        let (a, b) = (circ_dist(x[0].t1, 0.0), circ_dist(x[0].t2, 0.5));
        let (c, d) = (circ_dist(x[0].t1, 0.5), circ_dist(x[0].t2, 0.0));
        assert!((a < 1e-9 && b < 1e-9) || (c < 1e-9 && d < 1e-9), "{x:?}");
    }

    /// Unit circle followed by the circle of radius ½ touching it internally
    /// at (1, 0): a tangential self-contact.
    struct TouchingCircles;

    impl ClosedCurve for TouchingCircles {
        fn jet(&self, t: f64) -> Jet {
            let t = t.rem_euclid(1.0);
            let (center, r, s) = if t < 0.5 {
                (Pt::ORIGIN, 1.0, t)
            } else {
                (Pt::new(0.5, 0.0), 0.5, t - 0.5)
            };
            let w = 2.0 * TAU;
            let (sn, cs) = (w * s).sin_cos();
            Jet {
                p: center + Pt::new(cs, sn) * r,
                d1: Pt::new(-sn, cs) * (r * w),
                d2: Pt::new(-cs, -sn) * (r * w * w),
            }
        }

        fn diameter(&self) -> f64 {
            2.0 * 2f64.sqrt()
        }
    }

    #[test]
    fn tangential_contact_rejected() {
        let err = self_intersections(&TouchingCircles, &Tol::default()).unwrap_err();
        assert!(matches!(err, Error::NonTransversalSelfIntersection { .. }));
    }
}
