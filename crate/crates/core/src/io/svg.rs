//! Deterministic SVG scenes: curve, fixed points, strata and tangencies.

use std::fmt::Write;

use crate::conic::{ImplicitCurve, StrataSet};
use crate::curve::ClosedCurve;
use crate::kernel::Pt;
use crate::tangency::TangencyEvent;

const WIDTH: f64 = 800.0;
const CURVE_SAMPLES: usize = 1024;
const CONIC_SAMPLES: usize = 720;

/// Everything drawn in one scene.
#[derive(Debug, Clone, Copy)]
pub struct Scene<'a, C: ClosedCurve + ?Sized> {
    pub curve: &'a C,
    pub points: &'a [Pt],
    pub strata: Option<&'a StrataSet>,
    pub events: &'a [TangencyEvent],
    pub title: &'a str,
}

struct View {
    lo: Pt,
    hi: Pt,
    k: f64,
}

impl View {
    fn new(pts: impl Iterator<Item = Pt>) -> View {
        let (mut lo, mut hi) = (Pt::new(f64::MAX, f64::MAX), Pt::new(f64::MIN, f64::MIN));
        for p in pts {
            lo = Pt::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Pt::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let pad = 0.08 * span;
        lo = Pt::new(lo.x - pad, lo.y - pad);
        hi += Pt::new(pad, pad);
        let k = WIDTH / (hi.x - lo.x).max(hi.y - lo.y);
        View { lo, hi, k }
    }

    fn height(&self) -> f64 {
        (self.hi.y - self.lo.y) * self.k
    }

    fn width(&self) -> f64 {
        (self.hi.x - self.lo.x) * self.k
    }

    fn map(&self, p: Pt) -> (f64, f64) {
        ((p.x - self.lo.x) * self.k, (self.hi.y - p.y) * self.k)
    }

    fn contains(&self, p: Pt) -> bool {
        p.x >= self.lo.x && p.x <= self.hi.x && p.y >= self.lo.y && p.y <= self.hi.y
    }

    fn fmt(&self, p: Pt) -> String {
        let (x, y) = self.map(p);
        format!("{x:.2},{y:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Polylines of a conic or line inside the view, traced through a known
/// point `p0` of it: every other point is `p0 + s·d` with
/// `s = −⟨∇Q(p0), d⟩ / q(d)`.
fn trace(q: &ImplicitCurve, p0: Pt, view: &View) -> Vec<Vec<Pt>> {
    let [a, b, c, ..] = q.as_conic_coeffs();
    let g = q.grad(p0);
    let mut runs = Vec::new();
    let mut cur = Vec::new();
    if let ImplicitCurve::Line(_) = q {
        let d = g.perp().normalized();
        let span = (view.hi - view.lo).norm();
        let n = 64;
        for i in 0..=n {
            let p = p0 + d * (span * (2.0 * i as f64 / n as f64 - 1.0));
            if view.contains(p) {
                cur.push(p);
            } else if cur.len() > 1 {
                runs.push(std::mem::take(&mut cur));
            } else {
                cur.clear();
            }
        }
    } else {
        for i in 0..=CONIC_SAMPLES {
            let th = std::f64::consts::PI * i as f64 / CONIC_SAMPLES as f64;
            let d = Pt::new(th.cos(), th.sin());
            let qd = a * d.x * d.x + b * d.x * d.y + c * d.y * d.y;
            let p = if qd.abs() < 1e-300 {
                None
            } else {
                Some(p0 - d * (g.dot(d) / qd))
            };
            match p {
                Some(p) if view.contains(p) => cur.push(p),
                _ => {
                    if cur.len() > 1 {
                        runs.push(std::mem::take(&mut cur));
                    } else {
                        cur.clear();
                    }
                }
            }
        }
    }
    if cur.len() > 1 {
        runs.push(cur);
    }
    runs
}

/// Renders a scene. Output depends only on the inputs.
pub fn render<C: ClosedCurve + ?Sized>(scene: &Scene<'_, C>) -> String {
    let curve_pts: Vec<Pt> = (0..CURVE_SAMPLES)
        .map(|i| scene.curve.point(i as f64 / CURVE_SAMPLES as f64))
        .collect();
    let strata_pts = scene.strata.map(|s| s.points()).unwrap_or_default();
    let view = View::new(
        curve_pts
            .iter()
            .chain(scene.points)
            .chain(&strata_pts)
            .copied(),
    );
    let r = 4.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.2} {:.2}">
<title>{}</title>
<style>.curve{{fill:none;stroke:#1f3b73;stroke-width:2}} .tangent{{fill:none;stroke:#999;stroke-width:1}} .point{{fill:#000}} .stratum{{fill:none;stroke:#b5651d;stroke-width:1.5}} .plus{{fill:#1a8f3a}} .minus{{fill:#c0392b}} text{{font:12px sans-serif}}</style>"#,
        view.width(),
        view.height(),
        view.width(),
        view.height(),
        escape(scene.title)
    );

    for e in scene.events {
        for run in trace(&e.curve, e.point, &view) {
            let pts: Vec<String> = run.iter().map(|p| view.fmt(*p)).collect();
            let _ = writeln!(
                out,
                r#"<polyline class="tangent" points="{}"/>"#,
                pts.join(" ")
            );
        }
    }

    let pts: Vec<String> = curve_pts.iter().map(|p| view.fmt(*p)).collect();
    let _ = writeln!(
        out,
        r#"<polygon class="curve" points="{}"/>"#,
        pts.join(" ")
    );

    // Orientation arrow at t = 0.
    let j = scene.curve.jet(0.0);
    let size = 14.0 / view.k;
    let dir = j.d1.normalized();
    let tip = j.p + dir * size;
    let left = j.p + dir.perp() * (0.5 * size);
    let right = j.p - dir.perp() * (0.5 * size);
    let _ = writeln!(
        out,
        r##"<polygon class="arrow" fill="#1f3b73" points="{} {} {}"/>"##,
        view.fmt(tip),
        view.fmt(left),
        view.fmt(right)
    );

    for p in scene.points {
        let (x, y) = view.map(*p);
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{x:.2}" cy="{y:.2}" r="{r}"/>"#
        );
    }
    if let Some(s) = scene.strata {
        for e in &s.entries {
            let (x, y) = view.map(e.point);
            let _ = writeln!(
                out,
                r#"<circle class="stratum" cx="{x:.2}" cy="{y:.2}" r="{:.0}"/>"#,
                2.0 * r
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}">ι={}</text>"#,
                x + 10.0,
                y - 8.0,
                e.iota
            );
        }
    }
    for e in scene.events {
        let (x, y) = view.map(e.point);
        let cls = if e.eps > 0 { "plus" } else { "minus" };
        let _ = writeln!(
            out,
            r#"<circle class="tangency {cls}" cx="{x:.2}" cy="{y:.2}" r="{r}"><title>ε={}</title></circle>"#,
            e.eps
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Number of tangency markers in a rendered scene.
pub fn count_markers(svg: &str) -> usize {
    svg.matches(r#"class="tangency "#).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ImmersedCurve;
    use crate::kernel::Tol;
    use crate::tangency::line_tangencies;

    #[test]
    fn markers_match_events() {
        let c = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        let p = Pt::new(2.5, 0.3);
        let events = line_tangencies(p, &c, &Tol::default()).unwrap();
        let scene = Scene {
            curve: &c,
            points: &[p],
            strata: Some(&StrataSet::toy(p)),
            events: &events,
            title: "lines",
        };
        let svg = render(&scene);
        assert_eq!(count_markers(&svg), events.len());
        assert_eq!(svg, render(&scene));
        assert!(svg.contains("ι=-1"));
    }

    #[test]
    fn empty_scene() {
        let c = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        let svg = render(&Scene {
            curve: &c,
            points: &[],
            strata: None,
            events: &[],
            title: "a < b",
        });
        assert_eq!(count_markers(&svg), 0);
        assert!(svg.contains("a &lt; b"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
