//! Singular curves with local resolutions in disks, alternating sums of
//! curve functionals over all resolutions, and the degree-bound suite.

mod random;

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conic::PointConfig;
use crate::curve::{whitney_index, winding_index, ClosedCurve, CurveSpec, ImmersedCurve};
use crate::error::{Error, Result};
use crate::invariant::{enumerated_count, toy_n1};
use crate::kernel::{Pt, Tol};

pub use random::{
    degree_bound_suite, random_case, FunctionalKind, RandomCase, SuiteCase, SuiteReport,
};

/// Samples used to build a resolution arc from a shape description.
const ARC_SAMPLES: usize = 48;
/// Relative tolerance for "on the disk boundary".
const BOUNDARY_TOL: f64 = 1e-6;
/// Bump height and loop radius as fractions of the disk radius.
const BUMP_HEIGHT: f64 = 0.45;
const LOOP_RADIUS: f64 = 0.3;

/// One resolution of the curve inside a disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum ArcShape {
    /// The base arc itself.
    Base,
    /// The base arc pushed sideways by a smooth bump; `sign` picks the side
    /// (left of the chord for `+1`).
    Bump { sign: i8 },
    /// The base arc with a small curl; `sign` is its turning direction.
    Loop { sign: i8 },
    /// An explicit arc from `γ(t_in)` to `γ(t_in + len)`.
    Samples { points: Vec<Pt> },
}

/// A disk around a non-generic fragment with its two resolutions.
///
/// The base curve enters the disk at `t_in` and leaves at `t_in + len`; both
/// endpoints lie on the boundary circle. `resolutions[0]` is the positive one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskSpec {
    pub center: Pt,
    pub radius: f64,
    pub t_in: f64,
    pub len: f64,
    pub resolutions: [ArcShape; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularCurveSpec {
    pub base: CurveSpec,
    pub disks: Vec<DiskSpec>,
}

/// Parameter window of the arc of `c` through `c(t_c)` inside the disk of
/// radius `radius` centered at `c(t_c)`.
pub fn disk_window<C: ClosedCurve + ?Sized>(c: &C, t_c: f64, radius: f64) -> Result<(f64, f64)> {
    let center = c.point(t_c);
    let inside = |t: f64| c.point(t).dist(center) < radius;
    let step = 1.0 / 4096.0;
    let exit = |dir: f64| -> Result<f64> {
        let mut a = 0.0;
        loop {
            let b = a + step;
            if b >= 0.5 {
                return Err(Error::InvalidInput("disk does not cut a single arc".into()));
            }
            if !inside(t_c + dir * b) {
                let (mut lo, mut hi) = (a, b);
                for _ in 0..60 {
                    let m = 0.5 * (lo + hi);
                    if inside(t_c + dir * m) {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
            a = b;
        }
    };
    let back = exit(-1.0)?;
    let fwd = exit(1.0)?;
    Ok(((t_c - back).rem_euclid(1.0), back + fwd))
}

impl DiskSpec {
    /// A disk centered on the curve at `t_c`.
    pub fn on_curve(
        c: &ImmersedCurve,
        t_c: f64,
        radius: f64,
        resolutions: [ArcShape; 2],
    ) -> Result<Self> {
        let (t_in, len) = disk_window(c, t_c, radius)?;
        Ok(DiskSpec {
            center: c.point(t_c),
            radius,
            t_in,
            len,
            resolutions,
        })
    }

    fn base_arc(&self, base: &ImmersedCurve, u: f64) -> Pt {
        base.point(self.t_in + u * self.len)
    }

    /// Sample points of one resolution arc.
    pub fn arc_samples(&self, base: &ImmersedCurve, which: usize) -> Result<Vec<Pt>> {
        let a = self.base_arc(base, 0.0);
        let b = self.base_arc(base, 1.0);
        let chord = b - a;
        if chord.norm() == 0.0 {
            return Err(Error::InvalidInput("disk window has a zero chord".into()));
        }
        let e1 = chord.normalized();
        let e2 = e1.perp();
        let n = ARC_SAMPLES;
        let us = (0..=n).map(|i| i as f64 / n as f64);
        let pts = match &self.resolutions[which] {
            ArcShape::Base => us.map(|u| self.base_arc(base, u)).collect(),
            ArcShape::Bump { sign } => {
                check_sign(*sign)?;
                let h = BUMP_HEIGHT * self.radius * f64::from(*sign);
                us.map(|u| self.base_arc(base, u) + e2 * (h * (PI * u).sin().powi(2)))
                    .collect()
            }
            ArcShape::Loop { sign } => {
                check_sign(*sign)?;
                let r = LOOP_RADIUS * self.radius;
                let s = f64::from(*sign);
                us.map(|u| {
                    let phi = TAU * u * u * (3.0 - 2.0 * u);
                    self.base_arc(base, u) + (e1 * phi.sin() + e2 * (s * (1.0 - phi.cos()))) * r
                })
                .collect()
            }
            ArcShape::Samples { points } => points.clone(),
        };
        Ok(pts)
    }
}

fn check_sign(s: i8) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("arc sign must be ±1, got {s}")))
    }
}

/// Base curve and arc samples of a validated spec.
#[derive(Debug, Clone)]
pub struct PreparedSpec {
    pub base: ImmersedCurve,
    pub disks: Vec<DiskSpec>,
    pub arcs: Vec<[Vec<Pt>; 2]>,
}

impl SingularCurveSpec {
    /// Checks disk placement and builds the resolution arcs.
    pub fn prepare(&self, tol: &Tol) -> Result<PreparedSpec> {
        let base = self.base.build()?;
        let diam = base.diameter();
        for (i, d) in self.disks.iter().enumerate() {
            let bad = |msg: String| Error::InvalidInput(format!("disk {i}: {msg}"));
            if !(d.radius > 0.0) || !(d.len > 0.0 && d.len < 1.0) {
                return Err(bad("radius and window length must be positive".into()));
            }
            for u in [0.0, 1.0] {
                let r = d.base_arc(&base, u).dist(d.center);
                if (r - d.radius).abs() > BOUNDARY_TOL * d.radius {
                    return Err(bad(format!(
                        "arc endpoint at distance {r} from the center, radius {}",
                        d.radius
                    )));
                }
            }
            let samples = 4096;
            for k in 0..samples {
                let t = k as f64 / samples as f64;
                let local = (t - d.t_in).rem_euclid(1.0);
                let r = base.point(t).dist(d.center);
                if local <= d.len {
                    if r > d.radius * (1.0 + BOUNDARY_TOL) {
                        return Err(bad("base arc leaves the disk".into()));
                    }
                } else if r < d.radius * (1.0 - BOUNDARY_TOL) {
                    return Err(bad("base curve re-enters the disk".into()));
                }
            }
            for e in &self.disks[i + 1..] {
                if d.center.dist(e.center) <= d.radius + e.radius + 2.0 * tol.eps_abs * diam {
                    return Err(bad("disks overlap".into()));
                }
            }
        }
        let mut arcs = Vec::with_capacity(self.disks.len());
        for (i, d) in self.disks.iter().enumerate() {
            let pair = [d.arc_samples(&base, 0)?, d.arc_samples(&base, 1)?];
            for arc in &pair {
                if arc
                    .iter()
                    .any(|p| p.dist(d.center) > d.radius * (1.0 + BOUNDARY_TOL))
                {
                    return Err(Error::InvalidInput(format!(
                        "disk {i}: resolution arc leaves the disk"
                    )));
                }
            }
            arcs.push(pair);
        }
        Ok(PreparedSpec {
            base,
            disks: self.disks.clone(),
            arcs,
        })
    }
}

impl PreparedSpec {
    pub fn n(&self) -> usize {
        self.disks.len()
    }

    /// The curve `Γ_ε`: arc `0` in disk `i` when `ε_i = +1`, arc `1` otherwise.
    pub fn resolve(&self, eps: &[i8]) -> Result<ImmersedCurve> {
        if eps.len() != self.n() {
            return Err(Error::InvalidInput(format!(
                "expected {} signs, got {}",
                self.n(),
                eps.len()
            )));
        }
        if self.n() == 0 {
            return Ok(self.base.clone());
        }
        let windows = self
            .disks
            .iter()
            .zip(&self.arcs)
            .zip(eps)
            .map(|((d, arcs), &e)| {
                check_sign(e)?;
                let arc = if e > 0 { &arcs[0] } else { &arcs[1] };
                Ok((d.t_in, d.len, arc.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        ImmersedCurve::spliced(self.base.clone(), windows)
    }
}

/// `Γ_ε` for a spec and sign tuple.
pub fn resolve(spec: &SingularCurveSpec, eps: &[i8], tol: &Tol) -> Result<ImmersedCurve> {
    spec.prepare(tol)?.resolve(eps)
}

/// All sign tuples in canonical order: tuple `m` has `ε_i = −1` exactly when
/// bit `i` of `m` is set.
pub fn sign_tuples(n: usize) -> Vec<Vec<i8>> {
    (0..1usize << n)
        .map(|m| {
            (0..n)
                .map(|i| if m >> i & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

/// An integer-valued function of a generic curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Functional {
    /// Enumerated signed count of lines through `p` tangent to the curve.
    LineCount {
        p: Pt,
    },
    /// Enumerated signed count of conics through four points tangent to the curve.
    ConicCount {
        points: [Pt; 4],
    },
    /// `2 ind(Γ) − 2 ind_p(Γ)`.
    ToyFormula {
        p: Pt,
    },
    Whitney,
    Winding {
        p: Pt,
    },
    Constant {
        value: i64,
    },
}

impl Functional {
    pub fn eval<C: ClosedCurve + ?Sized>(&self, c: &C, tol: &Tol) -> Result<i64> {
        match self {
            Functional::LineCount { p } => enumerated_count(&PointConfig::new(1, vec![*p]), c, tol),
            Functional::ConicCount { points } => {
                enumerated_count(&PointConfig::new(2, points.to_vec()), c, tol)
            }
            Functional::ToyFormula { p } => toy_n1(*p, c, tol),
            Functional::Whitney => whitney_index(c, tol),
            Functional::Winding { p } => winding_index(c, *p, tol),
            Functional::Constant { value } => Ok(*value),
        }
    }

    /// Points the resolutions must avoid.
    pub fn marked_points(&self) -> Vec<Pt> {
        match self {
            Functional::LineCount { p }
            | Functional::ToyFormula { p }
            | Functional::Winding { p } => {
                vec![*p]
            }
            Functional::ConicCount { points } => points.to_vec(),
            Functional::Whitney | Functional::Constant { .. } => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumTerm {
    pub eps: Vec<i8>,
    pub sign: i8,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternatingSum {
    pub sum: i64,
    pub terms: Vec<SumTerm>,
}

/// `Σ_ε (Π ε_i) f(Γ_ε)` over all `2ⁿ` resolutions.
pub fn alternating_sum<F>(spec: &PreparedSpec, f: F) -> Result<AlternatingSum>
where
    F: Fn(&ImmersedCurve) -> Result<i64> + Sync,
{
    let terms = sign_tuples(spec.n())
        .into_par_iter()
        .map(|eps| {
            let not_generic = |e: Error| {
                if e.is_general_position_failure() {
                    Error::ResolutionNotGeneric {
                        eps: eps.clone(),
                        reason: e.to_string(),
                    }
                } else {
                    e
                }
            };
            let c = spec.resolve(&eps).map_err(&not_generic)?;
            let value = f(&c).map_err(&not_generic)?;
            let sign = eps.iter().product();
            Ok(SumTerm { eps, sign, value })
        })
        .collect::<Result<Vec<_>>>()?;
    let sum = terms.iter().map(|t| i64::from(t.sign) * t.value).sum();
    Ok(AlternatingSum { sum, terms })
}

/// Alternating sum of a [`Functional`].
pub fn functional_sum(spec: &PreparedSpec, f: &Functional, tol: &Tol) -> Result<AlternatingSum> {
    alternating_sum(spec, |c| f.eval(c, tol))
}

/// The shipped two-disk specs.
pub fn preset_spec(name: &str) -> Result<SingularCurveSpec> {
    let base = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1)?;
    let (a, b) = match name {
        "two-kink" => (
            [ArcShape::Loop { sign: 1 }, ArcShape::Loop { sign: -1 }],
            [ArcShape::Base, ArcShape::Loop { sign: 1 }],
        ),
        "two-slide" => (
            [ArcShape::Bump { sign: 1 }, ArcShape::Bump { sign: -1 }],
            [ArcShape::Bump { sign: -1 }, ArcShape::Bump { sign: 1 }],
        ),
        _ => return Err(Error::InvalidInput(format!("unknown FTI preset '{name}'"))),
    };
    Ok(SingularCurveSpec {
        base: CurveSpec::from(&base),
        disks: vec![
            DiskSpec::on_curve(&base, 0.1, 0.25, a)?,
            DiskSpec::on_curve(&base, 0.55, 0.25, b)?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_in_canonical_order() {
        assert_eq!(sign_tuples(0), vec![Vec::<i8>::new()]);
        assert_eq!(
            sign_tuples(2),
            vec![vec![1, 1], vec![-1, 1], vec![1, -1], vec![-1, -1]]
        );
    }

    #[test]
    fn window_of_unit_circle() {
        let c = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        let (t_in, len) = disk_window(&c, 0.25, 0.2).unwrap();
        // Chord 0.2 subtends an angle 2·asin(0.1) on each side.
        let half = 2.0 * (0.1f64).asin() / TAU;
        assert!((t_in - (0.25 - half)).abs() < 1e-12);
        assert!((len - 2.0 * half).abs() < 1e-12);
    }

    #[test]
    fn empty_spec_resolves_to_base() {
        let base = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        let spec = SingularCurveSpec {
            base: CurveSpec::from(&base),
            disks: vec![],
        };
        let p = spec.prepare(&Tol::default()).unwrap();
        let c = p.resolve(&[]).unwrap();
        assert_eq!(c, base);
        let s = functional_sum(&p, &Functional::Whitney, &Tol::default()).unwrap();
        assert_eq!(s.sum, 1);
    }

    #[test]
    fn equal_resolutions_cancel() {
        let base = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        let spec = SingularCurveSpec {
            base: CurveSpec::from(&base),
            disks: vec![
                DiskSpec::on_curve(&base, 0.3, 0.2, [ArcShape::Base, ArcShape::Base]).unwrap(),
            ],
        };
        let p = spec.prepare(&Tol::default()).unwrap();
        assert_eq!(
            p.resolve(&[1]).unwrap().polyline(64),
            p.resolve(&[-1]).unwrap().polyline(64)
        );
        let s = functional_sum(&p, &Functional::Constant { value: 7 }, &Tol::default()).unwrap();
        assert_eq!(s.sum, 0);
    }

    #[test]
    fn kinks_change_whitney() {
        let spec = preset_spec("two-kink").unwrap();
        let p = spec.prepare(&Tol::default()).unwrap();
        let tol = Tol::default();
        let w: Vec<i64> = sign_tuples(2)
            .iter()
            .map(|e| whitney_index(&p.resolve(e).unwrap(), &tol).unwrap())
            .collect();
        // Disk 0: ±1 curl; disk 1: none or a +1 curl.
        assert_eq!(w, vec![2, 0, 3, 1]);
        let s = functional_sum(&p, &Functional::Whitney, &tol).unwrap();
        assert_eq!(s.sum, 0);
    }

    #[test]
    fn slides_across_a_point() {
        let spec = preset_spec("two-slide").unwrap();
        let tol = Tol::default();
        let p = spec.prepare(&tol).unwrap();
        let center = spec.disks[0].center;
        let f = Functional::LineCount { p: center };
        let s = functional_sum(&p, &f, &tol).unwrap();
        assert_eq!(s.sum, 0);
        let values: Vec<i64> = s.terms.iter().map(|t| t.value).collect();
        assert!(values.iter().any(|v| *v != values[0]), "{values:?}");
    }

    #[test]
    fn overlapping_disks_rejected() {
        let base = ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1).unwrap();
        let spec = SingularCurveSpec {
            base: CurveSpec::from(&base),
            disks: vec![
                DiskSpec::on_curve(&base, 0.3, 0.2, [ArcShape::Base, ArcShape::Base]).unwrap(),
                DiskSpec::on_curve(&base, 0.33, 0.2, [ArcShape::Base, ArcShape::Base]).unwrap(),
            ],
        };
        assert!(spec.prepare(&Tol::default()).is_err());
    }
}
