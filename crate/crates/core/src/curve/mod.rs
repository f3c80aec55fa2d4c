//! Oriented immersed closed plane curves and their indices.

mod index;
mod presets;
mod spline;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Pt, Tol};

pub use index::{
    distance_to_point, index_report, self_intersections, whitney_index, winding_index, IndexReport,
    SelfIntersection,
};
pub use presets::{figure_eight, k_fold_circle, lissajous, Preset, PresetName};
pub use spline::{ClampedSpline, Jet, PeriodicSpline};

/// Anything that can be evaluated as a closed `C¹` curve on `[0, 1)`.
///
/// Index, tangency and audit routines are written against this trait so they
/// accept reparametrized or otherwise wrapped curves as well as
/// [`ImmersedCurve`].
pub trait ClosedCurve: Sync {
    fn jet(&self, t: f64) -> Jet;

    /// Bounding-box diagonal; the natural length scale for tolerances.
    fn diameter(&self) -> f64;

    fn point(&self, t: f64) -> Pt {
        self.jet(t).p
    }
}

/// One local arc replacement in a spliced curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    /// Start of the replaced parameter window.
    pub t_in: f64,
    /// Window length; the window may wrap past the seam.
    pub len: f64,
    pub arc: ClampedSpline,
}

impl Patch {
    fn local(&self, t: f64) -> Option<f64> {
        let d = (t - self.t_in).rem_euclid(1.0);
        (d <= self.len).then(|| d / self.len)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Circle {
        center: Pt,
        radius: f64,
        turns: i32,
        /// Angle at `t = 0`, radians.
        phase: f64,
    },
    Spline(PeriodicSpline),
    Spliced {
        base: Box<ImmersedCurve>,
        patches: Vec<Patch>,
    },
}

/// A closed oriented immersed plane curve parametrized by `t ∈ [0, 1)`.
///
/// Immutable after construction; the constructor checks the immersion
/// condition on a dense sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmersedCurve {
    shape: Shape,
    diameter: f64,
}

const DIAMETER_SAMPLES: usize = 2048;

impl ImmersedCurve {
    pub fn circle(center: Pt, radius: f64, turns: i32) -> Result<Self> {
        Self::circle_with_phase(center, radius, turns, 0.0)
    }

    pub fn circle_with_phase(center: Pt, radius: f64, turns: i32, phase: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) || !center.is_finite() || !phase.is_finite() {
            return Err(Error::InvalidInput(
                "circle needs finite center and radius > 0".into(),
            ));
        }
        if turns == 0 {
            return Err(Error::InvalidInput("circle turns must be nonzero".into()));
        }
        Self::build(Shape::Circle {
            center,
            radius,
            turns,
            phase,
        })
    }

    pub fn spline(samples: Vec<Pt>) -> Result<Self> {
        Self::build(Shape::Spline(PeriodicSpline::new(samples)?))
    }

    /// Replace parameter windows of `base` by arcs.
    ///
    /// Each arc must start at `base(t_in)` and end at `base(t_in + len)`; its
    /// end derivatives are clamped to the base tangents so the splice is `C¹`.
    pub fn spliced(base: ImmersedCurve, windows: Vec<(f64, f64, Vec<Pt>)>) -> Result<Self> {
        if let Shape::Spliced { .. } = base.shape {
            return Err(Error::InvalidInput(
                "cannot splice into a spliced curve".into(),
            ));
        }
        let tol = 1e-7 * base.diameter;
        let mut patches = Vec::with_capacity(windows.len());
        for (t_in, len, mut samples) in windows {
            if !(len > 0.0 && len < 1.0) || !t_in.is_finite() {
                return Err(Error::SpliceNotC1(format!("bad window ({t_in}, {len})")));
            }
            let t_in = t_in.rem_euclid(1.0);
            let a = base.jet(t_in);
            let b = base.jet(t_in + len);
            let (first, last) = match (samples.first(), samples.last()) {
                (Some(f), Some(l)) if samples.len() >= 2 => (*f, *l),
                _ => return Err(Error::SpliceNotC1("arc needs at least 2 samples".into())),
            };
            if first.dist(a.p) > tol || last.dist(b.p) > tol {
                return Err(Error::SpliceNotC1(format!(
                    "arc endpoints miss the base curve by {:e} / {:e}",
                    first.dist(a.p),
                    last.dist(b.p)
                )));
            }
            samples[0] = a.p;
            let n = samples.len();
            samples[n - 1] = b.p;
            let arc = ClampedSpline::new(samples, a.d1 * len, b.d1 * len)?;
            patches.push(Patch { t_in, len, arc });
        }
        for (i, p) in patches.iter().enumerate() {
            for q in &patches[i + 1..] {
                let d = (q.t_in - p.t_in).rem_euclid(1.0);
                if d <= p.len || 1.0 - d <= q.len {
                    return Err(Error::SpliceNotC1("patch windows overlap".into()));
                }
            }
        }
        Self::build(Shape::Spliced {
            base: Box::new(base),
            patches,
        })
    }

    fn build(shape: Shape) -> Result<Self> {
        let mut c = ImmersedCurve {
            shape,
            diameter: 0.0,
        };
        let (mut lo, mut hi) = (Pt::new(f64::MAX, f64::MAX), Pt::new(f64::MIN, f64::MIN));
        for i in 0..DIAMETER_SAMPLES {
            let p = c.jet(i as f64 / DIAMETER_SAMPLES as f64).p;
            lo = Pt::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Pt::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        c.diameter = (hi - lo).norm();
        if !(c.diameter > 0.0) {
            return Err(Error::InvalidInput(
                "curve is degenerate (zero extent)".into(),
            ));
        }
        c.check_immersed(&Tol::default())?;
        Ok(c)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Position and unit-free tangent at `t`, failing where the tangent
    /// collapses.
    pub fn eval(&self, t: f64) -> Result<(Pt, Pt)> {
        let j = self.jet(t);
        let speed = j.d1.norm();
        if !(speed >= 1e-9 * self.diameter) {
            return Err(Error::NotImmersed { t, speed });
        }
        Ok((j.p, j.d1))
    }

    /// Dense check of `‖γ'(t)‖ ≥ eps_abs · diameter`.
    pub fn check_immersed(&self, tol: &Tol) -> Result<()> {
        let n = tol.grid_n.max(1024);
        let floor = tol.eps_abs * self.diameter;
        for i in 0..n {
            let t = i as f64 / n as f64;
            let speed = self.jet(t).d1.norm();
            if !(speed >= floor) {
                return Err(Error::NotImmersed { t, speed });
            }
        }
        Ok(())
    }

    pub fn translated(&self, v: Pt) -> ImmersedCurve {
        self.mapped(&Similarity::translation(v))
    }

    /// Image under a similarity transform (possibly orientation reversing).
    pub fn mapped(&self, m: &Similarity) -> ImmersedCurve {
        let shape = match &self.shape {
            Shape::Circle {
                center,
                radius,
                turns,
                phase,
            } => {
                let (turns, phase) = if m.reflect {
                    (-turns, -phase + m.angle)
                } else {
                    (*turns, *phase + m.angle)
                };
                Shape::Circle {
                    center: m.apply(*center),
                    radius: radius * m.scale,
                    turns,
                    phase,
                }
            }
            Shape::Spline(s) => Shape::Spline(
                PeriodicSpline::new(s.samples().iter().map(|p| m.apply(*p)).collect())
                    .expect("sample count preserved"),
            ),
            Shape::Spliced { base, patches } => Shape::Spliced {
                base: Box::new(base.mapped(m)),
                patches: patches
                    .iter()
                    .map(|p| {
                        let (d0, d1) = p.arc.end_derivatives();
                        Patch {
                            t_in: p.t_in,
                            len: p.len,
                            arc: ClampedSpline::new(
                                p.arc.samples().iter().map(|q| m.apply(*q)).collect(),
                                m.apply_vec(d0),
                                m.apply_vec(d1),
                            )
                            .expect("mapped arc stays valid"),
                        }
                    })
                    .collect(),
            },
        };
        ImmersedCurve {
            shape,
            diameter: self.diameter * m.scale,
        }
    }

    /// The same curve traversed backwards: `t ↦ γ(1 − t)`.
    pub fn reversed(&self) -> ImmersedCurve {
        let shape = match &self.shape {
            Shape::Circle {
                center,
                radius,
                turns,
                phase,
            } => Shape::Circle {
                center: *center,
                radius: *radius,
                turns: -turns,
                phase: *phase,
            },
            Shape::Spline(s) => {
                let n = s.samples().len();
                let samples = (0..n).map(|j| s.samples()[(n - j) % n]).collect();
                Shape::Spline(PeriodicSpline::new(samples).expect("sample count preserved"))
            }
            Shape::Spliced { base, patches } => Shape::Spliced {
                base: Box::new(base.reversed()),
                patches: patches
                    .iter()
                    .map(|p| {
                        let (d0, d1) = p.arc.end_derivatives();
                        let samples = p.arc.samples().iter().rev().copied().collect();
                        Patch {
                            t_in: (1.0 - p.t_in - p.len).rem_euclid(1.0),
                            len: p.len,
                            arc: ClampedSpline::new(samples, -d1, -d0)
                                .expect("reversed arc stays valid"),
                        }
                    })
                    .collect(),
            },
        };
        ImmersedCurve {
            shape,
            diameter: self.diameter,
        }
    }

    /// Uniform samples of the curve, e.g. for plotting.
    pub fn polyline(&self, n: usize) -> Vec<Pt> {
        (0..n).map(|i| self.jet(i as f64 / n as f64).p).collect()
    }
}

impl ClosedCurve for ImmersedCurve {
    fn jet(&self, t: f64) -> Jet {
        match &self.shape {
            Shape::Circle {
                center,
                radius,
                turns,
                phase,
            } => {
                let w = TAU * f64::from(*turns);
                let a = w * t.rem_euclid(1.0) + phase;
                let (s, c) = a.sin_cos();
                Jet {
                    p: *center + Pt::new(c, s) * *radius,
                    d1: Pt::new(-s, c) * (radius * w),
                    d2: Pt::new(-c, -s) * (radius * w * w),
                }
            }
            Shape::Spline(s) => s.jet(t),
            Shape::Spliced { base, patches } => {
                for p in patches {
                    if let Some(u) = p.local(t) {
                        let j = p.arc.jet(u);
                        return Jet {
                            p: j.p,
                            d1: j.d1 / p.len,
                            d2: j.d2 / (p.len * p.len),
                        };
                    }
                }
                base.jet(t)
            }
        }
    }

    fn diameter(&self) -> f64 {
        self.diameter
    }
}

impl<C: ClosedCurve + ?Sized> ClosedCurve for &C {
    fn jet(&self, t: f64) -> Jet {
        (**self).jet(t)
    }

    fn diameter(&self) -> f64 {
        (**self).diameter()
    }
}

/// `p ↦ scale · R(angle) · F · p + shift`, where `F` is the reflection in the
/// x-axis when `reflect` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub angle: f64,
    pub scale: f64,
    pub reflect: bool,
    pub shift: Pt,
}

impl Similarity {
    pub fn translation(shift: Pt) -> Self {
        Similarity {
            angle: 0.0,
            scale: 1.0,
            reflect: false,
            shift,
        }
    }

    pub fn apply_vec(&self, v: Pt) -> Pt {
        let v = if self.reflect { Pt::new(v.x, -v.y) } else { v };
        v.rotated(self.angle) * self.scale
    }

    pub fn apply(&self, p: Pt) -> Pt {
        self.apply_vec(p) + self.shift
    }
}

/// JSON description of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CurveSpec {
    Circle {
        center: Pt,
        radius: f64,
        turns: i32,
        #[serde(default, skip_serializing_if = "is_zero")]
        phase: f64,
    },
    Spline {
        samples: Vec<Pt>,
    },
    Preset(Preset),
    Spliced {
        base: Box<CurveSpec>,
        patches: Vec<PatchSpec>,
    },
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchSpec {
    pub t_in: f64,
    pub len: f64,
    pub samples: Vec<Pt>,
}

impl CurveSpec {
    pub fn build(&self) -> Result<ImmersedCurve> {
        match self {
            CurveSpec::Circle {
                center,
                radius,
                turns,
                phase,
            } => ImmersedCurve::circle_with_phase(*center, *radius, *turns, *phase),
            CurveSpec::Spline { samples } => ImmersedCurve::spline(samples.clone()),
            CurveSpec::Preset(p) => p.build(),
            CurveSpec::Spliced { base, patches } => ImmersedCurve::spliced(
                base.build()?,
                patches
                    .iter()
                    .map(|p| (p.t_in, p.len, p.samples.clone()))
                    .collect(),
            ),
        }
    }
}

impl From<&ImmersedCurve> for CurveSpec {
    fn from(c: &ImmersedCurve) -> Self {
        match c.shape() {
            Shape::Circle {
                center,
                radius,
                turns,
                phase,
            } => CurveSpec::Circle {
                center: *center,
                radius: *radius,
                turns: *turns,
                phase: *phase,
            },
            Shape::Spline(s) => CurveSpec::Spline {
                samples: s.samples().to_vec(),
            },
            Shape::Spliced { base, patches } => CurveSpec::Spliced {
                base: Box::new(CurveSpec::from(base.as_ref())),
                patches: patches
                    .iter()
                    .map(|p| PatchSpec {
                        t_in: p.t_in,
                        len: p.len,
                        samples: p.arc.samples().to_vec(),
                    })
                    .collect(),
            },
        }
    }
}
