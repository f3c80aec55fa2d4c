//! Named curve constructors used by the shipped scenarios.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::ImmersedCurve;
use crate::error::{Error, Result};
use crate::kernel::Pt;

const PRESET_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    FigureEight,
    Lissajous,
    KFoldCircle,
}

fn one() -> f64 {
    1.0
}

fn default_a() -> u32 {
    3
}

fn default_b() -> u32 {
    2
}

/// JSON form: `{"kind":"preset","name":"figure-eight","center":[x,y],"scale":s}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub name: PresetName,
    #[serde(default)]
    pub center: Pt,
    #[serde(default = "one")]
    pub scale: f64,
    /// Turning number for `k-fold-circle`.
    #[serde(default)]
    pub k: i32,
    /// Frequencies and phase for `lissajous`.
    #[serde(default = "default_a")]
    pub a: u32,
    #[serde(default = "default_b")]
    pub b: u32,
    #[serde(default)]
    pub phase: f64,
}

impl Preset {
    pub fn build(&self) -> Result<ImmersedCurve> {
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidInput("preset scale must be > 0".into()));
        }
        match self.name {
            PresetName::FigureEight => figure_eight(self.center, self.scale),
            PresetName::Lissajous => lissajous(self.a, self.b, self.phase, self.center, self.scale),
            PresetName::KFoldCircle => k_fold_circle(self.k, self.center, self.scale),
        }
    }
}

fn sampled(n: usize, f: impl Fn(f64) -> Pt) -> Vec<Pt> {
    (0..n).map(|i| f(TAU * i as f64 / n as f64)).collect()
}

/// Spline through `(sin θ, ½ sin 2θ)`: one transversal double point at the
/// center, right lobe clockwise, left lobe counterclockwise, Whitney index 0.
pub fn figure_eight(center: Pt, scale: f64) -> Result<ImmersedCurve> {
    ImmersedCurve::spline(sampled(PRESET_SAMPLES, |th| {
        center + Pt::new(th.sin(), 0.5 * (2.0 * th).sin()) * scale
    }))
}

/// Spline through `(sin(aθ + φ), sin(bθ))`.
pub fn lissajous(a: u32, b: u32, phase: f64, center: Pt, scale: f64) -> Result<ImmersedCurve> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput(
            "lissajous frequencies must be positive".into(),
        ));
    }
    let n = PRESET_SAMPLES.max(24 * a.max(b) as usize);
    ImmersedCurve::spline(sampled(n, |th| {
        center + Pt::new((f64::from(a) * th + phase).sin(), (f64::from(b) * th).sin()) * scale
    }))
}

/// The circle `z ↦ z^k` pushed into general position: `e^{ikθ} + δ e^{iθ}`,
/// a curve of Whitney index `k` with `|k| − 1` small interior loops. `k = 0`
/// gives the figure-eight, negative `k` the mirror image.
pub fn k_fold_circle(k: i32, center: Pt, radius: f64) -> Result<ImmersedCurve> {
    const DELTA: f64 = 0.4;
    if k == 0 {
        return figure_eight(center, radius);
    }
    let m = k.unsigned_abs() as f64;
    let sgn = f64::from(k.signum());
    let n = PRESET_SAMPLES * (k.unsigned_abs() as usize).max(2);
    ImmersedCurve::spline(sampled(n, |th| {
        let z = Pt::polar(1.0, m * th) + Pt::polar(DELTA, th);
        center + Pt::new(z.x, sgn * z.y) * (radius / (1.0 + DELTA))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_json_defaults() {
        let p: Preset = serde_json::from_str(r#"{"name":"lissajous"}"#).unwrap();
        assert_eq!((p.a, p.b, p.scale), (3, 2, 1.0));
        p.build().unwrap();
        let p: Preset = serde_json::from_str(r#"{"name":"k-fold-circle","k":-3}"#).unwrap();
        p.build().unwrap();
    }
}
