//! Interpolating cubic splines in the plane.
//!
//! [`PeriodicSpline`] is the closed-curve model: uniform knots on `[0, 1)` and
//! periodic end conditions, so position, tangent and curvature are continuous
//! across the seam. [`ClampedSpline`] models open arcs with prescribed end
//! derivatives and is used to splice local resolutions into a base curve.

use crate::error::{Error, Result};
use crate::kernel::Pt;

/// Position, first and second derivative at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub p: Pt,
    pub d1: Pt,
    pub d2: Pt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSpline {
    samples: Vec<Pt>,
    /// Second derivatives at the knots.
    m: Vec<Pt>,
}

impl PeriodicSpline {
    pub const MIN_SAMPLES: usize = 8;

    pub fn new(samples: Vec<Pt>) -> Result<Self> {
        if samples.len() < Self::MIN_SAMPLES {
            return Err(Error::InvalidInput(format!(
                "periodic spline needs at least {} samples, got {}",
                Self::MIN_SAMPLES,
                samples.len()
            )));
        }
        if samples.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("spline samples must be finite".into()));
        }
        let n = samples.len();
        let h = 1.0 / n as f64;
        // M_{j-1} + 4 M_j + M_{j+1} = 6 (P_{j+1} - 2 P_j + P_{j-1}) / h^2
        let rhs: Vec<Pt> = (0..n)
            .map(|j| {
                let prev = samples[(j + n - 1) % n];
                let next = samples[(j + 1) % n];
                (next - samples[j] * 2.0 + prev) * (6.0 / (h * h))
            })
            .collect();
        let m = solve_cyclic(1.0, 4.0, 1.0, &rhs);
        Ok(PeriodicSpline { samples, m })
    }

    pub fn samples(&self) -> &[Pt] {
        &self.samples
    }

    pub fn jet(&self, t: f64) -> Jet {
        let n = self.samples.len();
        let h = 1.0 / n as f64;
        let s = t.rem_euclid(1.0) * n as f64;
        let j = (s.floor() as usize).min(n - 1);
        let u = s - j as f64;
        let k = (j + 1) % n;
        cubic_jet(self.samples[j], self.samples[k], self.m[j], self.m[k], h, u)
    }
}

/// Hermite-free form of the cubic between two knots with second derivatives
/// `mj`, `mk`, local coordinate `u ∈ [0, 1]`, knot spacing `h`.
fn cubic_jet(pj: Pt, pk: Pt, mj: Pt, mk: Pt, h: f64, u: f64) -> Jet {
    let v = 1.0 - u;
    let h2 = h * h / 6.0;
    let p = pj * v + pk * u + (mj * (v * v * v - v) + mk * (u * u * u - u)) * h2;
    let d1 = (pk - pj) / h + (mj * -(3.0 * v * v - 1.0) + mk * (3.0 * u * u - 1.0)) * (h / 6.0);
    let d2 = mj * v + mk * u;
    Jet { p, d1, d2 }
}

/// Solve the cyclic tridiagonal system with constant bands `(a, b, c)` via
/// the Sherman–Morrison correction of the Thomas algorithm.
fn solve_cyclic(a: f64, b: f64, c: f64, rhs: &[Pt]) -> Vec<Pt> {
    let n = rhs.len();
    let gamma = -b;
    let mut diag = vec![b; n];
    diag[0] = b - gamma;
    diag[n - 1] = b - a * c / gamma;
    let x = solve_tridiagonal(a, &diag, c, rhs);
    let mut u = vec![Pt::ORIGIN; n];
    u[0] = Pt::new(gamma, gamma);
    u[n - 1] = Pt::new(c, c);
    let z = solve_tridiagonal(a, &diag, c, &u);
    let fact = |xv: f64, zv: f64, x0: f64, z0: f64| {
        let num = x0 + a * xv / gamma;
        let den = 1.0 + z0 + a * zv / gamma;
        num / den
    };
    let fx = fact(x[n - 1].x, z[n - 1].x, x[0].x, z[0].x);
    let fy = fact(x[n - 1].y, z[n - 1].y, x[0].y, z[0].y);
    x.iter()
        .zip(&z)
        .map(|(xi, zi)| Pt::new(xi.x - fx * zi.x, xi.y - fy * zi.y))
        .collect()
}

fn solve_tridiagonal(a: f64, diag: &[f64], c: f64, rhs: &[Pt]) -> Vec<Pt> {
    let n = rhs.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![Pt::ORIGIN; n];
    cp[0] = c / diag[0];
    dp[0] = rhs[0] / diag[0];
    for i in 1..n {
        let den = diag[i] - a * cp[i - 1];
        cp[i] = c / den;
        dp[i] = (rhs[i] - dp[i - 1] * a) / den;
    }
    let mut x = vec![Pt::ORIGIN; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - x[i + 1] * cp[i];
    }
    x
}

/// Open cubic spline through samples with chord-length knots on `[0, 1]`
/// and clamped first derivatives at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct ClampedSpline {
    knots: Vec<f64>,
    samples: Vec<Pt>,
    m: Vec<Pt>,
    start_d: Pt,
    end_d: Pt,
}

impl ClampedSpline {
    pub fn new(samples: Vec<Pt>, start_d: Pt, end_d: Pt) -> Result<Self> {
        let n = samples.len();
        if n < 2 {
            return Err(Error::InvalidInput("arc needs at least 2 samples".into()));
        }
        if samples.iter().any(|p| !p.is_finite()) || !start_d.is_finite() || !end_d.is_finite() {
            return Err(Error::InvalidInput("arc data must be finite".into()));
        }
        let mut knots = Vec::with_capacity(n);
        knots.push(0.0);
        for w in samples.windows(2) {
            let step = w[0].dist(w[1]);
            if step == 0.0 {
                return Err(Error::InvalidInput(
                    "arc has repeated consecutive samples".into(),
                ));
            }
            knots.push(knots.last().unwrap() + step);
        }
        let total = *knots.last().unwrap();
        knots.iter_mut().for_each(|k| *k /= total);
        *knots.last_mut().unwrap() = 1.0;

        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        // Tridiagonal system for knot second derivatives, clamped ends.
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![Pt::ORIGIN; n];
        diag[0] = 2.0 * h[0];
        sup[0] = h[0];
        rhs[0] = ((samples[1] - samples[0]) / h[0] - start_d) * 6.0;
        for i in 1..n - 1 {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = ((samples[i + 1] - samples[i]) / h[i]
                - (samples[i] - samples[i - 1]) / h[i - 1])
                * 6.0;
        }
        sub[n - 1] = h[n - 2];
        diag[n - 1] = 2.0 * h[n - 2];
        rhs[n - 1] = (end_d - (samples[n - 1] - samples[n - 2]) / h[n - 2]) * 6.0;
        let m = thomas(&sub, &diag, &sup, &rhs);
        Ok(ClampedSpline {
            knots,
            samples,
            m,
            start_d,
            end_d,
        })
    }

    pub fn samples(&self) -> &[Pt] {
        &self.samples
    }

    pub fn end_derivatives(&self) -> (Pt, Pt) {
        (self.start_d, self.end_d)
    }

    /// Jet at arc parameter `u ∈ [0, 1]`.
    pub fn jet(&self, u: f64) -> Jet {
        let u = u.clamp(0.0, 1.0);
        let n = self.knots.len();
        let j = match self.knots.binary_search_by(|k| k.total_cmp(&u)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let h = self.knots[j + 1] - self.knots[j];
        let local = (u - self.knots[j]) / h;
        cubic_jet(
            self.samples[j],
            self.samples[j + 1],
            self.m[j],
            self.m[j + 1],
            h,
            local,
        )
    }
}

fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[Pt]) -> Vec<Pt> {
    let n = rhs.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![Pt::ORIGIN; n];
    cp[0] = sup[0] / diag[0];
    dp[0] = rhs[0] / diag[0];
    for i in 1..n {
        let den = diag[i] - sub[i] * cp[i - 1];
        cp[i] = sup[i] / den;
        dp[i] = (rhs[i] - dp[i - 1] * sub[i]) / den;
    }
    let mut x = vec![Pt::ORIGIN; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - x[i + 1] * cp[i];
    }
    x
}
