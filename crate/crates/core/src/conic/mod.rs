//! Implicit lines and conics, point configurations, pencils of conics through
//! four points, and the enumerative constants.

mod constants;
mod pencil;
mod strata;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Pt, Tol};

pub use constants::{kontsevich_nd, welschinger_wd};
pub use pencil::{diagonal_points, pencil_basis, DiagonalPoint, Pencil, PARTITIONS};
pub use strata::{iota, StrataSet, StratumEntry, StratumKind};

/// A real plane curve of degree one or two, `ax + by + c` or
/// `Ax² + Bxy + Cy² + Dx + Ey + F`.
///
/// Coefficients are kept at unit Euclidean norm with the first nonzero
/// coefficient positive. Every predicate derived from a curve (sides, normals,
/// degeneracy) is invariant under rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "CurveRepr", try_from = "CurveRepr")]
pub enum ImplicitCurve {
    Line([f64; 3]),
    Conic([f64; 6]),
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    degree: u8,
    coeffs: Vec<f64>,
}

impl From<ImplicitCurve> for CurveRepr {
    fn from(c: ImplicitCurve) -> Self {
        CurveRepr {
            degree: c.degree(),
            coeffs: c.coeffs().to_vec(),
        }
    }
}

impl TryFrom<CurveRepr> for ImplicitCurve {
    type Error = Error;

    fn try_from(r: CurveRepr) -> Result<Self> {
        match (r.degree, r.coeffs.as_slice()) {
            (1, &[a, b, c]) => ImplicitCurve::line(a, b, c),
            (2, &[a, b, c, d, e, f]) => ImplicitCurve::conic([a, b, c, d, e, f]),
            _ => Err(Error::InvalidInput(
                "implicit curve needs degree 1 with 3 coefficients or degree 2 with 6".into(),
            )),
        }
    }
}

fn normalize<const N: usize>(mut c: [f64; N]) -> Result<[f64; N]> {
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::InvalidInput(
            "implicit curve coefficients vanish".into(),
        ));
    }
    let lead = c
        .iter()
        .copied()
        .find(|v| v.abs() > 1e-15 * norm)
        .unwrap_or(1.0);
    // Already canonical: leave it bit-identical so JSON round trips are exact.
    if lead > 0.0 && (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
        return Ok(c);
    }
    let s = lead.signum() / norm;
    c.iter_mut().for_each(|v| *v *= s);
    Ok(c)
}

impl ImplicitCurve {
    pub fn line(a: f64, b: f64, c: f64) -> Result<Self> {
        if a == 0.0 && b == 0.0 {
            return Err(Error::InvalidInput("line needs a nonzero normal".into()));
        }
        Ok(ImplicitCurve::Line(normalize([a, b, c])?))
    }

    pub fn conic(coeffs: [f64; 6]) -> Result<Self> {
        Ok(ImplicitCurve::Conic(normalize(coeffs)?))
    }

    /// The line through two distinct points.
    pub fn line_through(p: Pt, q: Pt) -> Result<Self> {
        Self::line(p.y - q.y, q.x - p.x, p.x * q.y - p.y * q.x)
    }

    pub fn degree(&self) -> u8 {
        match self {
            ImplicitCurve::Line(_) => 1,
            ImplicitCurve::Conic(_) => 2,
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        match self {
            ImplicitCurve::Line(c) => c,
            ImplicitCurve::Conic(c) => c,
        }
    }

    /// Coefficients as a conic (lines get zero quadratic part).
    pub fn as_conic_coeffs(&self) -> [f64; 6] {
        match *self {
            ImplicitCurve::Line([a, b, c]) => [0.0, 0.0, 0.0, a, b, c],
            ImplicitCurve::Conic(c) => c,
        }
    }

    pub fn eval(&self, p: Pt) -> f64 {
        let [a, b, c, d, e, f] = self.as_conic_coeffs();
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    pub fn grad(&self, p: Pt) -> Pt {
        let [a, b, c, d, e, _] = self.as_conic_coeffs();
        Pt::new(2.0 * a * p.x + b * p.y + d, b * p.x + 2.0 * c * p.y + e)
    }

    /// `vᵀ H v` for the (constant) Hessian `H`.
    pub fn hessian_form(&self, v: Pt) -> f64 {
        let [a, b, c, ..] = self.as_conic_coeffs();
        2.0 * (a * v.x * v.x + b * v.x * v.y + c * v.y * v.y)
    }

    pub fn negated(&self) -> Self {
        match *self {
            ImplicitCurve::Line(c) => ImplicitCurve::Line(c.map(|v| -v)),
            ImplicitCurve::Conic(c) => ImplicitCurve::Conic(c.map(|v| -v)),
        }
    }

    /// Restore the canonical sign and scale.
    pub fn canonical(&self) -> Self {
        match *self {
            ImplicitCurve::Line(c) => ImplicitCurve::Line(normalize(c).expect("nonzero")),
            ImplicitCurve::Conic(c) => ImplicitCurve::Conic(normalize(c).expect("nonzero")),
        }
    }

    /// Determinant of the symmetric 3×3 matrix of a conic. Zero exactly for
    /// line pairs (and double lines).
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, d, e, f] = self.as_conic_coeffs();
        let (b, d, e) = (b / 2.0, d / 2.0, e / 2.0);
        a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d)
    }

    /// Product of two lines.
    pub fn line_product(l1: &ImplicitCurve, l2: &ImplicitCurve) -> Result<Self> {
        match (l1, l2) {
            (ImplicitCurve::Line([a1, b1, c1]), ImplicitCurve::Line([a2, b2, c2])) => {
                Self::conic([
                    a1 * a2,
                    a1 * b2 + a2 * b1,
                    b1 * b2,
                    a1 * c2 + a2 * c1,
                    b1 * c2 + b2 * c1,
                    c1 * c2,
                ])
            }
            _ => Err(Error::InvalidInput("line_product takes two lines".into())),
        }
    }

    /// Euclidean distance between canonical coefficient vectors, zero iff the
    /// two curves coincide.
    pub fn coeff_distance(&self, other: &ImplicitCurve) -> f64 {
        let a = self.canonical().as_conic_coeffs();
        let b = other.canonical().as_conic_coeffs();
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// The curve in local coordinates `u` with `x = center + scale·u`,
    /// canonically scaled. Used to make degeneracy tests scale-free.
    pub fn in_frame(&self, center: Pt, scale: f64) -> Result<ImplicitCurve> {
        let [a, b, c, d, e, _] = self.as_conic_coeffs();
        let (cx, cy) = (center.x, center.y);
        let s2 = scale * scale;
        let coeffs = [
            a * s2,
            b * s2,
            c * s2,
            (2.0 * a * cx + b * cy + d) * scale,
            (b * cx + 2.0 * c * cy + e) * scale,
            self.eval(center),
        ];
        match self {
            ImplicitCurve::Line(_) => ImplicitCurve::line(coeffs[3], coeffs[4], coeffs[5]),
            ImplicitCurve::Conic(_) => ImplicitCurve::conic(coeffs),
        }
    }

    /// Pull back along `x ↦ (x − shift) / scale`: returns `R` with
    /// `R(x) = Q((x − shift)/scale)`.
    fn in_original_frame(q: [f64; 6], shift: Pt, scale: f64) -> [f64; 6] {
        let [a, b, c, d, e, f] = q;
        let (cx, cy) = (shift.x, shift.y);
        let s2 = scale * scale;
        [
            a / s2,
            b / s2,
            c / s2,
            (-2.0 * a * cx - b * cy) / s2 + d / scale,
            (-b * cx - 2.0 * c * cy) / s2 + e / scale,
            (a * cx * cx + b * cx * cy + c * cy * cy) / s2 - (d * cx + e * cy) / scale + f,
        ]
    }
}

/// The conic through five points: the null vector of the 5×6 interpolation
/// matrix, computed by fully pivoted elimination in centered, rescaled
/// coordinates.
pub fn conic_through_five(points: &[Pt; 5], tol: &Tol) -> Result<ImplicitCurve> {
    let center = points.iter().fold(Pt::ORIGIN, |s, p| s + *p) / 5.0;
    let scale = points.iter().map(|p| p.dist(center)).fold(0.0, f64::max);
    if !(scale > 0.0) {
        return Err(Error::DegenerateConfig("five coincident points".into()));
    }
    let mut m: Vec<[f64; 6]> = points
        .iter()
        .map(|p| {
            let u = (*p - center) / scale;
            [u.x * u.x, u.x * u.y, u.y * u.y, u.x, u.y, 1.0]
        })
        .collect();

    let mut col_of_row = [0usize; 5];
    let mut cols: Vec<usize> = (0..6).collect();
    let mut first_pivot = 0.0;
    for r in 0..5 {
        let mut best = (r, r, 0.0);
        for (i, row) in m.iter().enumerate().skip(r) {
            for &j in &cols[r..] {
                if row[j].abs() > best.2 {
                    best = (i, j, row[j].abs());
                }
            }
        }
        let (pi, pj, pv) = best;
        if r == 0 {
            first_pivot = pv;
        }
        if pv <= first_pivot / tol.eps_cond {
            return Err(Error::IllConditioned {
                cond: first_pivot / pv.max(f64::MIN_POSITIVE),
            });
        }
        m.swap(r, pi);
        let k = cols[r..].iter().position(|&c| c == pj).unwrap() + r;
        cols.swap(r, k);
        col_of_row[r] = pj;
        let pivot_row = m[r];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[pj] / pivot_row[pj];
            for j in 0..6 {
                row[j] -= f * pivot_row[j];
            }
        }
    }
    // Remaining column is free; set it to 1 and read off the pivots.
    let free = cols[5];
    let mut q = [0.0; 6];
    q[free] = 1.0;
    for r in 0..5 {
        let c = col_of_row[r];
        q[c] = -m[r][free] / m[r][c];
    }
    let curve = ImplicitCurve::conic(ImplicitCurve::in_original_frame(q, center, scale))?;
    Ok(curve)
}

/// Degree and `3d − 2` fixed points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    pub d: u32,
    pub points: Vec<Pt>,
}

impl PointConfig {
    pub fn new(d: u32, points: Vec<Pt>) -> Self {
        PointConfig { d, points }
    }

    /// Bounding-box diagonal of the points (at least 1 for a single point).
    pub fn diameter(&self) -> f64 {
        let (mut lo, mut hi) = (Pt::new(f64::MAX, f64::MAX), Pt::new(f64::MIN, f64::MIN));
        for p in &self.points {
            lo = Pt::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Pt::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let d = (hi - lo).norm();
        if d > 0.0 {
            d
        } else {
            1.0
        }
    }

    /// Count, distinctness, and for conics the no-three-collinear condition.
    pub fn problems(&self, tol: &Tol) -> Vec<ConfigProblem> {
        let mut out = Vec::new();
        let diam = self.diameter();
        let pts = &self.points;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[i].dist(pts[j]) <= tol.eps_abs * diam {
                    out.push(ConfigProblem::Coincident(i, j));
                }
            }
        }
        if self.d == 2 {
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    for k in j + 1..pts.len() {
                        if collinear(pts[i], pts[j], pts[k], tol.eps_abs * diam * diam) {
                            out.push(ConfigProblem::Collinear(i, j, k));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self, tol: &Tol) -> Result<()> {
        if !(1..=3).contains(&self.d) {
            return Err(Error::InvalidInput(format!(
                "degree {} not supported",
                self.d
            )));
        }
        let want = 3 * self.d as usize - 2;
        if self.points.len() != want {
            return Err(Error::InvalidInput(format!(
                "degree {} needs {} points, got {}",
                self.d,
                want,
                self.points.len()
            )));
        }
        match self.problems(tol).first() {
            None => Ok(()),
            Some(p) => Err(Error::DegenerateConfig(p.to_string())),
        }
    }

    /// The four points of a conic configuration.
    pub fn quad(&self) -> Result<[Pt; 4]> {
        match (self.d, self.points.as_slice()) {
            (2, &[a, b, c, d]) => Ok([a, b, c, d]),
            _ => Err(Error::InvalidInput(
                "expected d = 2 with four points".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigProblem {
    Coincident(usize, usize),
    Collinear(usize, usize, usize),
}

impl std::fmt::Display for ConfigProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigProblem::Coincident(i, j) => write!(f, "points {i} and {j} coincide"),
            ConfigProblem::Collinear(i, j, k) => write!(f, "points {i}, {j}, {k} are collinear"),
        }
    }
}

pub(crate) fn collinear(a: Pt, b: Pt, c: Pt, thr: f64) -> bool {
    (b - a).cross(c - a).abs() <= thr
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;

    #[test]
    fn five_on_unit_circle() {
        let pts: [Pt; 5] = std::array::from_fn(|i| Pt::polar(1.0, 0.3 + TAU * i as f64 / 5.0));
        let q = conic_through_five(&pts, &Tol::default()).unwrap();
        let want = ImplicitCurve::conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(q.coeff_distance(&want) < 1e-12, "{q:?}");
    }

    #[test]
    fn three_collinear_gives_line_pair() {
        let pts = [
            Pt::new(0.0, 0.0),
            Pt::new(1.0, 0.0),
            Pt::new(2.5, 0.0),
            Pt::new(0.3, 1.0),
            Pt::new(1.7, 2.0),
        ];
        let q = conic_through_five(&pts, &Tol::default()).unwrap();
        for p in pts {
            assert!(q.eval(p).abs() <= 1e-9);
        }
        assert!(q.discriminant().abs() < 1e-12);
    }

    #[test]
    fn four_collinear_is_ill_conditioned() {
        let pts = [
            Pt::new(0.0, 0.0),
            Pt::new(1.0, 0.0),
            Pt::new(2.0, 0.0),
            Pt::new(3.0, 0.0),
            Pt::new(1.0, 1.0),
        ];
        assert!(matches!(
            conic_through_five(&pts, &Tol::default()),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn canonical_scale_and_sign() {
        let q = ImplicitCurve::conic([-2.0, 0.0, -2.0, 0.0, 0.0, 2.0]).unwrap();
        let c = q.coeffs();
        assert!(c[0] > 0.0);
        assert!((c.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(q.negated().canonical().coeff_distance(&q) < 1e-15);
    }

    #[test]
    fn line_through_points() {
        let l = ImplicitCurve::line_through(Pt::new(0.0, 1.0), Pt::new(1.0, 1.0)).unwrap();
        assert!(l.eval(Pt::new(5.0, 1.0)).abs() < 1e-15);
        assert!(l.eval(Pt::new(5.0, 2.0)).abs() > 0.5);
    }

    #[test]
    fn config_validation() {
        let tol = Tol::default();
        let ok = PointConfig::new(
            2,
            vec![
                Pt::new(0.0, 0.0),
                Pt::new(1.0, 0.0),
                Pt::new(1.0, 1.0),
                Pt::new(0.0, 1.0),
            ],
        );
        ok.validate(&tol).unwrap();
        let bad = PointConfig::new(
            2,
            vec![
                Pt::new(0.0, 0.0),
                Pt::new(1.0, 0.0),
                Pt::new(2.0, 0.0),
                Pt::new(0.0, 1.0),
            ],
        );
        assert!(matches!(
            bad.validate(&tol),
            Err(Error::DegenerateConfig(_))
        ));
        let short = PointConfig::new(2, vec![Pt::ORIGIN]);
        assert!(short.validate(&tol).is_err());
    }
}
