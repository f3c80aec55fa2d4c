use serde::{Deserialize, Serialize};

use super::{collinear, ImplicitCurve};
use crate::error::{Error, Result};
use crate::kernel::{Pt, Tol};

/// The three ways to split four points into two pairs.
pub const PARTITIONS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

/// Smallest angle between the two lines of a partition (radians) for their
/// intersection to count as affine.
const PARALLEL_ANGLE: f64 = 1e-6;

fn partition_label(p: &[[usize; 2]; 2]) -> String {
    format!(
        "{}{}|{}{}",
        p[0][0] + 1,
        p[0][1] + 1,
        p[1][0] + 1,
        p[1][1] + 1
    )
}

fn check_quad(points: &[Pt; 4], tol: &Tol) -> Result<f64> {
    let (mut lo, mut hi) = (Pt::new(f64::MAX, f64::MAX), Pt::new(f64::MIN, f64::MIN));
    for p in points {
        lo = Pt::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Pt::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let diam = (hi - lo).norm();
    for i in 0..4 {
        for j in i + 1..4 {
            if points[i].dist(points[j]) <= tol.eps_abs * diam {
                return Err(Error::DegenerateConfig(format!(
                    "points {i} and {j} coincide"
                )));
            }
            for k in j + 1..4 {
                if collinear(points[i], points[j], points[k], tol.eps_abs * diam * diam) {
                    return Err(Error::DegenerateConfig(format!(
                        "points {i}, {j}, {k} are collinear"
                    )));
                }
            }
        }
    }
    Ok(diam)
}

/// The line-pair basis `(p1p2)(p3p4)`, `(p1p3)(p2p4)` of the pencil of conics
/// through four points.
pub fn pencil_basis(points: &[Pt; 4], tol: &Tol) -> Result<(ImplicitCurve, ImplicitCurve)> {
    check_quad(points, tol)?;
    let pair = |p: &[[usize; 2]; 2]| -> Result<ImplicitCurve> {
        let l1 = ImplicitCurve::line_through(points[p[0][0]], points[p[0][1]])?;
        let l2 = ImplicitCurve::line_through(points[p[1][0]], points[p[1][1]])?;
        ImplicitCurve::line_product(&l1, &l2)
    };
    let a = pair(&PARTITIONS[0])?;
    let b = pair(&PARTITIONS[1])?;
    let cos: f64 = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x * y).sum();
    if 1.0 - cos.abs() <= tol.eps_abs {
        return Err(Error::DegenerateConfig(
            "pencil basis is linearly dependent".into(),
        ));
    }
    Ok((a, b))
}

/// The pencil of conics through four points in general position.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    pub points: [Pt; 4],
    pub a: ImplicitCurve,
    pub b: ImplicitCurve,
    diameter: f64,
}

impl Pencil {
    pub fn new(points: [Pt; 4], tol: &Tol) -> Result<Self> {
        let (a, b) = pencil_basis(&points, tol)?;
        let diameter = check_quad(&points, tol)?;
        Ok(Pencil {
            points,
            a,
            b,
            diameter,
        })
    }

    /// `μA + νB`, canonically scaled.
    pub fn member(&self, mu: f64, nu: f64) -> Result<ImplicitCurve> {
        let (a, b) = (self.a.coeffs(), self.b.coeffs());
        ImplicitCurve::conic(std::array::from_fn(|i| mu * a[i] + nu * b[i]))
    }

    /// The unique member through `x`: `B(x)·A − A(x)·B`.
    pub fn member_through(&self, x: Pt, tol: &Tol) -> Result<ImplicitCurve> {
        let (ax, bx) = (self.a.eval(x), self.b.eval(x));
        let scale = 1.0 + x.norm2();
        let near_base = self
            .points
            .iter()
            .any(|p| p.dist(x) <= tol.eps_abs * self.diameter);
        if near_base || (ax.abs() + bx.abs() <= tol.eps_abs * scale) {
            return Err(Error::BasePointHit);
        }
        self.member(bx, -ax)
    }

    /// The three reducible members in partition order.
    pub fn degenerate_members(&self) -> Result<[ImplicitCurve; 3]> {
        let pair = |p: &[[usize; 2]; 2]| -> Result<ImplicitCurve> {
            let l1 = ImplicitCurve::line_through(self.points[p[0][0]], self.points[p[0][1]])?;
            let l2 = ImplicitCurve::line_through(self.points[p[1][0]], self.points[p[1][1]])?;
            ImplicitCurve::line_product(&l1, &l2)
        };
        Ok([self.a, self.b, pair(&PARTITIONS[2])?])
    }

    /// Pencil parameters `(μ, ν)` of the three reducible members; the third
    /// is found as the member through a non-base point of the line `p1p4`.
    pub fn degenerate_parameters(&self) -> [(f64, f64); 3] {
        let m = (self.points[0] + self.points[3]) * 0.5;
        [(1.0, 0.0), (0.0, 1.0), (self.b.eval(m), -self.a.eval(m))]
    }

    /// Tangency function along a curve: `B·⟨∇A, γ'⟩ − A·⟨∇B, γ'⟩`, which
    /// vanishes exactly where the curve is tangent to the member through
    /// `γ(t)`.
    pub fn tangency_function(&self, p: Pt, v: Pt) -> f64 {
        self.b.eval(p) * self.a.grad(p).dot(v) - self.a.eval(p) * self.b.grad(p).dot(v)
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }
}

/// Intersection of the two lines of one partition of the four points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalPoint {
    pub partition: [[usize; 2]; 2],
    pub label: String,
    /// `None` when the two lines are parallel within tolerance.
    pub point: Option<Pt>,
    pub at_infinity: bool,
}

/// Affine intersections of the three line pairs through four points.
/// Near-parallel pairs are flagged as lying at infinity.
pub fn diagonal_points(points: &[Pt; 4], tol: &Tol) -> Result<Vec<DiagonalPoint>> {
    check_quad(points, tol)?;
    PARTITIONS
        .iter()
        .map(|p| {
            let l1 = ImplicitCurve::line_through(points[p[0][0]], points[p[0][1]])?;
            let l2 = ImplicitCurve::line_through(points[p[1][0]], points[p[1][1]])?;
            let ([a1, b1, c1], [a2, b2, c2]) = match (l1, l2) {
                (ImplicitCurve::Line(u), ImplicitCurve::Line(v)) => (u, v),
                _ => unreachable!("line_through returns lines"),
            };
            let den = a1 * b2 - a2 * b1;
            // Normals are unit after canonical scaling only up to the offset
            // term, so measure the angle explicitly.
            let sin = den.abs() / (a1.hypot(b1) * a2.hypot(b2));
            let point = (sin >= PARALLEL_ANGLE)
                .then(|| Pt::new((b1 * c2 - b2 * c1) / den, (c1 * a2 - c2 * a1) / den));
            Ok(DiagonalPoint {
                partition: *p,
                label: partition_label(p),
                at_infinity: point.is_none(),
                point,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> [Pt; 4] {
        [
            Pt::new(0.0, 0.0),
            Pt::new(1.0, 0.0),
            Pt::new(1.0, 1.0),
            Pt::new(0.0, 1.0),
        ]
    }

    #[test]
    fn square_basis() {
        let (a, b) = pencil_basis(&square(), &Tol::default()).unwrap();
        let want_a = ImplicitCurve::conic([0.0, 0.0, 1.0, 0.0, -1.0, 0.0]).unwrap();
        // (x − y)(x + y − 1) = x² − y² − x + y
        let want_b = ImplicitCurve::conic([1.0, 0.0, -1.0, -1.0, 1.0, 0.0]).unwrap();
        assert!(a.coeff_distance(&want_a) < 1e-15);
        assert!(b.coeff_distance(&want_b) < 1e-15);
    }

    #[test]
    fn collinear_rejected() {
        let pts = [
            Pt::new(0.0, 0.0),
            Pt::new(1.0, 0.0),
            Pt::new(2.0, 0.0),
            Pt::new(0.0, 1.0),
        ];
        assert!(matches!(
            pencil_basis(&pts, &Tol::default()),
            Err(Error::DegenerateConfig(_))
        ));
    }

    #[test]
    fn member_through_extra_point() {
        let tol = Tol::default();
        let pen = Pencil::new(square(), &tol).unwrap();
        let x = Pt::new(2.0, 0.0);
        let q = pen.member_through(x, &tol).unwrap();
        assert!(q.eval(x).abs() < 1e-12);
        for p in square() {
            assert!(q.eval(p).abs() < 1e-12);
        }
        // A point on y = 0 lies on the reducible member A.
        let q = pen.member_through(Pt::new(0.4, 0.0), &tol).unwrap();
        assert!(q.coeff_distance(&pen.a) < 1e-12);
        assert!(matches!(
            pen.member_through(Pt::new(1.0, 1.0), &tol),
            Err(Error::BasePointHit)
        ));
    }

    #[test]
    fn square_diagonal_points() {
        let d = diagonal_points(&square(), &Tol::default()).unwrap();
        let affine: Vec<Pt> = d.iter().filter_map(|x| x.point).collect();
        assert_eq!(affine.len(), 1);
        assert!(affine[0].dist(Pt::new(0.5, 0.5)) < 1e-15);
        assert_eq!(d.iter().filter(|x| x.at_infinity).count(), 2);
        assert_eq!(d[1].label, "13|24");
    }

    #[test]
    fn degenerate_members_vanish_discriminant() {
        let pen = Pencil::new(square(), &Tol::default()).unwrap();
        let members = pen.degenerate_members().unwrap();
        for ((mu, nu), want) in pen.degenerate_parameters().iter().zip(&members) {
            let q = pen.member(*mu, *nu).unwrap();
            assert!(q.discriminant().abs() < 1e-14);
            assert!(q.coeff_distance(want) < 1e-12);
        }
    }
}
