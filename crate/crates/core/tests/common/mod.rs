//! Independent oracles and random generators shared by the integration tests.
//! Nothing here calls the library's index, root-finding or pencil code.
#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::Rng;
use tangent_count::curve::{ClosedCurve, ImmersedCurve, Jet};
use tangent_count::kernel::{Pt, Tol};

pub const ORACLE_N: usize = 1 << 15;

/// Total turning of the velocity, by summing wrapped angle increments.
pub fn whitney_oracle<C: ClosedCurve + ?Sized>(c: &C) -> i64 {
    let v: Vec<Pt> = (0..ORACLE_N)
        .map(|i| c.jet(i as f64 / ORACLE_N as f64).d1)
        .collect();
    turns(&v)
}

/// Winding of the polyline around `p`.
pub fn winding_oracle<C: ClosedCurve + ?Sized>(c: &C, p: Pt) -> i64 {
    let v: Vec<Pt> = (0..ORACLE_N)
        .map(|i| c.point(i as f64 / ORACLE_N as f64) - p)
        .collect();
    turns(&v)
}

fn turns(v: &[Pt]) -> i64 {
    let mut total = 0.0;
    for i in 0..v.len() {
        let (a, b) = (v[i], v[(i + 1) % v.len()]);
        total += a.cross(b).atan2(a.dot(b));
    }
    (total / TAU).round() as i64
}

fn intersect(a: Pt, b: Pt, c: Pt, d: Pt) -> Option<Pt> {
    let (r, s) = (b - a, d - c);
    let den = r.cross(s);
    if den.abs() < 1e-6 * r.norm() * s.norm() {
        return None;
    }
    Some(a + r * ((c - a).cross(s) / den))
}

/// Affine diagonal points of a quadrilateral: intersections of the two
/// lines of each line-pair member of the pencil.
pub fn diagonal_oracle(q: &[Pt; 4]) -> Vec<Pt> {
    [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
        .iter()
        .filter_map(|&(i, j, k, l)| intersect(q[i], q[j], q[k], q[l]))
        .collect()
}

/// `2 (ind Γ − Σ ind_corner Γ + Σ ind_diag Γ)` for a conic configuration.
pub fn conic_formula_oracle<C: ClosedCurve + ?Sized>(q: &[Pt; 4], c: &C) -> i64 {
    let mut n = whitney_oracle(c);
    for p in q {
        n -= winding_oracle(c, *p);
    }
    for p in diagonal_oracle(q) {
        n += winding_oracle(c, p);
    }
    2 * n
}

/// Signed tangent-line count by sign changes of `(γ − p) × γ'` on a fine
/// grid. At a tangent line the curve lies on the side given by its
/// curvature, so `τ = sign(γ' × γ'')`.
pub fn line_count_oracle<C: ClosedCurve + ?Sized>(c: &C, p: Pt) -> i64 {
    let f = |j: &Jet| (j.p - p).cross(j.d1);
    let jets: Vec<Jet> = (0..ORACLE_N)
        .map(|i| c.jet(i as f64 / ORACLE_N as f64))
        .collect();
    let mut n = 0;
    for i in 0..ORACLE_N {
        let (a, b) = (&jets[i], &jets[(i + 1) % ORACLE_N]);
        if f(a).signum() != f(b).signum() {
            let k = a.d1.cross(a.d2) + b.d1.cross(b.d2);
            n += k.signum() as i64;
        }
    }
    n
}

/// `τ` from first principles: the curve lies on the side where
/// `(Q ∘ γ)''` points, so `n = sign((Q∘γ)'') ∇Q` and `τ = sign(γ' × n)`.
pub fn tau_oracle(coeffs: [f64; 6], j: &Jet) -> i8 {
    let [a, b, c, d, e, _] = coeffs;
    let g = Pt::new(
        2.0 * a * j.p.x + b * j.p.y + d,
        b * j.p.x + 2.0 * c * j.p.y + e,
    );
    let v = j.d1;
    let second = 2.0 * (a * v.x * v.x + b * v.x * v.y + c * v.y * v.y) + g.dot(j.d2);
    let n = g * second.signum();
    j.d1.cross(n).signum() as i8
}

/// Random epicycle curve `Σ a_k e^{i n_k t}` through a periodic spline;
/// the Whitney index varies with the frequencies.
pub fn random_curve<R: Rng>(rng: &mut R, tol: &Tol) -> ImmersedCurve {
    loop {
        let terms: Vec<(f64, f64, f64)> = (0..3)
            .map(|k| {
                let freq = if k == 0 {
                    if rng.gen_bool(0.5) {
                        1.0
                    } else {
                        -1.0
                    }
                } else {
                    f64::from(rng.gen_range(-4i32..=4))
                };
                let amp = if k == 0 {
                    1.0
                } else {
                    rng.gen_range(0.0..0.45)
                };
                (freq, amp, rng.gen_range(0.0..TAU))
            })
            .collect();
        let n = 160;
        let samples: Vec<Pt> = (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                terms
                    .iter()
                    .fold(Pt::ORIGIN, |s, (f, a, ph)| s + Pt::polar(*a, f * t + ph))
            })
            .collect();
        if let Ok(c) = ImmersedCurve::spline(samples) {
            if c.check_immersed(tol).is_ok() {
                return c;
            }
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R, half: f64) -> Pt {
    Pt::new(rng.gen_range(-half..half), rng.gen_range(-half..half))
}

/// Random quadrilateral with no near-collinear triple and no close pair.
pub fn random_quad<R: Rng>(rng: &mut R, half: f64) -> [Pt; 4] {
    'outer: loop {
        let q = [0; 4].map(|_| random_point(rng, half));
        for i in 0..4 {
            for j in i + 1..4 {
                if q[i].dist(q[j]) < 0.3 * half {
                    continue 'outer;
                }
                for k in j + 1..4 {
                    if (q[j] - q[i]).cross(q[k] - q[i]).abs() < 0.08 * half * half {
                        continue 'outer;
                    }
                }
            }
        }
        return q;
    }
}

/// `γ ∘ φ` with `φ(t) = t + a sin(2πt) / 2π`, an orientation-preserving
/// reparametrization for `|a| < 1`.
pub struct Reparam<'a, C: ?Sized> {
    pub inner: &'a C,
    pub a: f64,
}

impl<C: ClosedCurve + ?Sized> ClosedCurve for Reparam<'_, C> {
    fn jet(&self, t: f64) -> Jet {
        let phi = t + self.a * (TAU * t).sin() / TAU;
        let d_phi = 1.0 + self.a * (TAU * t).cos();
        let dd_phi = -self.a * TAU * (TAU * t).sin();
        let j = self.inner.jet(phi.rem_euclid(1.0));
        Jet {
            p: j.p,
            d1: j.d1 * d_phi,
            d2: j.d2 * (d_phi * d_phi) + j.d1 * dd_phi,
        }
    }

    fn diameter(&self) -> f64 {
        self.inner.diameter()
    }
}
