use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A point (or free vector) of the real plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
}

impl Pt {
    pub const ORIGIN: Pt = Pt { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Pt { x, y }
    }

    #[inline]
    pub fn polar(r: f64, angle: f64) -> Self {
        Pt::new(r * angle.cos(), r * angle.sin())
    }

    #[inline]
    pub fn dot(self, o: Pt) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product, i.e. `det[self, o]`.
    #[inline]
    pub fn cross(self, o: Pt) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, o: Pt) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Pt {
        Pt::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Pt {
        self / self.norm()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Pt, s: f64) -> Pt {
        self + (o - self) * s
    }

    /// Rotate counterclockwise by `angle` radians about the origin.
    pub fn rotated(self, angle: f64) -> Pt {
        let (s, c) = angle.sin_cos();
        Pt::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Pt {
    type Output = Pt;
    #[inline]
    fn add(self, o: Pt) -> Pt {
        Pt::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Pt {
    #[inline]
    fn add_assign(&mut self, o: Pt) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Pt {
    type Output = Pt;
    #[inline]
    fn sub(self, o: Pt) -> Pt {
        Pt::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Pt {
    type Output = Pt;
    #[inline]
    fn neg(self) -> Pt {
        Pt::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Pt {
    type Output = Pt;
    #[inline]
    fn mul(self, s: f64) -> Pt {
        Pt::new(self.x * s, self.y * s)
    }
}

impl Mul<Pt> for f64 {
    type Output = Pt;
    #[inline]
    fn mul(self, p: Pt) -> Pt {
        p * self
    }
}

impl Div<f64> for Pt {
    type Output = Pt;
    #[inline]
    fn div(self, s: f64) -> Pt {
        Pt::new(self.x / s, self.y / s)
    }
}

impl From<[f64; 2]> for Pt {
    fn from([x, y]: [f64; 2]) -> Self {
        Pt::new(x, y)
    }
}

impl From<Pt> for [f64; 2] {
    fn from(p: Pt) -> Self {
        [p.x, p.y]
    }
}

// Points travel through JSON as `[x, y]`.
impl Serialize for Pt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(serde::de::Error::custom("point coordinates must be finite"));
        }
        Ok(Pt::new(x, y))
    }
}

/// Orientation of the triangle `(a, b, c)`: `+1` counterclockwise, `-1`
/// clockwise, `0` collinear within `eps_abs` relative to the squared input
/// magnitude.
pub fn orient2d(a: Pt, b: Pt, c: Pt, eps_abs: f64) -> i8 {
    let det = (b - a).cross(c - a);
    let scale = [a, b, c]
        .iter()
        .map(|p| p.norm2())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    if det.abs() <= eps_abs * scale {
        0
    } else if det > 0.0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    #[test]
    fn orient_examples() {
        let o = Pt::ORIGIN;
        assert_eq!(orient2d(o, Pt::new(1.0, 0.0), Pt::new(0.0, 1.0), EPS), 1);
        assert_eq!(orient2d(o, Pt::new(1.0, 0.0), Pt::new(2.0, 0.0), EPS), 0);
        assert_eq!(orient2d(o, Pt::new(0.0, 1.0), Pt::new(1.0, 0.0), EPS), -1);
    }

    #[test]
    fn orient_near_collinear_is_zero() {
        let o = Pt::ORIGIN;
        assert_eq!(orient2d(o, Pt::new(1.0, 0.0), Pt::new(2.0, 1e-12), EPS), 0);
        assert_eq!(orient2d(o, Pt::new(1.0, 0.0), Pt::new(2.0, 1e-6), EPS), 1);
    }

    #[test]
    fn json_shape() {
        let p = Pt::new(0.5, -2.0);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[0.5,-2.0]");
        let q: Pt = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rotation_and_perp() {
        let p = Pt::new(1.0, 0.0);
        let r = p.rotated(std::f64::consts::FRAC_PI_2);
        assert!((r - p.perp()).norm() < 1e-15);
    }
}
