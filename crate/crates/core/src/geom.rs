//! Plane vectors, lines and axis-aligned boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point or vector of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", try_from = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Euclidean length.
    pub fn hypot(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn rot90(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Euclidean unit vector in the same direction.
    ///
    /// Returns `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let h = self.hypot();
        if h > 0.0 {
            Some(self / h)
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> [f64; 2] {
        [v.x, v.y]
    }
}

impl TryFrom<[f64; 2]> for Vec2 {
    type Error = Error;

    fn try_from(a: [f64; 2]) -> Result<Vec2> {
        let v = Vec2::new(a[0], a[1]);
        if !v.is_finite() {
            return Err(Error::NonFinite("vector component"));
        }
        Ok(v)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, t: f64) -> Vec2 {
        Vec2::new(self.x * t, self.y * t)
    }
}

impl std::ops::Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, t: f64) -> Vec2 {
        Vec2::new(self.x / t, self.y / t)
    }
}

/// A straight line given by a base point and a nonzero direction.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(try_from = "LineRepr", into = "LineRepr")]
pub struct Line {
    point: Vec2,
    direction: Vec2,
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    point: [f64; 2],
    direction: [f64; 2],
}

impl From<Line> for LineRepr {
    fn from(l: Line) -> LineRepr {
        LineRepr {
            point: l.point.into(),
            direction: l.direction.into(),
        }
    }
}

impl TryFrom<LineRepr> for Line {
    type Error = Error;
    fn try_from(r: LineRepr) -> Result<Line> {
        Line::new(Vec2::try_from(r.point)?, Vec2::try_from(r.direction)?)
    }
}

impl Line {
    pub fn new(point: Vec2, direction: Vec2) -> Result<Line> {
        if !point.is_finite() || !direction.is_finite() {
            return Err(Error::NonFinite("line"));
        }
        if direction.is_zero() {
            return Err(Error::ZeroVector("line direction"));
        }
        Ok(Line { point, direction })
    }

    /// Line through two distinct points.
    pub fn through(a: Vec2, b: Vec2) -> Result<Line> {
        Line::new(a, b - a)
    }

    pub fn point(&self) -> Vec2 {
        self.point
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    /// Euclidean unit normal (the direction rotated by 90 degrees).
    pub fn unit_normal(&self) -> Vec2 {
        self.direction
            .rot90()
            .normalized()
            .expect("nonzero direction")
    }

    /// Signed Euclidean offset of `z` from the line, in units of the unit normal.
    pub fn signed_offset(&self, z: Vec2) -> f64 {
        self.unit_normal().dot(z - self.point)
    }

    pub fn contains(&self, z: Vec2, tol: f64) -> bool {
        self.signed_offset(z).abs() <= tol
    }
}

/// Axis-aligned rectangle.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(into = "[[f64; 2]; 2]", try_from = "[[f64; 2]; 2]")]
pub struct BBox {
    pub min: Vec2,
    pub max: Vec2,
}

impl BBox {
    pub fn new(min: Vec2, max: Vec2) -> Result<BBox> {
        if !(min.x < max.x && min.y < max.y) {
            return Err(Error::EmptyBBox);
        }
        Ok(BBox { min, max })
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn contains(&self, z: Vec2) -> bool {
        z.x >= self.min.x && z.x <= self.max.x && z.y >= self.min.y && z.y <= self.max.y
    }
}

impl From<BBox> for [[f64; 2]; 2] {
    fn from(b: BBox) -> [[f64; 2]; 2] {
        [b.min.into(), b.max.into()]
    }
}

impl TryFrom<[[f64; 2]; 2]> for BBox {
    type Error = Error;
    fn try_from(a: [[f64; 2]; 2]) -> Result<BBox> {
        BBox::new(Vec2::try_from(a[0])?, Vec2::try_from(a[1])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rot90_is_counterclockwise() {
        let v = Vec2::new(1.0, 0.0).rot90();
        assert_eq!(v, Vec2::new(0.0, 1.0));
    }

    #[test]
    fn line_rejects_zero_direction() {
        assert!(Line::new(Vec2::ZERO, Vec2::ZERO).is_err());
    }

    #[test]
    fn signed_offset_of_x_axis() {
        let l = Line::new(Vec2::ZERO, Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!(l.signed_offset(Vec2::new(3.0, 2.0)), 2.0);
        assert_eq!(l.signed_offset(Vec2::new(3.0, -2.0)), -2.0);
    }

    #[test]
    fn bbox_rejects_empty() {
        assert!(BBox::new(Vec2::new(1.0, 0.0), Vec2::new(1.0, 2.0)).is_err());
    }
}
