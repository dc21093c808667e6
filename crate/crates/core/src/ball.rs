//! Unit balls of normed planes and the primitive metric queries they induce:
//! gauge, support function, contact faces, distance to a line, tangency of
//! homothetic disks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;

/// The exponent of an l_p ball. Infinity is a distinguished tag, never a
/// float in arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Origin-symmetric convex polygon with counterclockwise vertices.
#[derive(Clone, Debug)]
pub struct PolygonBall {
    vertices: Vec<Vec2>,
    /// Edge functionals f_e with gauge(v) = max_e <f_e, v>.
    functionals: Vec<Vec2>,
}

const SYMMETRY_TOL: f64 = 1e-9;

impl PolygonBall {
    /// Validates vertex count, convexity, symmetry and orientation.
    /// Clockwise input is accepted and reversed.
    pub fn new(mut vertices: Vec<Vec2>) -> Result<PolygonBall> {
        if vertices.len() < 4 {
            return Err(Error::InvalidBall(format!(
                "polygon needs at least 4 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("polygon vertex"));
        }
        let area2: f64 = (0..vertices.len())
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % vertices.len()];
                a.cross(b)
            })
            .sum();
        if area2 == 0.0 {
            return Err(Error::InvalidBall("degenerate polygon".into()));
        }
        if area2 < 0.0 {
            vertices.reverse();
        }

        let n = vertices.len();
        let scale = vertices.iter().map(|v| v.hypot()).fold(0.0, f64::max);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let turn = (b - a).cross(c - b);
            if turn <= scale * scale * 1e-12 {
                return Err(Error::InvalidBall(format!(
                    "polygon is not strictly convex at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        for v in &vertices {
            let has_antipode = vertices
                .iter()
                .any(|w| (*w + *v).hypot() <= SYMMETRY_TOL * (1.0 + scale));
            if !has_antipode {
                return Err(Error::InvalidBall(format!(
                    "polygon is not origin-symmetric (vertex ({}, {}) has no antipode)",
                    v.x, v.y
                )));
            }
        }

        let mut functionals = Vec::with_capacity(n);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let edge = b - a;
            // Outward normal of a CCW edge.
            let normal = Vec2::new(edge.y, -edge.x);
            let c = normal.dot(a);
            if c <= 0.0 {
                return Err(Error::InvalidBall("origin is not strictly inside".into()));
            }
            functionals.push(normal / c);
        }
        Ok(PolygonBall {
            vertices,
            functionals,
        })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    fn gauge(&self, v: Vec2) -> f64 {
        self.functionals
            .iter()
            .map(|f| f.dot(v))
            .fold(0.0, f64::max)
    }
}

/// The norm-defining body of the plane.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "BallRepr", into = "BallRepr")]
pub enum UnitBall {
    Lp(Exponent),
    Polygon(PolygonBall),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum BallRepr {
    Lp { p: PRepr },
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PRepr {
    Number(f64),
    Tag(String),
}

impl From<UnitBall> for BallRepr {
    fn from(b: UnitBall) -> BallRepr {
        match b {
            UnitBall::Lp(Exponent::Finite(p)) => BallRepr::Lp {
                p: PRepr::Number(p),
            },
            UnitBall::Lp(Exponent::Infinity) => BallRepr::Lp {
                p: PRepr::Tag("inf".into()),
            },
            UnitBall::Polygon(poly) => BallRepr::Polygon {
                vertices: poly.vertices.iter().map(|v| [v.x, v.y]).collect(),
            },
        }
    }
}

impl TryFrom<BallRepr> for UnitBall {
    type Error = Error;
    fn try_from(r: BallRepr) -> Result<UnitBall> {
        match r {
            BallRepr::Lp {
                p: PRepr::Number(p),
            } => UnitBall::lp(p),
            BallRepr::Lp { p: PRepr::Tag(t) } => match t.as_str() {
                "inf" | "infinity" | "oo" => Ok(UnitBall::lp_infinity()),
                other => Err(Error::InvalidBall(format!(
                    "unknown exponent tag {other:?}"
                ))),
            },
            BallRepr::Polygon { vertices } => {
                let vs = vertices
                    .into_iter()
                    .map(Vec2::try_from)
                    .collect::<Result<Vec<_>>>()?;
                UnitBall::polygon(vs)
            }
        }
    }
}

/// Strict convexity and smoothness of the ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BallProperties {
    pub strictly_convex: bool,
    pub smooth: bool,
}

/// The set of boundary points attaining a support functional.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ContactFace {
    Point(Vec2),
    Segment(Vec2, Vec2),
}

impl ContactFace {
    pub fn midpoint(&self) -> Vec2 {
        match *self {
            ContactFace::Point(p) => p,
            ContactFace::Segment(a, b) => (a + b) * 0.5,
        }
    }

    pub fn scale(&self, t: f64) -> ContactFace {
        match *self {
            ContactFace::Point(p) => ContactFace::Point(p * t),
            ContactFace::Segment(a, b) => ContactFace::Segment(a * t, b * t),
        }
    }

    pub fn translate(&self, by: Vec2) -> ContactFace {
        match *self {
            ContactFace::Point(p) => ContactFace::Point(p + by),
            ContactFace::Segment(a, b) => ContactFace::Segment(a + by, b + by),
        }
    }
}

/// How two homothetic disks touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tangency {
    External,
    Internal,
    None,
}

impl UnitBall {
    pub fn lp(p: f64) -> Result<UnitBall> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidBall(format!(
                "lp exponent must satisfy p >= 1, got {p}"
            )));
        }
        Ok(UnitBall::Lp(Exponent::Finite(p)))
    }

    pub fn lp_infinity() -> UnitBall {
        UnitBall::Lp(Exponent::Infinity)
    }

    pub fn euclidean() -> UnitBall {
        UnitBall::Lp(Exponent::Finite(2.0))
    }

    pub fn polygon(vertices: Vec<Vec2>) -> Result<UnitBall> {
        Ok(UnitBall::Polygon(PolygonBall::new(vertices)?))
    }

    /// Regular origin-symmetric polygon with `sides` vertices (even, >= 4),
    /// circumradius 1, first vertex at angle `phase`.
    pub fn regular_polygon(sides: usize, phase: f64) -> Result<UnitBall> {
        if sides < 4 || !sides.is_multiple_of(2) {
            return Err(Error::InvalidBall(
                "regular polygon needs an even number >= 4 of vertices".into(),
            ));
        }
        let vs = (0..sides)
            .map(|k| {
                let a = phase + 2.0 * std::f64::consts::PI * k as f64 / sides as f64;
                Vec2::new(a.cos(), a.sin())
            })
            .collect();
        UnitBall::polygon(vs)
    }

    pub fn describe(&self) -> String {
        match self {
            UnitBall::Lp(p) => format!("lp:{p}"),
            UnitBall::Polygon(poly) => format!("polygon:{}", poly.vertices.len()),
        }
    }

    /// The gauge (Minkowski functional) of the ball: the norm of `v`.
    pub fn norm(&self, v: Vec2) -> f64 {
        match self {
            UnitBall::Lp(Exponent::Infinity) => v.x.abs().max(v.y.abs()),
            UnitBall::Lp(Exponent::Finite(p)) => lp_norm(v, *p),
            UnitBall::Polygon(poly) => poly.gauge(v),
        }
    }

    pub fn distance(&self, a: Vec2, b: Vec2) -> f64 {
        self.norm(a - b)
    }

    /// Support function h(n) = max over the ball of <n, .>.
    pub fn support(&self, n: Vec2) -> Result<f64> {
        if n.is_zero() {
            return Err(Error::ZeroVector("support normal"));
        }
        Ok(match self {
            // Dual exponent: h_p = l_q norm, 1/p + 1/q = 1.
            UnitBall::Lp(Exponent::Infinity) => n.x.abs() + n.y.abs(),
            UnitBall::Lp(Exponent::Finite(p)) if *p == 1.0 => n.x.abs().max(n.y.abs()),
            UnitBall::Lp(Exponent::Finite(p)) => lp_norm(n, dual_exponent(*p)),
            UnitBall::Polygon(poly) => poly
                .vertices
                .iter()
                .map(|v| v.dot(n))
                .fold(f64::NEG_INFINITY, f64::max),
        })
    }

    /// The boundary point in direction `dir` (gauge-normalized).
    pub fn boundary_point(&self, dir: Vec2) -> Result<Vec2> {
        if dir.is_zero() {
            return Err(Error::ZeroVector("boundary direction"));
        }
        Ok(dir / self.norm(dir))
    }

    /// Argmax set of <n, .> over the ball.
    pub fn contact_face(&self, n: Vec2) -> Result<ContactFace> {
        if n.is_zero() {
            return Err(Error::ZeroVector("contact normal"));
        }
        const REL: f64 = 1e-12;
        Ok(match self {
            UnitBall::Lp(Exponent::Finite(p)) if *p > 1.0 => {
                // Unique maximizer sign(n_i)|n_i|^{q-1} / ||n||_q^{q-1}.
                let q = dual_exponent(*p);
                let w = Vec2::new(
                    n.x.abs().powf(q - 1.0) * n.x.signum(),
                    n.y.abs().powf(q - 1.0) * n.y.signum(),
                );
                ContactFace::Point(w / lp_norm(w, *p))
            }
            UnitBall::Lp(Exponent::Finite(_)) => {
                // Cross-polytope: vertex unless |n_x| = |n_y|.
                let (ax, ay) = (n.x.abs(), n.y.abs());
                let scale = ax.max(ay);
                if (ax - ay).abs() <= REL * scale {
                    let a = Vec2::new(n.x.signum(), 0.0);
                    let b = Vec2::new(0.0, n.y.signum());
                    ContactFace::Segment(a, b)
                } else if ax > ay {
                    ContactFace::Point(Vec2::new(n.x.signum(), 0.0))
                } else {
                    ContactFace::Point(Vec2::new(0.0, n.y.signum()))
                }
            }
            UnitBall::Lp(Exponent::Infinity) => {
                // Square: vertex unless n is axis-aligned.
                let (ax, ay) = (n.x.abs(), n.y.abs());
                let scale = ax.max(ay);
                if ax <= REL * scale {
                    let s = n.y.signum();
                    ContactFace::Segment(Vec2::new(-1.0, s), Vec2::new(1.0, s))
                } else if ay <= REL * scale {
                    let s = n.x.signum();
                    ContactFace::Segment(Vec2::new(s, -1.0), Vec2::new(s, 1.0))
                } else {
                    ContactFace::Point(Vec2::new(n.x.signum(), n.y.signum()))
                }
            }
            UnitBall::Polygon(poly) => {
                let vals: Vec<f64> = poly.vertices.iter().map(|v| v.dot(n)).collect();
                let best = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let tol = REL * (best.abs() + n.hypot());
                let count = poly.vertices.len();
                let attaining: Vec<usize> = (0..count).filter(|&i| vals[i] >= best - tol).collect();
                if attaining.len() == 1 {
                    ContactFace::Point(poly.vertices[attaining[0]])
                } else {
                    // Strict polygonal convexity allows at most one full edge.
                    let i = attaining
                        .iter()
                        .copied()
                        .find(|&i| attaining.contains(&((i + 1) % count)))
                        .unwrap_or(attaining[0]);
                    ContactFace::Segment(poly.vertices[i], poly.vertices[(i + 1) % count])
                }
            }
        })
    }

    /// Distance from `z` to the line in this norm, in closed form
    /// |<n, z - p>| / h(n).
    pub fn dist_point_line(&self, z: Vec2, l: &crate::geom::Line) -> f64 {
        let n = l.unit_normal();
        let h = self.support(n).expect("unit normal is nonzero");
        (n.dot(z - l.point())).abs() / h
    }

    /// Contact set of the disk `z + r K` with a tangent line.
    pub fn touch_face_with_line(
        &self,
        z: Vec2,
        r: f64,
        l: &crate::geom::Line,
        tol: f64,
    ) -> Result<ContactFace> {
        let defect = (self.dist_point_line(z, l) - r).abs();
        if defect > tol {
            return Err(Error::NotTangent(defect));
        }
        let n = l.unit_normal();
        let side = n.dot(z - l.point());
        let toward_line = if side > 0.0 { -n } else { n };
        Ok(self.contact_face(toward_line)?.scale(r).translate(z))
    }

    /// Tangency classification for two homothets of this ball.
    pub fn disks_tangency(
        &self,
        z1: Vec2,
        r1: f64,
        z2: Vec2,
        r2: f64,
        tol: f64,
    ) -> Result<Tangency> {
        if r1 <= 0.0 || r2 <= 0.0 {
            return Err(Error::NonpositiveRadius);
        }
        let d = self.norm(z1 - z2);
        if (d - (r1 + r2)).abs() <= tol {
            Ok(Tangency::External)
        } else if (d - (r1 - r2).abs()).abs() <= tol {
            Ok(Tangency::Internal)
        } else {
            Ok(Tangency::None)
        }
    }

    pub fn properties(&self) -> BallProperties {
        match self {
            UnitBall::Lp(Exponent::Finite(p)) if *p > 1.0 => BallProperties {
                strictly_convex: true,
                smooth: true,
            },
            _ => BallProperties {
                strictly_convex: false,
                smooth: false,
            },
        }
    }
}

pub fn dual_exponent(p: f64) -> f64 {
    debug_assert!(p > 1.0);
    p / (p - 1.0)
}

/// l_p norm with max-scaling for stability.
fn lp_norm(v: Vec2, p: f64) -> f64 {
    let (ax, ay) = (v.x.abs(), v.y.abs());
    if p == 1.0 {
        return ax + ay;
    }
    if p == 2.0 {
        return ax.hypot(ay);
    }
    let m = ax.max(ay);
    if m == 0.0 {
        return 0.0;
    }
    m * ((ax / m).powf(p) + (ay / m).powf(p)).powf(1.0 / p)
}
