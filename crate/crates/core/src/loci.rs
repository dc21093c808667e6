//! Loci of the normed plane as signed residual functions: ellipses and
//! hyperbolas by foci or leading circle, the leading-line conics, bisectors
//! and d-segments.

use serde::{Deserialize, Serialize};

use crate::ball::{Tangency, UnitBall};
use crate::error::{Error, Result};
use crate::geom::{Line, Vec2};

/// Tagged description of a locus.
///
/// Conventions: a leading circle has radius `r = 2a` and is always centered
/// at the origin; translate the scene rather than the circle. For the
/// leading-line conic, `gamma > 1` gives an ellipse, `gamma = 1` a parabola
/// and `gamma < 1` a hyperbola.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConicSpec {
    EllipseFoci { f1: Vec2, f2: Vec2, a: f64 },
    EllipseLeadingCircle { r: f64, focus: Vec2 },
    HyperbolaFoci { f1: Vec2, f2: Vec2, a: f64 },
    HyperbolaLeadingCircle { r: f64, focus: Vec2 },
    LeadingLine { focus: Vec2, line: Line, gamma: f64 },
    Bisector { x: Vec2, y: Vec2 },
    DSegment { x: Vec2, y: Vec2 },
}

/// Classification of a point against a locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Interior,
    On,
    Exterior,
}

/// Shape of a degenerate locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneracy {
    Nondegenerate,
    DSegmentSet,
    BisectorSet,
    RaysOrCones,
    Empty,
}

impl Degeneracy {
    pub fn tag(&self) -> &'static str {
        match self {
            Degeneracy::Nondegenerate => "nondegenerate",
            Degeneracy::DSegmentSet => "d-segment set",
            Degeneracy::BisectorSet => "bisector set",
            Degeneracy::RaysOrCones => "rays or cones",
            Degeneracy::Empty => "empty",
        }
    }
}

impl ConicSpec {
    /// Hard invariants that do not depend on degeneracy classification.
    pub fn validate(&self, ball: &UnitBall) -> Result<()> {
        let check_distinct = |a: Vec2, b: Vec2, what: &str| {
            if (a - b).is_zero() {
                Err(Error::InvalidSpec(format!("{what} must be distinct")))
            } else {
                Ok(())
            }
        };
        match self {
            ConicSpec::EllipseFoci { f1, f2, a } => {
                check_distinct(*f1, *f2, "ellipse foci")?;
                if *a <= 0.0 || !a.is_finite() {
                    return Err(Error::InvalidSpec("ellipse needs a > 0".into()));
                }
            }
            ConicSpec::EllipseLeadingCircle { r, focus } => {
                if *r <= 0.0 || !r.is_finite() {
                    return Err(Error::InvalidSpec("leading circle needs r > 0".into()));
                }
                // A focus on the circle itself degenerates; rejected.
                if ball.norm(*focus) >= *r {
                    return Err(Error::InvalidSpec(
                        "ellipse focus must be strictly inside the leading circle".into(),
                    ));
                }
            }
            ConicSpec::HyperbolaFoci { f1, f2, a } => {
                check_distinct(*f1, *f2, "hyperbola foci")?;
                if *a < 0.0 || !a.is_finite() {
                    return Err(Error::InvalidSpec("hyperbola needs a >= 0".into()));
                }
            }
            ConicSpec::HyperbolaLeadingCircle { r, focus } => {
                if *r <= 0.0 || !r.is_finite() {
                    return Err(Error::InvalidSpec("leading circle needs r > 0".into()));
                }
                if ball.norm(*focus) <= *r {
                    return Err(Error::InvalidSpec(
                        "hyperbola focus must be exterior to the leading circle".into(),
                    ));
                }
            }
            ConicSpec::LeadingLine { focus, line, gamma } => {
                if !gamma.is_finite() || *gamma <= 0.0 {
                    return Err(Error::InvalidSpec(
                        "leading-line conic needs gamma > 0".into(),
                    ));
                }
                if line.contains(*focus, 1e-12) {
                    return Err(Error::InvalidSpec(
                        "focus must not lie on the leading line".into(),
                    ));
                }
            }
            ConicSpec::Bisector { x, y } | ConicSpec::DSegment { x, y } => {
                check_distinct(*x, *y, "base points")?;
            }
        }
        Ok(())
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ConicSpec::EllipseFoci { .. } => "ellipse_foci",
            ConicSpec::EllipseLeadingCircle { .. } => "ellipse_leading_circle",
            ConicSpec::HyperbolaFoci { .. } => "hyperbola_foci",
            ConicSpec::HyperbolaLeadingCircle { .. } => "hyperbola_leading_circle",
            ConicSpec::LeadingLine { .. } => "leading_line",
            ConicSpec::Bisector { .. } => "bisector",
            ConicSpec::DSegment { .. } => "d_segment",
        }
    }
}

/// Signed residual F(z) of the locus.
///
/// Sign conventions (Interior where stated):
/// - ellipse by foci: ||z-f1|| + ||z-f2|| - 2a, interior F < 0;
/// - ellipse by leading circle: ||z|| + ||z-focus|| - r, interior F < 0;
/// - hyperbola by foci: | ||z-f1|| - ||z-f2|| | - 2a;
/// - hyperbola by leading circle: | ||z|| - ||z-focus|| | - r;
/// - leading line: dist(z, l) - gamma ||z-focus||, focal side F > 0;
/// - bisector: ||z-x|| - ||z-y||;
/// - d-segment: ||x-z|| + ||z-y|| - ||x-y|| (nonnegative).
pub fn residual(ball: &UnitBall, spec: &ConicSpec, z: Vec2) -> f64 {
    match spec {
        ConicSpec::EllipseFoci { f1, f2, a } => ball.norm(z - *f1) + ball.norm(z - *f2) - 2.0 * a,
        ConicSpec::EllipseLeadingCircle { r, focus } => ball.norm(z) + ball.norm(z - *focus) - r,
        ConicSpec::HyperbolaFoci { f1, f2, a } => {
            (ball.norm(z - *f1) - ball.norm(z - *f2)).abs() - 2.0 * a
        }
        ConicSpec::HyperbolaLeadingCircle { r, focus } => {
            (ball.norm(z) - ball.norm(z - *focus)).abs() - r
        }
        ConicSpec::LeadingLine { focus, line, gamma } => {
            ball.dist_point_line(z, line) - gamma * ball.norm(z - *focus)
        }
        ConicSpec::Bisector { x, y } => ball.norm(z - *x) - ball.norm(z - *y),
        ConicSpec::DSegment { x, y } => ball.norm(*x - z) + ball.norm(z - *y) - ball.norm(*x - *y),
    }
}

/// The two signed branch residuals of a hyperbola by foci:
/// (||z-f1|| - ||z-f2||) - 2a and (||z-f1|| - ||z-f2||) + 2a.
pub fn hyperbola_branch_residuals(
    ball: &UnitBall,
    f1: Vec2,
    f2: Vec2,
    a: f64,
    z: Vec2,
) -> (f64, f64) {
    let d = ball.norm(z - f1) - ball.norm(z - f2);
    (d - 2.0 * a, d + 2.0 * a)
}

pub fn membership(ball: &UnitBall, spec: &ConicSpec, z: Vec2, tol: f64) -> Membership {
    let f = residual(ball, spec, z);
    if f.abs() <= tol {
        return Membership::On;
    }
    let interior = match spec {
        // Focal side counts as interior for the leading-line conic.
        ConicSpec::LeadingLine { .. } => f > 0.0,
        _ => f < 0.0,
    };
    if interior {
        Membership::Interior
    } else {
        Membership::Exterior
    }
}

/// Direct tangency form of the leading-circle definitions: with
/// eps = ||z - focus||, the disk z + eps K must touch the leading circle
/// r K. Only the kinds of touching consistent with the focus position are
/// admitted (inner tangency with the disk inside for the ellipse; outer
/// tangency, or inner with the circle inside the disk, for the hyperbola).
///
/// Kept separate from the reduced residual so the foci/leading-circle
/// equivalence is a genuine runtime test.
pub fn tangency_membership_leading_circle(
    ball: &UnitBall,
    spec: &ConicSpec,
    z: Vec2,
    tol: f64,
) -> Result<bool> {
    let (r, focus, hyperbola) = match spec {
        ConicSpec::EllipseLeadingCircle { r, focus } => (*r, *focus, false),
        ConicSpec::HyperbolaLeadingCircle { r, focus } => (*r, *focus, true),
        other => {
            return Err(Error::InvalidSpec(format!(
                "tangency membership needs a leading-circle locus, got {}",
                other.kind_name()
            )))
        }
    };
    let eps = ball.norm(z - focus);
    if eps <= 0.0 {
        return Ok(false);
    }
    let tangency = ball.disks_tangency(z, eps, Vec2::ZERO, r, tol)?;
    Ok(match tangency {
        Tangency::None => false,
        Tangency::External => hyperbola,
        Tangency::Internal => {
            if hyperbola {
                eps >= r - tol
            } else {
                eps <= r + tol
            }
        }
    })
}

/// Degeneracy classification, ahead of any tracing.
pub fn classify_degeneracy(ball: &UnitBall, spec: &ConicSpec) -> Degeneracy {
    const EPS: f64 = 1e-9;
    match spec {
        ConicSpec::EllipseFoci { f1, f2, a } => {
            let c2 = ball.norm(*f1 - *f2);
            let a2 = 2.0 * a;
            let scale = 1.0 + c2.abs();
            if (a2 - c2).abs() <= EPS * scale {
                Degeneracy::DSegmentSet
            } else if a2 < c2 {
                Degeneracy::Empty
            } else {
                Degeneracy::Nondegenerate
            }
        }
        ConicSpec::HyperbolaFoci { f1, f2, a } => {
            let c2 = ball.norm(*f1 - *f2);
            let a2 = 2.0 * a;
            let scale = 1.0 + c2.abs();
            if *a == 0.0 {
                Degeneracy::BisectorSet
            } else if (a2 - c2).abs() <= EPS * scale {
                Degeneracy::RaysOrCones
            } else if a2 > c2 {
                Degeneracy::Empty
            } else {
                Degeneracy::Nondegenerate
            }
        }
        _ => Degeneracy::Nondegenerate,
    }
}
