//! Birkhoff orthogonality: x is orthogonal to y when ||x + a y|| >= ||x||
//! for every real a.

use crate::ball::UnitBall;
use crate::error::{Error, Result};
use crate::geom::{Line, Vec2};

/// Golden-section minimization of a convex function on [lo, hi].
///
/// Returns (argmin, min). Convexity makes the bracket safe; flat minima of
/// polygonal norms converge to some point of the flat.
pub fn golden_section_min<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    let mut iterations = 0;
    while hi - lo > width && iterations < 200 {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        }
        iterations += 1;
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid).min(fa).min(fb))
}

/// Bracket width for the inner 1-D minimization.
pub const ALPHA_WIDTH: f64 = 1e-12;

/// Minimum of ||x + a y|| over all real a.
pub fn min_norm_along(ball: &UnitBall, x: Vec2, y: Vec2) -> Result<f64> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroVector("birkhoff argument"));
    }
    // ||x + a y|| >= |a| ||y|| - ||x||, so the minimizer lies in [-r, r].
    let r = 4.0 * ball.norm(x) / ball.norm(y);
    let (_, min) = golden_section_min(|a| ball.norm(x + y * a), -r, r, ALPHA_WIDTH);
    Ok(min.min(ball.norm(x)))
}

pub fn is_birkhoff_orthogonal(ball: &UnitBall, x: Vec2, y: Vec2, tol: f64) -> Result<bool> {
    Ok(min_norm_along(ball, x, y)? >= ball.norm(x) - tol)
}

/// A unit vector Birkhoff-orthogonal to the direction of `l`: the contact
/// point of the ball under the Euclidean normal of `l` (midpoint for
/// segment contact). Stepping by t along the result changes the norm
/// distance to `l` by exactly |t|.
pub fn birkhoff_transversal(ball: &UnitBall, l: &Line) -> Vec2 {
    let n = l.unit_normal();
    ball.contact_face(n)
        .expect("line normal is nonzero")
        .midpoint()
}
