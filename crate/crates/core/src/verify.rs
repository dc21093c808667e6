//! Executable checks for the structural claims about metric conics:
//! equivalence of the foci and leading-circle definitions, convexity and
//! segment behavior of the leading-line conics, the degenerate hyperbola
//! cases, central-symmetry certificates and the max-norm counterexample
//! separating the leading-line ellipse from the focal one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ball::UnitBall;
use crate::error::{Error, Result};
use crate::geom::{BBox, Line, Vec2};
use crate::loci::{residual, tangency_membership_leading_circle, ConicSpec, Membership};
use crate::tracer::{
    convexity_check, detect_segments, hausdorff_distance, radial_trace, region_grid,
    sweep_trace_hyperbola_foci, sweep_trace_leading_line, Convexity, PolyCurve, TraceReport,
};

/// Bisection tolerance used by the claim traces. Tight enough that straight
/// runs on traced flats are collinear to well below [`STRICT_ANGLE_TOL`].
pub const CLAIM_TRACE_TOL: f64 = 1e-12;
/// Direction tolerance for segment detection on claim traces. Traced points
/// sit within ~1e-12 of the locus, so genuine flats stay straight to ~1e-8
/// radians per edge, while smooth low-curvature arcs turn much faster.
pub const STRICT_ANGLE_TOL: f64 = 1e-7;
/// Minimum segment length, as a fraction of the curve diameter.
pub const STRICT_MIN_LENGTH_FRAC: f64 = 0.025;

/// Machine-readable outcome of one claim check. Reproducible bit for bit
/// for a fixed seed and parameter set.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub ball: String,
    pub params: BTreeMap<String, f64>,
    pub pass: bool,
    pub metrics: BTreeMap<String, f64>,
    pub witnesses: Vec<[f64; 2]>,
}

impl ClaimReport {
    fn new(claim: &str, ball: &UnitBall) -> ClaimReport {
        ClaimReport {
            claim: claim.to_string(),
            ball: ball.describe(),
            params: BTreeMap::new(),
            pass: false,
            metrics: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: f64) -> ClaimReport {
        self.params.insert(key.to_string(), value);
        self
    }

    fn param_vec(self, key: &str, v: Vec2) -> ClaimReport {
        let kx = format!("{key}.x");
        let ky = format!("{key}.y");
        self.param(&kx, v.x).param(&ky, v.y)
    }

    fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    fn witness(&mut self, p: Vec2) {
        self.witnesses.push([p.x, p.y]);
    }
}

/// Chord-deviation cap for a straight run, relative to the curve diameter.
/// Traced flats deviate from their chord by the root-finding precision
/// (~1e-11), while low-curvature arcs of smooth balls sag by orders of
/// magnitude more over any run that survives the length filter.
pub const STRICT_SAGITTA_FRAC: f64 = 1e-8;

fn span_sagitta(curve: &PolyCurve, start: usize, end: usize) -> f64 {
    let pts = &curve.points;
    let n = pts.len();
    let chord_dir = match (pts[end] - pts[start]).normalized() {
        Some(d) => d,
        None => return 0.0,
    };
    let mut worst = 0.0f64;
    let mut k = start;
    while k != end {
        worst = worst.max((pts[k] - pts[start]).cross(chord_dir).abs());
        k = (k + 1) % n;
    }
    worst
}

fn strict_segments(curve: &PolyCurve) -> Vec<(usize, usize)> {
    let sag_tol = STRICT_SAGITTA_FRAC * (1.0 + curve.diameter());
    detect_segments(
        curve,
        STRICT_ANGLE_TOL,
        STRICT_MIN_LENGTH_FRAC * curve.diameter(),
    )
    .into_iter()
    .filter(|&(start, end)| span_sagitta(curve, start, end) <= sag_tol)
    .collect()
}

/// The central half of an open swept curve, by point index. Hyperbola and
/// parabola tails straighten toward their asymptotic directions, so at any
/// finite tolerance a far-enough tail arc reads as a segment even in a
/// strictly convex plane; the structural flats of polygonal norms all show
/// up near the vertex region.
fn central_window(curve: &PolyCurve) -> PolyCurve {
    if curve.closed || curve.len() < 8 {
        return curve.clone();
    }
    let n = curve.len();
    let slice = curve.points[n / 4..(3 * n) / 4].to_vec();
    PolyCurve::new(slice, false, curve.residual_tol)
}

fn report_has_strict_segments(report: &TraceReport) -> bool {
    report
        .curves
        .iter()
        .any(|c| !strict_segments(&central_window(c)).is_empty())
        || report
            .crossings_per_line
            .iter()
            .any(|c| c.interval_roots > 0)
}

/// Radial root extraction for a custom interior-negative residual.
fn radial_points<F: Fn(Vec2) -> f64>(g: F, seed: Vec2, n: usize, tol: f64) -> Result<Vec<Vec2>> {
    if g(seed) >= 0.0 {
        return Err(Error::SeedNotInterior(g(seed)));
    }
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let angle = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let u = Vec2::new(angle.cos(), angle.sin());
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        let mut found = false;
        for _ in 0..80 {
            if g(seed + u * hi) > 0.0 {
                found = true;
                break;
            }
            lo = hi;
            hi *= 2.0;
        }
        if !found {
            return Err(Error::BracketingFailed(u.x, u.y));
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if g(seed + u * mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        points.push(seed + u * (0.5 * (lo + hi)));
    }
    Ok(points)
}

/// Foci definition versus the direct leading-circle tangency construction:
/// both traced along the same rays, compared in Hausdorff distance.
///
/// The direct trace roots the inner-tangency defect ||z|| - |r - eps(z)|
/// of the two disks rather than the reduced sum-of-distances residual.
pub fn check_prop1_equivalence(ball: &UnitBall, focus: Vec2, a: f64) -> Result<ClaimReport> {
    check_prop1_equivalence_at(ball, focus, a, 512)
}

/// As [`check_prop1_equivalence`], with an explicit trace density.
pub fn check_prop1_equivalence_at(
    ball: &UnitBall,
    focus: Vec2,
    a: f64,
    n: usize,
) -> Result<ClaimReport> {
    let mut report = ClaimReport::new("prop1-equivalence", ball)
        .param_vec("focus", focus)
        .param("a", a);
    let r = 2.0 * a;
    if focus.is_zero() || ball.norm(focus) >= r {
        return Err(Error::InvalidSpec(
            "prop1 needs a nonzero focus strictly inside the leading circle".into(),
        ));
    }
    let seed = focus * 0.5;

    let foci_spec = ConicSpec::EllipseFoci {
        f1: Vec2::ZERO,
        f2: focus,
        a,
    };
    let by_foci = radial_trace(ball, &foci_spec, seed, n, CLAIM_TRACE_TOL)?;

    let defect = |z: Vec2| ball.norm(z) - (r - ball.norm(z - focus)).abs();
    let direct_points = radial_points(defect, seed, n, CLAIM_TRACE_TOL)?;
    let circle_spec = ConicSpec::EllipseLeadingCircle { r, focus };
    let mut tangent_hits = 0usize;
    for p in &direct_points {
        if tangency_membership_leading_circle(ball, &circle_spec, *p, 1e-7)? {
            tangent_hits += 1;
        }
    }
    let by_circle = PolyCurve::new(direct_points, true, by_foci.residual_tol);

    let distance = hausdorff_distance(&by_foci, &by_circle);
    let threshold = 10.0 * CLAIM_TRACE_TOL.max(1e-9);
    report.metric("hausdorff", distance);
    report.metric("threshold", threshold);
    report.metric("tangency_fraction", tangent_hits as f64 / n as f64);
    report.pass = distance <= threshold && tangent_hits == n;
    if !report.pass {
        report.witness(by_foci.points[0]);
    }
    Ok(report)
}

/// Leading-line ellipse: a convex curve, strictly convex exactly when the
/// plane is.
pub fn check_thm1(ball: &UnitBall, line: &Line, focus: Vec2, gamma: f64) -> Result<ClaimReport> {
    let mut report = ClaimReport::new("thm1-leading-line-ellipse", ball)
        .param_vec("focus", focus)
        .param("gamma", gamma);
    if gamma <= 1.0 {
        return Err(Error::InvalidSpec("an ellipse needs gamma > 1".into()));
    }
    let spec = ConicSpec::LeadingLine {
        focus,
        line: *line,
        gamma,
    };
    let curve = radial_trace(ball, &spec, focus, 512, CLAIM_TRACE_TOL)?;
    let convex = matches!(convexity_check(&curve, 1e-6)?, Convexity::Convex);
    let segments = strict_segments(&curve);
    let strictly_convex = ball.properties().strictly_convex;
    report.metric("points", curve.len() as f64);
    report.metric("residual_tol", curve.residual_tol);
    report.metric("convex", convex as usize as f64);
    report.metric("segments", segments.len() as f64);
    report.pass = convex && (segments.is_empty() == strictly_convex);
    if let Some((s, _e)) = segments.first() {
        report.witness(curve.points[*s]);
    }
    Ok(report)
}

/// The degenerate hyperbolas: difference zero is the bisector; difference
/// equal to the focal distance gives rays (strictly convex norms) or
/// two-dimensional cones (flat norms).
pub fn check_thm2(ball: &UnitBall, x: Vec2) -> Result<Vec<ClaimReport>> {
    let unit_defect = (ball.norm(x) - 1.0).abs();
    if unit_defect > 1e-9 {
        return Err(Error::InvalidSpec(format!(
            "thm2 needs a unit vector, norm defect {unit_defect:.3e}"
        )));
    }
    let bbox = BBox::new(Vec2::new(-3.0, -3.0), Vec2::new(3.0, 3.0))?;

    // (i) zero-difference locus versus the bisector, cell by cell.
    let mut part_i = ClaimReport::new("thm2-i", ball).param_vec("x", x);
    let h0 = ConicSpec::HyperbolaFoci {
        f1: -x,
        f2: x,
        a: 0.0,
    };
    let bis = ConicSpec::Bisector { x: -x, y: x };
    let mut agree_all = true;
    let mut on_cells_band = 0usize;
    for (label, tol) in [("tight", 1e-6), ("band", 6.0 / 256.0)] {
        let ga = region_grid(ball, &h0, bbox, 256, 256, tol)?;
        let gb = region_grid(ball, &bis, bbox, 256, 256, tol)?;
        let mut agree = 0usize;
        let mut on_cells = 0usize;
        for (ca, cb) in ga.cells.iter().zip(&gb.cells) {
            let a_on = *ca == Membership::On;
            let b_on = *cb == Membership::On;
            if a_on == b_on {
                agree += 1;
            }
            if a_on {
                on_cells += 1;
            }
        }
        let frac = agree as f64 / ga.cells.len() as f64;
        let key_a = format!("agreement_{label}");
        let key_b = format!("on_cells_{label}");
        part_i.metric(&key_a, frac);
        part_i.metric(&key_b, on_cells as f64);
        agree_all &= frac == 1.0;
        if label == "band" {
            on_cells_band = on_cells;
        }
    }
    part_i.pass = agree_all && on_cells_band > 0;

    // (ii) difference 2a = 2c: rays along +-x, or cones for flat balls.
    let mut part_ii = ClaimReport::new("thm2-ii", ball).param_vec("x", x);
    let h1 = ConicSpec::HyperbolaFoci {
        f1: -x,
        f2: x,
        a: 1.0,
    };
    if ball.properties().strictly_convex {
        let mut worst_ray_residual = 0.0f64;
        for k in 0..512 {
            let t = 1.0 + 2.0 * k as f64 / 511.0;
            for z in [x * t, x * (-t)] {
                worst_ray_residual = worst_ray_residual.max(residual(ball, &h1, z).abs());
            }
        }
        // Odd grid puts cell centers exactly on the ray line.
        let grid = region_grid(ball, &h1, bbox, 257, 257, 1e-6)?;
        let mut on_cells = 0usize;
        let mut worst_ray_distance = 0.0f64;
        for iy in 0..257 {
            for ix in 0..257 {
                if grid.cell(ix, iy) == Membership::On {
                    on_cells += 1;
                    let c = grid.center(ix, iy);
                    let t = c.dot(x) / x.dot(x);
                    let d = if t.abs() >= 1.0 {
                        (c - x * t).hypot()
                    } else {
                        (c - x).hypot().min((c + x).hypot())
                    };
                    worst_ray_distance = worst_ray_distance.max(d);
                }
            }
        }
        // The residual grows like the p-th power of the offset from the
        // ray, so the 1e-6 level set is a slab of width ~ (1e-6)^(1/p).
        // The 1e-3 ray bound is therefore meaningful at p = 2 and relaxed
        // to the level-set width for flatter exponents.
        let ray_bound = match ball {
            UnitBall::Lp(crate::ball::Exponent::Finite(p)) if (*p - 2.0).abs() > 1e-9 => {
                (1e-3f64).max(4.0 * 1e-6f64.powf(1.0 / *p))
            }
            _ => 1e-3,
        };
        part_ii.metric("ray_residual", worst_ray_residual);
        part_ii.metric("on_cells", on_cells as f64);
        part_ii.metric("ray_distance", worst_ray_distance);
        part_ii.metric("ray_bound", ray_bound);
        part_ii.pass =
            worst_ray_residual <= 1e-9 && on_cells > 0 && worst_ray_distance <= ray_bound;
    } else {
        let grid = region_grid(ball, &h1, bbox, 256, 256, 1e-6)?;
        let fraction = grid.on_fraction();
        part_ii.metric("on_area_fraction", fraction);
        part_ii.pass = fraction > 0.01;
    }

    Ok(vec![part_i, part_ii])
}

/// Nondegenerate hyperbola sweeps: strictly convex planes cross each sweep
/// line in exactly two points with no flat runs; flat planes produce root
/// intervals or straight runs.
pub fn check_thm3(ball: &UnitBall, x: Vec2, a: f64) -> Result<ClaimReport> {
    let mut report = ClaimReport::new("thm3-hyperbola-foci", ball)
        .param_vec("x", x)
        .param("a", a);
    let spec = ConicSpec::HyperbolaFoci { f1: -x, f2: x, a };
    let extent = 6.0 * (1.0 + 2.0 * a).max(ball.norm(x * 2.0));
    let swept = sweep_trace_hyperbola_foci(ball, &spec, extent, 64, CLAIM_TRACE_TOL)?;

    let lines = swept.crossings_per_line.len() as f64;
    let two_point_lines = swept
        .crossings_per_line
        .iter()
        .filter(|c| c.point_roots == 2 && c.interval_roots == 0)
        .count() as f64;
    let interval_lines = swept
        .crossings_per_line
        .iter()
        .filter(|c| c.interval_roots > 0)
        .count() as f64;
    let segments = report_has_strict_segments(&swept);
    report.metric("lines", lines);
    report.metric("two_point_lines", two_point_lines);
    report.metric("interval_lines", interval_lines);
    report.metric("segments", segments as usize as f64);
    report.metric(
        "max_residual",
        swept
            .curves
            .iter()
            .map(|c| c.residual_tol)
            .fold(0.0, f64::max),
    );

    if ball.properties().strictly_convex {
        report.pass = two_point_lines == lines && !segments;
    } else {
        report.pass = interval_lines > 0.0 || segments;
    }
    Ok(report)
}

/// Leading-line hyperbola: two simple curves, one per side of the line,
/// segment-free exactly for strictly convex planes.
pub fn check_thm4(ball: &UnitBall, line: &Line, focus: Vec2, gamma: f64) -> Result<ClaimReport> {
    let mut report = ClaimReport::new("thm4-leading-line-hyperbola", ball)
        .param_vec("focus", focus)
        .param("gamma", gamma);
    if !(0.0 < gamma && gamma < 1.0) {
        return Err(Error::InvalidSpec("thm4 needs 0 < gamma < 1".into()));
    }
    let spec = ConicSpec::LeadingLine {
        focus,
        line: *line,
        gamma,
    };
    let extent = 6.0 * (1.0 + ball.dist_point_line(focus, line));
    let swept = sweep_trace_leading_line(ball, &spec, extent, 128, CLAIM_TRACE_TOL)?;

    let curves_ok = swept.curves.len() == 2;
    let crossings_ok = swept
        .crossings_per_line
        .iter()
        .all(|c| c.point_roots + c.interval_roots <= 2);
    let segments = report_has_strict_segments(&swept);
    let strictly_convex = ball.properties().strictly_convex;
    report.metric("curves", swept.curves.len() as f64);
    report.metric("crossings_ok", crossings_ok as usize as f64);
    report.metric("segments", segments as usize as f64);
    report.pass = curves_ok && crossings_ok && (segments != strictly_convex);
    Ok(report)
}

/// Metric parabola: one simple curve, segment-free exactly for strictly
/// convex planes.
pub fn check_thm5(ball: &UnitBall, line: &Line, focus: Vec2) -> Result<ClaimReport> {
    let mut report = ClaimReport::new("thm5-parabola", ball)
        .param_vec("focus", focus)
        .param("gamma", 1.0);
    let spec = ConicSpec::LeadingLine {
        focus,
        line: *line,
        gamma: 1.0,
    };
    let extent = 6.0 * (1.0 + ball.dist_point_line(focus, line));
    let swept = sweep_trace_leading_line(ball, &spec, extent, 128, CLAIM_TRACE_TOL)?;

    let curves_ok = swept.curves.len() == 1;
    let crossings_ok = swept
        .crossings_per_line
        .iter()
        .all(|c| c.point_roots + c.interval_roots <= 1);
    let segments = report_has_strict_segments(&swept);
    let strictly_convex = ball.properties().strictly_convex;
    report.metric("curves", swept.curves.len() as f64);
    report.metric("crossings_ok", crossings_ok as usize as f64);
    report.metric("segments", segments as usize as f64);
    report.pass = curves_ok && crossings_ok && (segments != strictly_convex);
    Ok(report)
}

/// Distance from `p` to the polyline (segment-based).
fn point_to_polyline(p: Vec2, curve: &PolyCurve) -> f64 {
    let pts = &curve.points;
    let n = pts.len();
    let m = if curve.closed { n } else { n - 1 };
    let mut best = f64::INFINITY;
    for i in 0..m {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let ab = b - a;
        let len2 = ab.dot(ab);
        let t = if len2 > 0.0 {
            ((p - a).dot(ab) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let q = a + ab * t;
        best = best.min((p - q).dot(p - q));
    }
    best.sqrt()
}

/// Worst distance from the reflection of the curve through `center` back to
/// the curve itself.
pub fn central_symmetry_defect(curve: &PolyCurve, center: Vec2) -> f64 {
    let mut worst = 0.0f64;
    for p in &curve.points {
        let reflected = center * 2.0 - *p;
        worst = worst.max(point_to_polyline(reflected, curve));
    }
    worst
}

/// Best center found by a shrinking grid search. The bounding-box center of
/// a centrally symmetric curve is its symmetry center, so the search starts
/// there and only has to polish.
pub fn best_symmetry_center(curve: &PolyCurve) -> (Vec2, f64) {
    let mut min = curve.points[0];
    let mut max = curve.points[0];
    for p in &curve.points {
        min = Vec2::new(min.x.min(p.x), min.y.min(p.y));
        max = Vec2::new(max.x.max(p.x), max.y.max(p.y));
    }
    // Coarse subsample for the search, full curve for the final defect.
    let coarse = PolyCurve::new(
        curve.points.iter().step_by(4).copied().collect(),
        curve.closed,
        curve.residual_tol,
    );
    let mut center = (min + max) * 0.5;
    let mut radius = 0.05 * curve.diameter();
    let mut best = central_symmetry_defect(&coarse, center);
    for _ in 0..24 {
        let mut improved = false;
        for dy in -2i32..=2 {
            for dx in -2i32..=2 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let cand = center + Vec2::new(dx as f64, dy as f64) * (radius / 2.0);
                let d = central_symmetry_defect(&coarse, cand);
                if d < best {
                    best = d;
                    center = cand;
                    improved = true;
                }
            }
        }
        radius *= if improved { 0.9 } else { 0.5 };
    }
    (center, central_symmetry_defect(curve, center))
}

/// Threshold separating discretization error from genuine asymmetry.
pub const SYMMETRY_NOISE: f64 = 2e-4;

/// Central-symmetry certificate for a traced curve. `expect_symmetric`
/// encodes whether the configuration should be symmetric; asymmetry is
/// certified only an order of magnitude above the noise floor.
pub fn check_symmetry(
    ball: &UnitBall,
    curve: &PolyCurve,
    claim: &str,
    center_hint: Option<Vec2>,
    expect_symmetric: bool,
) -> ClaimReport {
    let mut report = ClaimReport::new(claim, ball);
    let (center, defect) = match center_hint {
        Some(c) => (c, central_symmetry_defect(curve, c)),
        None => best_symmetry_center(curve),
    };
    report.metric("defect", defect);
    report.metric("noise_floor", SYMMETRY_NOISE);
    report.witness(center);
    report.pass = if expect_symmetric {
        defect <= SYMMETRY_NOISE
    } else {
        defect > 10.0 * SYMMETRY_NOISE
    };
    report
}

/// The max-norm separation of the focal and leading-line ellipse classes.
///
/// Foci at +-(1, 1), so the focal distance is 2 in the max norm and the
/// distance sum is 4. Along the main diagonal one max-norm unit equals
/// sqrt(2) Euclidean units.
pub fn reproduce_linf_counterexample() -> Result<ClaimReport> {
    let ball = UnitBall::lp_infinity();
    let mut report = ClaimReport::new("linf-counterexample", &ball);
    let x = Vec2::new(1.0, 1.0);

    // (a) the three-ratio system r/s = (4-r)/(4+s) = (2-r)/(1+s):
    // cross-multiplying the first pair gives r(2+s) = 2s, the second pair
    // r(1+2s) = 2s, hence 2+s = 1+2s, so s = 1 and r = 2/3.
    let s = 1.0f64;
    let r = 2.0f64 / 3.0;
    let ratio1 = r / s;
    let ratio2 = (4.0 - r) / (4.0 + s);
    let ratio3 = (2.0 - r) / (1.0 + s);
    let system_ok = (ratio1 - ratio2).abs() <= 1e-12
        && (ratio1 - ratio3).abs() <= 1e-12
        && (ratio1 - 2.0 / 3.0).abs() <= 1e-12;
    report.metric("s", s);
    report.metric("r", r);
    report.metric("ratio", ratio1);

    // (b) trace the focal ellipse and pin the candidate leading-line
    // configuration it would need. The candidate line lies one norm unit
    // beyond the vertex 2x, perpendicular (in the Euclidean sense) to the
    // focal diagonal; the fitted focus lies r norm units before 2x.
    let spec = ConicSpec::EllipseFoci {
        f1: -x,
        f2: x,
        a: 2.0,
    };
    let trace = radial_trace(&ball, &spec, Vec2::ZERO, 720, CLAIM_TRACE_TOL)?;
    let leading_line = Line::new(Vec2::new(3.0, 3.0), Vec2::new(1.0, -1.0))?;
    let norm_ratio =
        |w: Vec2, focus: Vec2| ball.norm(w - focus) / ball.dist_point_line(w, &leading_line);

    let fitted_focus = Vec2::new(2.0 - r, 2.0 - r);
    let mut fit_defect = 0.0f64;
    for w in [x * 2.0, x * -2.0, Vec2::new(0.0, 2.0), Vec2::new(2.0, 0.0)] {
        fit_defect = fit_defect.max((norm_ratio(w, fitted_focus) - 2.0 / 3.0).abs());
    }
    report.metric("fit_defect", fit_defect);

    // -z is the antipode of the shoulder vertex z = (2, 0); read it off the
    // traced ellipse in direction 180 degrees.
    let minus_z = trace.points[720 / 2];
    let minus_z_defect = (minus_z - Vec2::new(-2.0, 0.0)).hypot();
    report.metric("minus_z_defect", minus_z_defect);
    report.witness(minus_z);

    // Published evaluation point: the candidate focus measured 2/3 in the
    // Euclidean sense from the vertex 2x.
    let diag = Vec2::new(1.0, 1.0) * (1.0 / 2.0f64.sqrt());
    let euclid_focus = x * 2.0 - diag * r;
    let ratio_minus_z = norm_ratio(minus_z, euclid_focus);
    let published = (12.0 - 2.0f64.sqrt()) / 12.0;
    report.metric("ratio_minus_z", ratio_minus_z);
    report.metric("published", published);
    report.witness(euclid_focus);
    let ratio_ok =
        (ratio_minus_z - published).abs() <= 1e-6 && (ratio_minus_z - 2.0 / 3.0).abs() > 0.2;

    // (c) brute-force sweep over symmetric-position candidates: no
    // leading-line ellipse comes Hausdorff-close to the focal trace. A
    // candidate residual bounds the distance from below through its
    // Lipschitz constant 1 + gamma.
    let mut min_bound = f64::INFINITY;
    let mut configs = 0usize;
    for iq in 0..24 {
        let uq = 2.05 + (4.0 - 2.05) * iq as f64 / 23.0;
        let cand_line = Line::new(Vec2::new(uq, uq), Vec2::new(1.0, -1.0))?;
        for ip in 0..24 {
            let up = 0.1 + (1.95 - 0.1) * ip as f64 / 23.0;
            let cand_focus = Vec2::new(up, up);
            for ig in 0..18 {
                let gamma = 1.05 + (3.0 - 1.05) * ig as f64 / 17.0;
                configs += 1;
                let lipschitz = 1.0 + gamma;
                let mut bound = 0.0f64;
                for w in &trace.points {
                    let f =
                        ball.dist_point_line(*w, &cand_line) - gamma * ball.norm(*w - cand_focus);
                    bound = bound.max(f.abs() / lipschitz);
                    // An order of magnitude above the match threshold is
                    // enough to reject the configuration.
                    if bound > 1e-2 {
                        break;
                    }
                }
                min_bound = min_bound.min(bound);
            }
        }
    }
    report.metric("configs", configs as f64);
    report.metric("sweep_min_distance_bound", min_bound);
    let sweep_ok = configs >= 10_000 && min_bound > 1e-3;

    report.pass = system_ok && fit_defect <= 1e-9 && minus_z_defect <= 1e-9 && ratio_ok && sweep_ok;
    Ok(report)
}

/// Claims addressable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Prop1,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Symmetry,
    Counterexample,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::Prop1,
        Claim::Thm1,
        Claim::Thm2,
        Claim::Thm3,
        Claim::Thm4,
        Claim::Thm5,
        Claim::Symmetry,
        Claim::Counterexample,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Claim::Prop1 => "prop1",
            Claim::Thm1 => "thm1",
            Claim::Thm2 => "thm2",
            Claim::Thm3 => "thm3",
            Claim::Thm4 => "thm4",
            Claim::Thm5 => "thm5",
            Claim::Symmetry => "symmetry",
            Claim::Counterexample => "counterexample",
        }
    }
}

impl std::str::FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Claim> {
        match s.trim() {
            "prop1" => Ok(Claim::Prop1),
            "thm1" => Ok(Claim::Thm1),
            "thm2" => Ok(Claim::Thm2),
            "thm3" => Ok(Claim::Thm3),
            "thm4" => Ok(Claim::Thm4),
            "thm5" => Ok(Claim::Thm5),
            "symmetry" => Ok(Claim::Symmetry),
            "counterexample" => Ok(Claim::Counterexample),
            other => Err(Error::InvalidSpec(format!("unknown claim {other:?}"))),
        }
    }
}

fn x_axis() -> Line {
    Line::new(Vec2::ZERO, Vec2::new(1.0, 0.0)).expect("axis")
}

fn vertical_at(x: f64) -> Line {
    Line::new(Vec2::new(x, 0.0), Vec2::new(0.0, 1.0)).expect("vertical")
}

fn oblique() -> Line {
    Line::new(Vec2::new(2.5, -0.5), Vec2::new(1.0, 0.35)).expect("oblique")
}

/// Hyperbola parameters for the sweep check. For polygonal balls the focal
/// direction follows an edge and, when an oblique edge functional exists,
/// the half-difference is tuned onto its plateau level so root intervals
/// genuinely occur.
pub fn thm3_config(ball: &UnitBall) -> (Vec2, f64) {
    if let UnitBall::Polygon(poly) = ball {
        let vs = poly.vertices();
        let count = vs.len();
        let mut best: Option<(Vec2, f64, f64)> = None;
        for i in 0..count {
            let dir = vs[(i + 1) % count] - vs[i];
            let x = match ball.boundary_point(dir) {
                Ok(x) => x,
                Err(_) => continue,
            };
            for j in 0..count {
                let a = vs[j];
                let b = vs[(j + 1) % count];
                let edge = b - a;
                let normal = Vec2::new(edge.y, -edge.x);
                let c = normal.dot(a);
                if c <= 0.0 {
                    continue;
                }
                let level = (normal / c).dot(x);
                if level > 0.15 && level < 0.85 {
                    let margin = level.min(1.0 - level);
                    if best.is_none_or(|(_, _, m)| margin > m) {
                        best = Some((x, level, margin));
                    }
                }
            }
        }
        if let Some((x, level, _)) = best {
            return (x, level);
        }
    }
    let x = ball
        .boundary_point(Vec2::new(1.0, 0.0))
        .expect("axis direction");
    (x, 0.5)
}

/// Runs a claim against its built-in configuration table.
pub fn run_claim(ball: &UnitBall, claim: Claim) -> Result<Vec<ClaimReport>> {
    let mut reports = Vec::new();
    match claim {
        Claim::Prop1 => {
            for (focus, a) in [
                (Vec2::new(0.9, 0.2), 1.1),
                (Vec2::new(-0.4, 0.7), 1.0),
                (Vec2::new(0.5, 0.5), 1.5),
            ] {
                reports.push(check_prop1_equivalence(ball, focus, a)?);
            }
        }
        Claim::Thm1 => {
            let configs: [(Vec2, Line, f64); 5] = [
                (Vec2::new(0.0, 1.0), x_axis(), 2.0),
                (Vec2::new(1.0, 0.0), vertical_at(4.0), 1.3),
                (Vec2::new(0.5, 0.8), oblique(), 1.6),
                (Vec2::new(-0.3, 1.2), x_axis(), 2.5),
                (Vec2::new(0.9, 0.1), vertical_at(3.0), 3.2),
            ];
            for (focus, line, gamma) in configs {
                reports.push(check_thm1(ball, &line, focus, gamma)?);
            }
        }
        Claim::Thm2 => {
            let x = ball.boundary_point(Vec2::new(1.0, 0.0))?;
            reports.extend(check_thm2(ball, x)?);
        }
        Claim::Thm3 => {
            let (x, a) = thm3_config(ball);
            reports.push(check_thm3(ball, x, a)?);
        }
        Claim::Thm4 => {
            for (focus, line, gamma) in [
                (Vec2::new(0.0, 1.0), x_axis(), 0.5),
                (Vec2::new(1.0, 0.0), vertical_at(4.0), 0.5),
                (Vec2::new(0.5, 1.2), oblique(), 0.7),
            ] {
                reports.push(check_thm4(ball, &line, focus, gamma)?);
            }
        }
        Claim::Thm5 => {
            for (focus, line) in [
                (Vec2::new(0.0, 1.0), x_axis()),
                (Vec2::new(1.0, 0.0), vertical_at(4.0)),
                (Vec2::new(0.3, 1.1), oblique()),
            ] {
                reports.push(check_thm5(ball, &line, focus)?);
            }
        }
        Claim::Symmetry => {
            let spec = ConicSpec::LeadingLine {
                focus: Vec2::new(0.0, 1.0),
                line: x_axis(),
                gamma: 2.0,
            };
            let curve = radial_trace(ball, &spec, Vec2::new(0.0, 1.0), 1024, CLAIM_TRACE_TOL)?;
            let euclidean = matches!(
                ball,
                UnitBall::Lp(crate::ball::Exponent::Finite(p)) if (*p - 2.0).abs() < 1e-12
            );
            if euclidean {
                reports.push(check_symmetry(ball, &curve, "def3-symmetry", None, true));
            } else if !ball.properties().strictly_convex {
                reports.push(check_symmetry(ball, &curve, "def3-asymmetry", None, false));
            }
            // A focal ellipse is centrally symmetric about the foci midpoint
            // in every norm.
            let f1 = Vec2::new(-0.9, -0.2);
            let f2 = Vec2::new(0.9, 0.2);
            let focal = ConicSpec::EllipseFoci { f1, f2, a: 1.4 };
            let curve = radial_trace(ball, &focal, (f1 + f2) * 0.5, 1024, CLAIM_TRACE_TOL)?;
            reports.push(check_symmetry(
                ball,
                &curve,
                "def1-symmetry",
                Some((f1 + f2) * 0.5),
                true,
            ));
        }
        Claim::Counterexample => {
            reports.push(reproduce_linf_counterexample()?);
        }
    }
    Ok(reports)
}
