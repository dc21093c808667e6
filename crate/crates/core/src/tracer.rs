//! Extraction of loci as ordered polylines: radial tracing for bounded convex
//! loci, directional sweeps for unbounded ones, occupancy grids for the
//! degenerate set-valued cases, straight-segment detection and asymptote
//! construction.

use crate::ball::{ContactFace, UnitBall};
use crate::birkhoff::birkhoff_transversal;
use crate::error::{Error, Result};
use crate::geom::{BBox, Line, Vec2};
use crate::loci::{
    classify_degeneracy, hyperbola_branch_residuals, membership, residual, ConicSpec, Degeneracy,
    Membership,
};

pub const DEFAULT_TRACE_TOL: f64 = 1e-10;
pub const DEFAULT_ANGLE_TOL: f64 = 1e-4;
pub const DEFAULT_MIN_LENGTH_FRAC: f64 = 1e-3;
pub const DEFAULT_STATIONS: usize = 1024;
/// Roots closer than this in the station parameter are merged.
pub const ROOT_MERGE_TOL: f64 = 1e-7;

/// An ordered polyline approximating a locus. Every stored point satisfies
/// |residual| <= residual_tol.
#[derive(Clone, Debug)]
pub struct PolyCurve {
    pub points: Vec<Vec2>,
    pub closed: bool,
    pub residual_tol: f64,
}

impl PolyCurve {
    pub fn new(points: Vec<Vec2>, closed: bool, residual_tol: f64) -> PolyCurve {
        let mut out: Vec<Vec2> = Vec::with_capacity(points.len());
        for p in points {
            if out.last().is_none_or(|q| (*q - p).hypot() > 0.0) {
                out.push(p);
            }
        }
        if closed && out.len() > 1 && (out[0] - *out.last().unwrap()).hypot() == 0.0 {
            out.pop();
        }
        PolyCurve {
            points: out,
            closed,
            residual_tol,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Diagonal of the bounding box; cheap stand-in for the diameter.
    pub fn diameter(&self) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        let mut min = self.points[0];
        let mut max = self.points[0];
        for p in &self.points {
            min = Vec2::new(min.x.min(p.x), min.y.min(p.y));
            max = Vec2::new(max.x.max(p.x), max.y.max(p.y));
        }
        (max - min).hypot()
    }

    fn edges(&self) -> Vec<Vec2> {
        let n = self.points.len();
        let m = if self.closed { n } else { n.saturating_sub(1) };
        (0..m)
            .map(|i| self.points[(i + 1) % n] - self.points[i])
            .collect()
    }
}

/// Maximal straight run inside a traced curve. `end < start` happens only on
/// closed curves and means the run wraps through the seam.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegmentSpan {
    pub curve: usize,
    pub start: usize,
    pub end: usize,
}

/// Roots found on one sweep line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LineCrossings {
    pub point_roots: usize,
    pub interval_roots: usize,
}

#[derive(Clone, Debug)]
pub struct TraceReport {
    pub curves: Vec<PolyCurve>,
    pub segments: Vec<SegmentSpan>,
    pub degeneracy: Degeneracy,
    pub region: Option<RegionGrid>,
    /// Per sweep line, in offset order. Empty for radial traces.
    pub crossings_per_line: Vec<LineCrossings>,
}

/// Occupancy grid of cell-center memberships, row-major from the bottom row.
#[derive(Clone, Debug)]
pub struct RegionGrid {
    pub bbox: BBox,
    pub nx: usize,
    pub ny: usize,
    pub cells: Vec<Membership>,
}

impl RegionGrid {
    pub fn cell(&self, ix: usize, iy: usize) -> Membership {
        self.cells[iy * self.nx + ix]
    }

    pub fn center(&self, ix: usize, iy: usize) -> Vec2 {
        Vec2::new(
            self.bbox.min.x + (ix as f64 + 0.5) * self.bbox.width() / self.nx as f64,
            self.bbox.min.y + (iy as f64 + 0.5) * self.bbox.height() / self.ny as f64,
        )
    }

    pub fn count(&self, m: Membership) -> usize {
        self.cells.iter().filter(|&&c| c == m).count()
    }

    pub fn on_fraction(&self) -> f64 {
        self.count(Membership::On) as f64 / self.cells.len() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convexity {
    Convex,
    Nonconvex { witness: usize },
}

/// One asymptote candidate: the tangent line through the focus together
/// with its contact face on the leading circle and the assembled shape.
#[derive(Clone, Debug)]
pub struct AsymptoteItem {
    pub tangent_normal: Vec2,
    pub tangent_line: Line,
    pub contact: ContactFace,
    pub shape: AsymptoteShape,
}

#[derive(Clone, Debug)]
pub enum AsymptoteShape {
    Line(Line),
    /// Cone of directions from the apex, spanned by two independent vectors.
    Cone {
        apex: Vec2,
        dir1: Vec2,
        dir2: Vec2,
    },
}

#[derive(Clone, Debug)]
pub struct AsymptoteSet {
    pub items: Vec<AsymptoteItem>,
}

/// Traces a bounded convex locus by radial bracketing from an interior seed:
/// along `n` equally spaced Euclidean directions the unique residual sign
/// change is bracketed by doubling and refined by bisection to `tol`.
pub fn radial_trace(
    ball: &UnitBall,
    spec: &ConicSpec,
    seed: Vec2,
    n: usize,
    tol: f64,
) -> Result<PolyCurve> {
    // Orientation makes g < 0 on the interior side for every variant.
    let orient = match spec {
        ConicSpec::EllipseFoci { .. } | ConicSpec::EllipseLeadingCircle { .. } => 1.0,
        ConicSpec::LeadingLine { gamma, .. } if *gamma > 1.0 => -1.0,
        other => {
            return Err(Error::InvalidSpec(format!(
                "radial tracing needs a bounded convex locus, got {}",
                other.kind_name()
            )))
        }
    };
    spec.validate(ball)?;
    match classify_degeneracy(ball, spec) {
        Degeneracy::Nondegenerate => {}
        Degeneracy::Empty => return Err(Error::EmptyLocus),
        other => return Err(Error::DegenerateLocus(other.tag())),
    }

    let g = |z: Vec2| orient * residual(ball, spec, z);
    let g_seed = g(seed);
    if g_seed >= 0.0 {
        return Err(Error::SeedNotInterior(g_seed));
    }

    let mut points = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
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
        let p = seed + u * (0.5 * (lo + hi));
        max_residual = max_residual.max(residual(ball, spec, p).abs());
        points.push(p);
    }
    Ok(PolyCurve::new(points, true, max_residual.max(1e-15)))
}

/// Zero of a scalar function on a station grid: either a transversal
/// crossing or a plateau interval (flat norms produce genuine intervals).
#[derive(Clone, Copy, Debug)]
enum LineRoot {
    Point(f64),
    Interval(f64, f64),
}

/// All zeros of `g` on [lo, hi] from dense sampling plus bisection.
/// `ztol` is the plateau band: samples with |g| <= ztol count as zero.
fn line_zero_set<F: Fn(f64) -> f64>(
    g: &F,
    lo: f64,
    hi: f64,
    stations: usize,
    tol: f64,
    ztol: f64,
) -> Vec<LineRoot> {
    let step = (hi - lo) / (stations - 1) as f64;
    let s_at = |i: usize| lo + step * i as f64;
    let values: Vec<f64> = (0..stations).map(|i| g(s_at(i))).collect();

    let bisect = |mut a: f64, mut b: f64, rising: bool| -> f64 {
        // sign(g(a)) != sign(g(b)); keeps the invariant g(a) <= 0 < g(b)
        // (or mirrored).
        for _ in 0..200 {
            if b - a <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            let positive = g(mid) > 0.0;
            if positive == rising {
                b = mid;
            } else {
                a = mid;
            }
        }
        0.5 * (a + b)
    };
    // Boundary of the |g| <= ztol band between an outside sample at `a` and
    // an inside sample at `b`.
    let band_edge = |mut a: f64, mut b: f64| -> f64 {
        for _ in 0..200 {
            if (b - a).abs() <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            if g(mid).abs() <= ztol {
                b = mid;
            } else {
                a = mid;
            }
        }
        b
    };

    let mut roots: Vec<LineRoot> = Vec::new();
    let mut i = 0;
    while i < stations {
        if values[i].abs() <= ztol {
            // Plateau run [i, j].
            let mut j = i;
            while j + 1 < stations && values[j + 1].abs() <= ztol {
                j += 1;
            }
            if j > i {
                let left = if i > 0 {
                    band_edge(s_at(i - 1), s_at(i))
                } else {
                    s_at(0)
                };
                let right = if j + 1 < stations {
                    band_edge(s_at(j + 1), s_at(j))
                } else {
                    s_at(stations - 1)
                };
                roots.push(LineRoot::Interval(left, right));
            } else {
                roots.push(LineRoot::Point(s_at(i)));
            }
            i = j + 1;
        } else {
            if i + 1 < stations
                && values[i + 1].abs() > ztol
                && (values[i] > 0.0) != (values[i + 1] > 0.0)
            {
                let rising = values[i + 1] > 0.0;
                roots.push(LineRoot::Point(bisect(s_at(i), s_at(i + 1), rising)));
            }
            i += 1;
        }
    }

    // Merge near-coincident point roots.
    let mut merged: Vec<LineRoot> = Vec::with_capacity(roots.len());
    for r in roots {
        match (merged.last(), r) {
            (Some(LineRoot::Point(prev)), LineRoot::Point(s))
                if (s - prev).abs() < ROOT_MERGE_TOL => {}
            _ => merged.push(r),
        }
    }
    merged
}

/// Sweeps a nondegenerate hyperbola given by its foci with lines parallel to
/// the focal segment, offset along the Birkhoff transversal, and assembles
/// the two branch polylines. Root intervals arise for flat norms and are
/// flagged as segments.
pub fn sweep_trace_hyperbola_foci(
    ball: &UnitBall,
    spec: &ConicSpec,
    extent: f64,
    n_lines: usize,
    tol: f64,
) -> Result<TraceReport> {
    let (f1, f2, a) = match spec {
        ConicSpec::HyperbolaFoci { f1, f2, a } => (*f1, *f2, *a),
        other => {
            return Err(Error::InvalidSpec(format!(
                "hyperbola sweep needs foci form, got {}",
                other.kind_name()
            )))
        }
    };
    spec.validate(ball)?;
    match classify_degeneracy(ball, spec) {
        Degeneracy::Nondegenerate => {}
        Degeneracy::Empty => return Err(Error::EmptyLocus),
        other => return Err(Error::DegenerateLocus(other.tag())),
    }

    let center = (f1 + f2) * 0.5;
    let axis = (f2 - f1).normalized().expect("distinct foci");
    let focal_line = Line::new(center, f2 - f1)?;
    let transversal = birkhoff_transversal(ball, &focal_line);
    let scale = 1.0 + 2.0 * a + ball.norm(f2 - f1) + extent;
    let ztol = 1e-10 * scale;
    // Branch roots drift along the axis faster than the offset grows.
    let span = 2.0 * extent + ball.norm(f2 - f1);

    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut crossings = Vec::with_capacity(n_lines);
    let mut segment_marks: Vec<(usize, usize)> = Vec::new(); // (curve, point index of interval start)
    let mut max_residual = 0.0f64;

    for k in 0..n_lines {
        let offset = -extent + 2.0 * extent * k as f64 / (n_lines - 1) as f64;
        let base = center + transversal * offset;
        let point_at = |s: f64| base + axis * s;
        let mut line_count = LineCrossings::default();
        // Branch closer to f1 solves d = -2a, the other d = +2a.
        for (branch_id, curve) in [(0usize, &mut left), (1usize, &mut right)] {
            let g = |s: f64| {
                let (plus, minus) = hyperbola_branch_residuals(ball, f1, f2, a, point_at(s));
                if branch_id == 0 {
                    minus
                } else {
                    plus
                }
            };
            let roots = line_zero_set(&g, -span, span, DEFAULT_STATIONS, tol, ztol);
            for root in roots {
                match root {
                    LineRoot::Point(s) => {
                        line_count.point_roots += 1;
                        let p = point_at(s);
                        max_residual = max_residual.max(residual(ball, spec, p).abs());
                        curve.push(p);
                    }
                    LineRoot::Interval(s1, s2) => {
                        line_count.interval_roots += 1;
                        let p1 = point_at(s1);
                        let p2 = point_at(s2);
                        max_residual = max_residual
                            .max(residual(ball, spec, p1).abs())
                            .max(residual(ball, spec, p2).abs());
                        segment_marks.push((branch_id, curve.len()));
                        curve.push(p1);
                        curve.push(p2);
                    }
                }
            }
        }
        crossings.push(line_count);
    }

    let residual_tol = max_residual.max(1e-15);
    let curves = vec![
        PolyCurve::new(left, false, residual_tol),
        PolyCurve::new(right, false, residual_tol),
    ];
    let mut segments = detected_segments_of(&curves, DEFAULT_ANGLE_TOL, DEFAULT_MIN_LENGTH_FRAC);
    for (curve, start) in segment_marks {
        let span = SegmentSpan {
            curve,
            start,
            end: start + 1,
        };
        if !segments
            .iter()
            .any(|s| s.curve == span.curve && s.start <= span.start && s.end >= span.end)
        {
            segments.push(span);
        }
    }

    Ok(TraceReport {
        curves,
        segments,
        degeneracy: Degeneracy::Nondegenerate,
        region: None,
        crossings_per_line: crossings,
    })
}

/// Sweeps a leading-line conic with gamma <= 1 (parabola or hyperbola) along
/// lines in the transversal direction, stationed on the leading line. The
/// parabola yields one curve on the focal side; the hyperbola yields one
/// curve on each side of the line.
pub fn sweep_trace_leading_line(
    ball: &UnitBall,
    spec: &ConicSpec,
    extent: f64,
    n_lines: usize,
    tol: f64,
) -> Result<TraceReport> {
    let (focus, line, gamma) = match spec {
        ConicSpec::LeadingLine { focus, line, gamma } if *gamma <= 1.0 => (*focus, *line, *gamma),
        other => {
            return Err(Error::InvalidSpec(format!(
                "leading-line sweep needs gamma <= 1, got {}",
                other.kind_name()
            )))
        }
    };
    spec.validate(ball)?;

    let along = line.direction().normalized().expect("line direction");
    let mut transversal = birkhoff_transversal(ball, &line);
    // Orient the transversal toward the focus: the focal side is t > 0.
    if line.signed_offset(focus) * line.unit_normal().dot(transversal) < 0.0 {
        transversal = -transversal;
    }
    let focus_height = ball.dist_point_line(focus, &line);
    let scale = 1.0 + focus_height + extent;
    let ztol = 1e-10 * scale;
    // The parabola height grows quadratically in the station coordinate, so
    // the transversal search window must outgrow the station extent.
    let span = 2.0 * extent + 2.0 * focus_height + extent * extent / (1.0 + focus_height);

    let mut focal_side = Vec::new();
    let mut far_side = Vec::new();
    let mut crossings = Vec::with_capacity(n_lines);
    let mut segment_marks: Vec<(usize, usize)> = Vec::new();
    let mut max_residual = 0.0f64;

    for k in 0..n_lines {
        let s = -extent + 2.0 * extent * k as f64 / (n_lines - 1) as f64;
        let station = line.point() + along * s;
        let point_at = |t: f64| station + transversal * t;
        let g = |t: f64| residual(ball, spec, point_at(t));
        let mut line_count = LineCrossings::default();

        let mut sides: Vec<(usize, f64, f64)> = vec![(0, 0.0, span)];
        if gamma < 1.0 {
            sides.push((1, -span, 0.0));
        }
        for (curve_id, lo, hi) in sides {
            let curve: &mut Vec<Vec2> = if curve_id == 0 {
                &mut focal_side
            } else {
                &mut far_side
            };
            let mut roots = line_zero_set(&g, lo, hi, DEFAULT_STATIONS, tol, ztol);
            // The station itself sits on the leading line where g < 0; a
            // zero right at t = 0 can only be sampling noise.
            roots.retain(|r| match r {
                LineRoot::Point(t) => t.abs() > 10.0 * tol,
                LineRoot::Interval(..) => true,
            });
            for root in roots {
                match root {
                    LineRoot::Point(t) => {
                        line_count.point_roots += 1;
                        let p = point_at(t);
                        max_residual = max_residual.max(residual(ball, spec, p).abs());
                        curve.push(p);
                    }
                    LineRoot::Interval(t1, t2) => {
                        line_count.interval_roots += 1;
                        segment_marks.push((curve_id, curve.len()));
                        for t in [t1, t2] {
                            let p = point_at(t);
                            max_residual = max_residual.max(residual(ball, spec, p).abs());
                            curve.push(p);
                        }
                    }
                }
            }
        }
        crossings.push(line_count);
    }

    let residual_tol = max_residual.max(1e-15);
    let mut curves = vec![PolyCurve::new(focal_side, false, residual_tol)];
    if gamma < 1.0 {
        curves.push(PolyCurve::new(far_side, false, residual_tol));
    }
    curves.retain(|c| !c.is_empty());
    let mut segments = detected_segments_of(&curves, DEFAULT_ANGLE_TOL, DEFAULT_MIN_LENGTH_FRAC);
    for (curve, start) in segment_marks {
        if curve < curves.len() {
            let span = SegmentSpan {
                curve,
                start,
                end: start + 1,
            };
            if !segments
                .iter()
                .any(|s| s.curve == span.curve && s.start <= span.start && s.end >= span.end)
            {
                segments.push(span);
            }
        }
    }

    Ok(TraceReport {
        curves,
        segments,
        degeneracy: Degeneracy::Nondegenerate,
        region: None,
        crossings_per_line: crossings,
    })
}

fn detected_segments_of(
    curves: &[PolyCurve],
    angle_tol: f64,
    min_length_frac: f64,
) -> Vec<SegmentSpan> {
    let mut out = Vec::new();
    for (ci, curve) in curves.iter().enumerate() {
        let min_length = min_length_frac * curve.diameter();
        for (start, end) in detect_segments(curve, angle_tol, min_length) {
            out.push(SegmentSpan {
                curve: ci,
                start,
                end,
            });
        }
    }
    out
}

/// Membership of every cell center of a grid over `bbox`.
pub fn region_grid(
    ball: &UnitBall,
    spec: &ConicSpec,
    bbox: BBox,
    nx: usize,
    ny: usize,
    tol: f64,
) -> Result<RegionGrid> {
    if nx == 0 || ny == 0 {
        return Err(Error::EmptyBBox);
    }
    let mut cells = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        let y = bbox.min.y + (iy as f64 + 0.5) * bbox.height() / ny as f64;
        for ix in 0..nx {
            let x = bbox.min.x + (ix as f64 + 0.5) * bbox.width() / nx as f64;
            cells.push(membership(ball, spec, Vec2::new(x, y), tol));
        }
    }
    Ok(RegionGrid {
        bbox,
        nx,
        ny,
        cells,
    })
}

/// Maximal runs of consecutive edges whose directions differ by at most
/// `angle_tol` radians, kept when the run is at least `min_length` long.
/// Spans are (start point, end point); on closed curves a run may wrap
/// through the seam, reported with end < start.
pub fn detect_segments(curve: &PolyCurve, angle_tol: f64, min_length: f64) -> Vec<(usize, usize)> {
    let edges = curve.edges();
    let m = edges.len();
    if m < 2 {
        return Vec::new();
    }
    let turn = |a: Vec2, b: Vec2| a.cross(b).atan2(a.dot(b)).abs();
    // breaks[i] marks a direction change between edge i and edge i+1 (cyclic).
    let pair_count = if curve.closed { m } else { m - 1 };
    let breaks: Vec<bool> = (0..pair_count)
        .map(|i| turn(edges[i], edges[(i + 1) % m]) > angle_tol)
        .collect();

    let qualify = |start_edge: usize, len_edges: usize, out: &mut Vec<(usize, usize)>| {
        if len_edges < 2 {
            return;
        }
        let length: f64 = (0..len_edges)
            .map(|k| edges[(start_edge + k) % m].hypot())
            .sum();
        if length >= min_length {
            let n_pts = curve.points.len();
            let start = start_edge % n_pts;
            let end = (start_edge + len_edges) % n_pts;
            out.push((start, end));
        }
    };

    let mut spans = Vec::new();
    if curve.closed {
        if breaks.iter().all(|b| !b) {
            qualify(0, m, &mut spans);
            return spans;
        }
        let first_break = breaks.iter().position(|&b| b).unwrap();
        // Scan runs starting after each break, cyclically.
        let mut run_start = first_break + 1;
        let mut len = 1;
        for step in 1..m {
            let i = (first_break + step) % m; // edge index
            if breaks[i] {
                qualify(run_start % m, len, &mut spans);
                run_start = i + 1;
                len = 1;
            } else {
                len += 1;
            }
        }
        qualify(run_start % m, len, &mut spans);
    } else {
        let mut run_start = 0;
        let mut len = 1;
        for (i, brk) in breaks.iter().enumerate() {
            if *brk {
                qualify(run_start, len, &mut spans);
                run_start = i + 1;
                len = 1;
            } else {
                len += 1;
            }
        }
        qualify(run_start, len, &mut spans);
    }
    spans
}

/// Convexity of a closed polyline: all consecutive edge cross products share
/// one sign up to `tol` (normalized by edge lengths).
pub fn convexity_check(curve: &PolyCurve, tol: f64) -> Result<Convexity> {
    if !curve.closed {
        return Err(Error::OpenCurve);
    }
    if curve.len() < 3 {
        return Err(Error::TooFewPoints);
    }
    let edges = curve.edges();
    let m = edges.len();
    let normalized: Vec<f64> = (0..m)
        .map(|i| {
            let a = edges[i];
            let b = edges[(i + 1) % m];
            a.cross(b) / (a.hypot() * b.hypot())
        })
        .collect();
    let total: f64 = normalized.iter().sum();
    let sign = if total >= 0.0 { 1.0 } else { -1.0 };
    let mut witness = None;
    let mut worst = -f64::INFINITY;
    for (i, &c) in normalized.iter().enumerate() {
        let violation = -sign * c;
        if violation > tol && violation > worst {
            worst = violation;
            witness = Some(i);
        }
    }
    Ok(match witness {
        None => Convexity::Convex,
        Some(i) => Convexity::Nonconvex {
            witness: (i + 1) % m,
        },
    })
}

/// Symmetric max-min Euclidean distance between the two point samples.
pub fn hausdorff_distance(c1: &PolyCurve, c2: &PolyCurve) -> f64 {
    fn directed(a: &[Vec2], b: &[Vec2]) -> f64 {
        let mut worst = 0.0f64;
        for p in a {
            let mut best = f64::INFINITY;
            for q in b {
                let d = (*p - *q).dot(*p - *q);
                if d < best {
                    best = d;
                }
            }
            if best > worst {
                worst = best;
            }
        }
        worst.sqrt()
    }
    directed(&c1.points, &c2.points).max(directed(&c2.points, &c1.points))
}

/// Supporting lines of the leading circle `r K` through an exterior focus,
/// with the contact face on the circle. Point contact yields an asymptote
/// line through the origin; segment contact yields a cone of directions.
pub fn asymptote_candidates(ball: &UnitBall, r: f64, focus: Vec2) -> Result<AsymptoteSet> {
    if r <= 0.0 {
        return Err(Error::NonpositiveRadius);
    }
    if ball.norm(focus) <= r {
        return Err(Error::FocusNotExterior);
    }
    let phi = |theta: f64| {
        let n = Vec2::new(theta.cos(), theta.sin());
        n.dot(focus) - r * ball.support(n).expect("unit normal")
    };

    const SCAN: usize = 4096;
    let mut items = Vec::new();
    let mut thetas: Vec<f64> = Vec::new();
    let tau = 2.0 * std::f64::consts::PI;
    let values: Vec<f64> = (0..SCAN)
        .map(|i| phi(tau * i as f64 / SCAN as f64))
        .collect();
    for i in 0..SCAN {
        let j = (i + 1) % SCAN;
        let (a, b) = (values[i], values[j]);
        if a == 0.0 {
            thetas.push(tau * i as f64 / SCAN as f64);
            continue;
        }
        if (a > 0.0) != (b > 0.0) && b != 0.0 {
            let mut lo = tau * i as f64 / SCAN as f64;
            let mut hi = tau * (i + 1) as f64 / SCAN as f64;
            let rising = b > 0.0;
            for _ in 0..90 {
                if hi - lo <= 1e-13 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if (phi(mid) > 0.0) == rising {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            thetas.push(0.5 * (lo + hi));
        }
    }
    thetas.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    for theta in thetas {
        let n = Vec2::new(theta.cos(), theta.sin());
        let h = r * ball.support(n)?;
        let tangent_line = Line::new(n * h, n.rot90())?;
        let contact = ball.contact_face(n)?.scale(r);
        let shape = match contact {
            ContactFace::Point(p) => AsymptoteShape::Line(Line::new(Vec2::ZERO, p)?),
            ContactFace::Segment(p1, p2) => {
                debug_assert!(p1.cross(p2).abs() > 0.0, "cone directions independent");
                AsymptoteShape::Cone {
                    apex: Vec2::ZERO,
                    dir1: p1,
                    dir2: p2,
                }
            }
        };
        items.push(AsymptoteItem {
            tangent_normal: n,
            tangent_line,
            contact,
            shape,
        });
    }
    Ok(AsymptoteSet { items })
}
