//! Deterministic emitters: CSV point lists, P2 occupancy grids and layered
//! SVG drawings of a traced scene.

use std::fmt::Write as _;

use crate::ball::UnitBall;
use crate::error::Result;
use crate::geom::{BBox, Line, Vec2};
use crate::loci::{classify_degeneracy, ConicSpec, Degeneracy, Membership};
use crate::scene::Scene;
use crate::tracer::{
    asymptote_candidates, radial_trace, region_grid, sweep_trace_hyperbola_foci,
    sweep_trace_leading_line, AsymptoteSet, AsymptoteShape, PolyCurve, RegionGrid, SegmentSpan,
    TraceReport,
};

/// Everything extracted for one locus of a scene.
#[derive(Clone, Debug)]
pub struct SpecRender {
    pub spec: ConicSpec,
    pub degeneracy: Degeneracy,
    pub curves: Vec<PolyCurve>,
    pub segments: Vec<SegmentSpan>,
    pub region: Option<RegionGrid>,
    pub asymptotes: Option<AsymptoteSet>,
}

/// Grid resolution used when a locus falls back to rasterization.
pub const REGION_RESOLUTION: usize = 256;

fn rasterize(scene: &Scene, spec: &ConicSpec, degeneracy: Degeneracy) -> Result<SpecRender> {
    let cell = (scene.bbox.width() / REGION_RESOLUTION as f64)
        .max(scene.bbox.height() / REGION_RESOLUTION as f64);
    let grid = region_grid(
        &scene.ball,
        spec,
        scene.bbox,
        REGION_RESOLUTION,
        REGION_RESOLUTION,
        0.75 * cell,
    )?;
    Ok(SpecRender {
        spec: spec.clone(),
        degeneracy,
        curves: Vec::new(),
        segments: Vec::new(),
        region: Some(grid),
        asymptotes: None,
    })
}

fn from_report(spec: &ConicSpec, report: TraceReport) -> SpecRender {
    SpecRender {
        spec: spec.clone(),
        degeneracy: report.degeneracy,
        curves: report.curves,
        segments: report.segments,
        region: report.region,
        asymptotes: None,
    }
}

/// Traces every locus of the scene: radial extraction for bounded convex
/// loci, sweeps for the unbounded ones, occupancy grids for set-valued
/// degenerate cases. An empty locus is an error.
pub fn trace_scene(scene: &Scene) -> Result<Vec<SpecRender>> {
    scene.validate()?;
    let ball = &scene.ball;
    let n = scene.trace.n;
    let tol = scene.trace.tol;
    let mut out = Vec::with_capacity(scene.specs.len());
    for spec in &scene.specs {
        let degeneracy = classify_degeneracy(ball, spec);
        if degeneracy == Degeneracy::Empty {
            return Err(crate::error::Error::EmptyLocus);
        }
        let extent = scene.extent_for(spec);
        let render = match spec {
            _ if degeneracy != Degeneracy::Nondegenerate => rasterize(scene, spec, degeneracy)?,
            ConicSpec::EllipseFoci { f1, f2, .. } => {
                let seed = (*f1 + *f2) * 0.5;
                let curve = radial_trace(ball, spec, seed, n, tol)?;
                let segments = curve_segments(&curve);
                SpecRender {
                    spec: spec.clone(),
                    degeneracy,
                    curves: vec![curve],
                    segments,
                    region: None,
                    asymptotes: None,
                }
            }
            ConicSpec::EllipseLeadingCircle { focus, .. } => {
                let curve = radial_trace(ball, spec, *focus * 0.5, n, tol)?;
                let segments = curve_segments(&curve);
                SpecRender {
                    spec: spec.clone(),
                    degeneracy,
                    curves: vec![curve],
                    segments,
                    region: None,
                    asymptotes: None,
                }
            }
            ConicSpec::LeadingLine { focus, gamma, .. } if *gamma > 1.0 => {
                let curve = radial_trace(ball, spec, *focus, n, tol)?;
                let segments = curve_segments(&curve);
                SpecRender {
                    spec: spec.clone(),
                    degeneracy,
                    curves: vec![curve],
                    segments,
                    region: None,
                    asymptotes: None,
                }
            }
            ConicSpec::LeadingLine { .. } => {
                from_report(spec, sweep_trace_leading_line(ball, spec, extent, n, tol)?)
            }
            ConicSpec::HyperbolaFoci { .. } => from_report(
                spec,
                sweep_trace_hyperbola_foci(ball, spec, extent, n, tol)?,
            ),
            ConicSpec::HyperbolaLeadingCircle { r, focus } => {
                let reduced = ConicSpec::HyperbolaFoci {
                    f1: Vec2::ZERO,
                    f2: *focus,
                    a: r / 2.0,
                };
                let mut render = from_report(
                    spec,
                    sweep_trace_hyperbola_foci(ball, &reduced, extent, n, tol)?,
                );
                render.asymptotes = Some(asymptote_candidates(ball, *r, *focus)?);
                render
            }
            ConicSpec::Bisector { .. } | ConicSpec::DSegment { .. } => {
                rasterize(scene, spec, degeneracy)?
            }
        };
        out.push(render);
    }
    Ok(out)
}

fn curve_segments(curve: &PolyCurve) -> Vec<SegmentSpan> {
    crate::tracer::detect_segments(
        curve,
        crate::tracer::DEFAULT_ANGLE_TOL,
        crate::tracer::DEFAULT_MIN_LENGTH_FRAC * curve.diameter(),
    )
    .into_iter()
    .map(|(start, end)| SegmentSpan {
        curve: 0,
        start,
        end,
    })
    .collect()
}

/// One `x,y` row per point, a blank line between curves.
pub fn emit_csv(renders: &[SpecRender]) -> String {
    let mut out = String::new();
    let mut first = true;
    for render in renders {
        for curve in &render.curves {
            if !first {
                out.push('\n');
            }
            first = false;
            for p in &curve.points {
                let _ = writeln!(out, "{},{}", p.x, p.y);
            }
        }
    }
    out
}

/// P2 grid, rows from the top: the locus is black, interior gray,
/// exterior white.
pub fn emit_pgm(grid: &RegionGrid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "P2");
    let _ = writeln!(out, "{} {}", grid.nx, grid.ny);
    let _ = writeln!(out, "255");
    for iy in (0..grid.ny).rev() {
        let mut row = String::new();
        for ix in 0..grid.nx {
            if ix > 0 {
                row.push(' ');
            }
            let v = match grid.cell(ix, iy) {
                Membership::On => 0,
                Membership::Interior => 120,
                Membership::Exterior => 255,
            };
            let _ = write!(row, "{v}");
        }
        let _ = writeln!(out, "{row}");
    }
    out
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

struct SvgFrame {
    bbox: BBox,
    scale: f64,
}

impl SvgFrame {
    fn map(&self, p: Vec2) -> (f64, f64) {
        (
            (p.x - self.bbox.min.x) * self.scale,
            (self.bbox.max.y - p.y) * self.scale,
        )
    }

    fn path_of(&self, points: &[Vec2], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in points.iter().enumerate() {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
        }
        if closed {
            d.push('Z');
        }
        d.trim_end().to_string()
    }
}

/// Intersection of a line with the box, as a drawable chord.
fn clip_line(line: &Line, bbox: &BBox) -> Option<(Vec2, Vec2)> {
    let p = line.point();
    let d = line.direction();
    let mut t0 = f64::NEG_INFINITY;
    let mut t1 = f64::INFINITY;
    for (start, delta, min, max) in [
        (p.x, d.x, bbox.min.x, bbox.max.x),
        (p.y, d.y, bbox.min.y, bbox.max.y),
    ] {
        if delta.abs() < 1e-300 {
            if start < min || start > max {
                return None;
            }
        } else {
            let (a, b) = ((min - start) / delta, (max - start) / delta);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
    }
    if t0 >= t1 {
        return None;
    }
    Some((p + d * t0, p + d * t1))
}

fn ball_boundary(ball: &UnitBall, radius: f64) -> Vec<Vec2> {
    match ball {
        UnitBall::Polygon(poly) => poly.vertices().iter().map(|v| *v * radius).collect(),
        _ => (0..256)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / 256.0;
                let u = Vec2::new(a.cos(), a.sin());
                u * (radius / ball.norm(u))
            })
            .collect(),
    }
}

fn ray_to_box_edge(apex: Vec2, dir: Vec2, bbox: &BBox) -> Vec2 {
    let reach = bbox.width() + bbox.height();
    apex + dir * (reach / dir.hypot().max(1e-12))
}

/// Layered SVG drawing: unit circle, leading circles and lines, foci,
/// traced curves with straight runs highlighted, asymptotes and region
/// grids. Byte-identical output for identical inputs.
pub fn emit_svg(scene: &Scene, renders: &[SpecRender]) -> String {
    let bbox = scene.bbox;
    let width = 800.0f64;
    let scale = width / bbox.width();
    let height = bbox.height() * scale;
    let frame = SvgFrame { bbox, scale };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{width:.3}" height="{height:.3}" fill="white"/>"#
    );

    // Coordinate axes.
    let _ = writeln!(svg, r##"<g id="axes" stroke="#cccccc" stroke-width="1">"##);
    for axis in [
        Line::new(Vec2::ZERO, Vec2::new(1.0, 0.0)),
        Line::new(Vec2::ZERO, Vec2::new(0.0, 1.0)),
    ] {
        if let Some((a, b)) = axis.ok().and_then(|l| clip_line(&l, &bbox)) {
            let (x1, y1) = frame.map(a);
            let (x2, y2) = frame.map(b);
            let _ = writeln!(
                svg,
                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    // The unit circle of the norm.
    let unit = ball_boundary(&scene.ball, 1.0);
    let _ = writeln!(
        svg,
        r##"<g id="unit-circle"><path d="{}" fill="none" stroke="#444444" stroke-width="1" stroke-dasharray="4 3"/></g>"##,
        frame.path_of(&unit, true)
    );

    // Region grids first so curves draw on top.
    for (i, render) in renders.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if let Some(grid) = &render.region {
            let _ = writeln!(svg, r#"<g id="region-{i}">"#);
            let cw = bbox.width() / grid.nx as f64 * scale;
            let ch = bbox.height() / grid.ny as f64 * scale;
            for iy in 0..grid.ny {
                // Consecutive On cells in a row merge into one rect.
                let mut run: Option<(usize, usize)> = None;
                for ix in 0..=grid.nx {
                    let on = ix < grid.nx && grid.cell(ix, iy) == Membership::On;
                    match (on, run) {
                        (true, None) => run = Some((ix, ix)),
                        (true, Some((s, _))) => run = Some((s, ix)),
                        (false, Some((s, e))) => {
                            let x = s as f64 * cw;
                            let y = (grid.ny - 1 - iy) as f64 * ch;
                            let w = (e - s + 1) as f64 * cw;
                            let _ = writeln!(
                                svg,
                                r#"<rect x="{x:.3}" y="{y:.3}" width="{w:.3}" height="{ch:.3}" fill="{color}" fill-opacity="0.45" stroke="none"/>"#
                            );
                            run = None;
                        }
                        (false, None) => {}
                    }
                }
            }
            let _ = writeln!(svg, "</g>");
        }
    }

    for (i, render) in renders.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(svg, r#"<g id="locus-{i}">"#);

        // Reference geometry per locus kind.
        match &render.spec {
            ConicSpec::EllipseFoci { f1, f2, .. } | ConicSpec::HyperbolaFoci { f1, f2, .. } => {
                for f in [f1, f2] {
                    let (cx, cy) = frame.map(*f);
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="{color}"/>"#
                    );
                }
            }
            ConicSpec::EllipseLeadingCircle { r, focus }
            | ConicSpec::HyperbolaLeadingCircle { r, focus } => {
                let circle = ball_boundary(&scene.ball, *r);
                let _ = writeln!(
                    svg,
                    r#"<path d="{}" fill="none" stroke="{color}" stroke-width="0.8" stroke-dasharray="6 4"/>"#,
                    frame.path_of(&circle, true)
                );
                let (cx, cy) = frame.map(*focus);
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="{color}"/>"#
                );
            }
            ConicSpec::LeadingLine { focus, line, .. } => {
                if let Some((a, b)) = clip_line(line, &bbox) {
                    let (x1, y1) = frame.map(a);
                    let (x2, y2) = frame.map(b);
                    let _ = writeln!(
                        svg,
                        r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{color}" stroke-width="0.8" stroke-dasharray="6 4"/>"#
                    );
                }
                let (cx, cy) = frame.map(*focus);
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="{color}"/>"#
                );
            }
            ConicSpec::Bisector { x, y } | ConicSpec::DSegment { x, y } => {
                for f in [x, y] {
                    let (cx, cy) = frame.map(*f);
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="{color}"/>"#
                    );
                }
            }
        }

        for curve in &render.curves {
            let _ = writeln!(
                svg,
                r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.6"/>"#,
                frame.path_of(&curve.points, curve.closed)
            );
        }

        // Straight runs, drawn over the curve.
        for span in &render.segments {
            let curve = &render.curves[span.curve];
            let n = curve.points.len();
            let mut pts = Vec::new();
            let mut k = span.start;
            loop {
                pts.push(curve.points[k]);
                if k == span.end {
                    break;
                }
                k = (k + 1) % n;
            }
            let _ = writeln!(
                svg,
                r##"<path d="{}" fill="none" stroke="#000000" stroke-width="3" stroke-opacity="0.55"/>"##,
                frame.path_of(&pts, false)
            );
        }

        if let Some(asymptotes) = &render.asymptotes {
            for item in &asymptotes.items {
                match &item.shape {
                    AsymptoteShape::Line(l) => {
                        if let Some((a, b)) = clip_line(l, &bbox) {
                            let (x1, y1) = frame.map(a);
                            let (x2, y2) = frame.map(b);
                            let _ = writeln!(
                                svg,
                                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{color}" stroke-width="0.8" stroke-dasharray="2 3"/>"#
                            );
                        }
                    }
                    AsymptoteShape::Cone { apex, dir1, dir2 } => {
                        for dir in [dir1, dir2] {
                            for sign in [1.0, -1.0] {
                                let tip = ray_to_box_edge(*apex, *dir * sign, &bbox);
                                let (x1, y1) = frame.map(*apex);
                                let (x2, y2) = frame.map(tip);
                                let _ = writeln!(
                                    svg,
                                    r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{color}" stroke-width="0.8" stroke-dasharray="2 3"/>"#
                                );
                            }
                        }
                    }
                }
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    let _ = writeln!(svg, "</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::TraceParams;

    fn scene() -> Scene {
        Scene {
            ball: UnitBall::euclidean(),
            specs: vec![
                ConicSpec::EllipseFoci {
                    f1: Vec2::new(-3.0, 0.0),
                    f2: Vec2::new(3.0, 0.0),
                    a: 5.0,
                },
                ConicSpec::Bisector {
                    x: Vec2::new(-1.0, 0.0),
                    y: Vec2::new(1.0, 0.0),
                },
            ],
            trace: TraceParams {
                n: 128,
                extent: None,
                tol: 1e-10,
            },
            bbox: BBox::new(Vec2::new(-6.0, -5.0), Vec2::new(6.0, 5.0)).unwrap(),
            outputs: vec![],
        }
    }

    #[test]
    fn trace_scene_produces_curves_and_regions() {
        let renders = trace_scene(&scene()).unwrap();
        assert_eq!(renders.len(), 2);
        assert_eq!(renders[0].curves.len(), 1);
        assert!(renders[0].region.is_none());
        assert!(renders[1].curves.is_empty());
        assert!(renders[1].region.is_some());
    }

    #[test]
    fn empty_locus_is_an_error() {
        let mut s = scene();
        s.specs = vec![ConicSpec::EllipseFoci {
            f1: Vec2::new(-3.0, 0.0),
            f2: Vec2::new(3.0, 0.0),
            a: 1.0,
        }];
        assert!(matches!(
            trace_scene(&s),
            Err(crate::error::Error::EmptyLocus)
        ));
    }

    #[test]
    fn degenerate_loci_rasterize_instead_of_tracing() {
        // 2a equal to the focal distance: the ellipse collapses to the
        // d-segment set, which can be two-dimensional in a flat norm.
        let mut s = scene();
        s.ball = UnitBall::lp_infinity();
        s.specs = vec![
            ConicSpec::EllipseFoci {
                f1: Vec2::new(-1.0, 0.0),
                f2: Vec2::new(1.0, 0.0),
                a: 1.0,
            },
            ConicSpec::HyperbolaFoci {
                f1: Vec2::new(-1.0, 0.0),
                f2: Vec2::new(1.0, 0.0),
                a: 0.0,
            },
        ];
        let renders = trace_scene(&s).unwrap();
        assert_eq!(renders[0].degeneracy, Degeneracy::DSegmentSet);
        assert_eq!(renders[1].degeneracy, Degeneracy::BisectorSet);
        for render in &renders {
            assert!(render.curves.is_empty());
            let grid = render.region.as_ref().expect("rasterized");
            assert!(grid.count(Membership::On) > 0);
        }
        // The flat-norm d-segment of an edge-direction pair has interior
        // area, not just a curve.
        let on_fraction = renders[0].region.as_ref().unwrap().on_fraction();
        assert!(on_fraction > 0.01, "on fraction {on_fraction}");
    }

    #[test]
    fn emitters_are_deterministic() {
        let s = scene();
        let renders = trace_scene(&s).unwrap();
        let csv1 = emit_csv(&renders);
        let csv2 = emit_csv(&trace_scene(&s).unwrap());
        assert_eq!(csv1, csv2);
        assert!(csv1.contains('\n'));
        let svg1 = emit_svg(&s, &renders);
        let svg2 = emit_svg(&s, &renders);
        assert_eq!(svg1, svg2);
        assert!(svg1.starts_with("<svg"));
        assert!(svg1.contains("unit-circle"));
    }

    #[test]
    fn pgm_has_p2_header_and_full_rows() {
        let s = scene();
        let grid = region_grid(&s.ball, &s.specs[1], s.bbox, 32, 16, 0.1).unwrap();
        let text = emit_pgm(&grid);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("P2"));
        assert_eq!(lines.next(), Some("32 16"));
        assert_eq!(lines.next(), Some("255"));
        assert_eq!(lines.count(), 16);
    }
}
