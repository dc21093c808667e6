//! Property tests for the norm engine, the locus residuals and the tracer.

use proptest::prelude::*;

use conics_core::ball::{ContactFace, UnitBall};
use conics_core::birkhoff::{golden_section_min, is_birkhoff_orthogonal, min_norm_along};
use conics_core::geom::{Line, Vec2};
use conics_core::loci::{
    membership, residual, tangency_membership_leading_circle, ConicSpec, Membership,
};
use conics_core::tracer::{convexity_check, hausdorff_distance, radial_trace, Convexity};

fn sample_balls() -> Vec<UnitBall> {
    vec![
        UnitBall::lp(1.0).unwrap(),
        UnitBall::lp(1.5).unwrap(),
        UnitBall::euclidean(),
        UnitBall::lp(3.0).unwrap(),
        UnitBall::lp(5.0).unwrap(),
        UnitBall::lp_infinity(),
        UnitBall::regular_polygon(8, std::f64::consts::PI / 8.0).unwrap(),
        UnitBall::regular_polygon(6, 0.35).unwrap(),
    ]
}

fn ball_strategy() -> impl Strategy<Value = UnitBall> {
    (0usize..sample_balls().len()).prop_map(|i| sample_balls()[i].clone())
}

fn vec_strategy(limit: f64) -> impl Strategy<Value = Vec2> {
    (-limit..limit, -limit..limit).prop_map(|(x, y)| Vec2::new(x, y))
}

fn nonzero_vec(limit: f64) -> impl Strategy<Value = Vec2> {
    vec_strategy(limit).prop_filter("nonzero", |v| v.hypot() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_axioms(ball in ball_strategy(), v in vec_strategy(5.0), w in vec_strategy(5.0), t in -4.0f64..4.0) {
        let nv = ball.norm(v);
        prop_assert!(nv >= 0.0);
        // Homogeneity.
        prop_assert!((ball.norm(v * t) - t.abs() * nv).abs() <= 1e-9 * (1.0 + t.abs() * nv));
        // Triangle inequality with rounding slack.
        prop_assert!(ball.norm(v + w) <= nv + ball.norm(w) + 1e-9);
        // Definiteness near zero.
        if nv <= 1e-12 {
            prop_assert!(v.hypot() <= 1e-9);
        }
    }

    #[test]
    fn contact_face_attains_support(ball in ball_strategy(), n in nonzero_vec(3.0)) {
        let support = ball.support(n).unwrap();
        let face = ball.contact_face(n).unwrap();
        let points = match face {
            ContactFace::Point(p) => vec![p],
            ContactFace::Segment(p, q) => vec![p, q, (p + q) * 0.5],
        };
        for p in points {
            prop_assert!((p.dot(n) - support).abs() <= 1e-9 * (1.0 + support.abs()));
            prop_assert!((ball.norm(p) - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn birkhoff_orthogonality_is_scale_invariant(
        ball in ball_strategy(),
        x in nonzero_vec(3.0),
        y in nonzero_vec(3.0),
        s in 0.1f64..8.0,
        t in 0.1f64..8.0,
    ) {
        let margin = ball.norm(x) - min_norm_along(&ball, x, y).unwrap();
        // Skip pairs whose classification sits inside the tolerance band.
        prop_assume!(margin <= 1e-9 || margin >= 1e-6 * ball.norm(x));
        let base = is_birkhoff_orthogonal(&ball, x, y, 1e-9 * ball.norm(x)).unwrap();
        let scaled = is_birkhoff_orthogonal(&ball, x * s, y * t, 1e-9 * ball.norm(x * s)).unwrap();
        prop_assert_eq!(base, scaled);
    }

    #[test]
    fn leading_line_term_is_linear_on_rays(
        ball in ball_strategy(),
        u in nonzero_vec(2.0),
        t in 0.0f64..6.0,
        gamma in 0.4f64..3.0,
    ) {
        let focus = Vec2::new(0.3, 1.1);
        let z = focus + u * t;
        let lhs = gamma * ball.norm(z - focus);
        let rhs = gamma * t * ball.norm(u);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn euclidean_d_segment_is_the_segment(x in vec_strategy(3.0), y in vec_strategy(3.0), lambda in 0.0f64..1.0, off in 1e-3f64..2.0) {
        prop_assume!((x - y).hypot() > 1e-2);
        let ball = UnitBall::euclidean();
        let spec = ConicSpec::DSegment { x, y };
        let on = x + (y - x) * lambda;
        prop_assert_eq!(membership(&ball, &spec, on, 1e-9), Membership::On);
        let normal = (y - x).rot90().normalized().unwrap();
        let outside = on + normal * off;
        prop_assert_eq!(membership(&ball, &spec, outside, 1e-9), Membership::Exterior);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radial_ellipse_traces_are_convex_and_on_locus(
        ball in ball_strategy(),
        fx in -1.2f64..1.2,
        fy in -1.2f64..1.2,
        slack in 0.2f64..2.0,
    ) {
        let f1 = Vec2::new(fx, fy);
        let f2 = Vec2::new(-fy * 0.8 - 0.4, fx * 0.8 + 0.2);
        prop_assume!((f1 - f2).hypot() > 1e-2);
        let a = 0.5 * ball.norm(f1 - f2) + slack;
        let spec = ConicSpec::EllipseFoci { f1, f2, a };
        let curve = radial_trace(&ball, &spec, (f1 + f2) * 0.5, 128, 1e-10).unwrap();
        for p in &curve.points {
            prop_assert!(residual(&ball, &spec, *p).abs() <= curve.residual_tol);
        }
        prop_assert!(matches!(convexity_check(&curve, 1e-6).unwrap(), Convexity::Convex));
    }
}

/// Support function versus a refined maximum of <n, .> over boundary samples.
#[test]
fn support_matches_refined_boundary_maximum() {
    for ball in sample_balls() {
        for k in 0..32 {
            let angle = 0.1 + 2.0 * std::f64::consts::PI * k as f64 / 32.0;
            let n = Vec2::new(angle.cos(), angle.sin()) * 1.3;
            let value_at = |theta: f64| {
                let u = Vec2::new(theta.cos(), theta.sin());
                let s = u / ball.norm(u);
                s.dot(n)
            };
            let mut best_theta = 0.0;
            let mut best = f64::NEG_INFINITY;
            let step = 2.0 * std::f64::consts::PI / 4096.0;
            for i in 0..4096 {
                let theta = step * i as f64;
                let v = value_at(theta);
                if v > best {
                    best = v;
                    best_theta = theta;
                }
            }
            // The angular grid alone misses vertices by O(step); refine.
            let (_, neg_max) = golden_section_min(
                |t| -value_at(t),
                best_theta - step,
                best_theta + step,
                1e-12,
            );
            let sampled = best.max(-neg_max);
            let support = ball.support(n).unwrap();
            assert!(
                (support - sampled).abs() <= 1e-6 * (1.0 + support),
                "{}: support {support} vs sampled {sampled}",
                ball.describe()
            );
        }
    }
}

/// A hyperbola with 2a beyond the focal distance has no points: the residual
/// stays strictly positive on a large random sample.
#[test]
fn hyperbola_beyond_focal_distance_is_empty() {
    let mut state = 0x2545f4914f6cdd1du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for ball in sample_balls() {
        let f1 = Vec2::new(-1.0, 0.4);
        let f2 = Vec2::new(1.0, -0.4);
        let two_c = ball.norm(f1 - f2);
        let a = 0.75 * two_c; // 2a = 1.5 * 2c
        let spec = ConicSpec::HyperbolaFoci { f1, f2, a };
        // The residual tops out at 2c - 2a < 0: no sample may come near zero.
        let mut highest = f64::NEG_INFINITY;
        for _ in 0..100_000 {
            let z = Vec2::new(next() * 40.0 - 20.0, next() * 40.0 - 20.0);
            let f = residual(&ball, &spec, z);
            highest = highest.max(f);
            // Triangle-inequality floor.
            assert!(f >= -(2.0 * a + two_c) - 1e-9);
        }
        assert!(highest < -1e-9, "{}: found a near-member", ball.describe());
    }
}

/// The reduced leading-circle residual and the direct two-disk tangency
/// test agree on membership.
#[test]
fn reduced_and_direct_leading_circle_agree() {
    let tol = 1e-9;
    for ball in sample_balls() {
        let focus = Vec2::new(0.8, 0.3);
        let r = 2.6;
        let ellipse = ConicSpec::EllipseLeadingCircle { r, focus };
        let hyp_focus = Vec2::new(3.1, 1.2);
        let hyperbola = ConicSpec::HyperbolaLeadingCircle {
            r: 1.4,
            focus: hyp_focus,
        };
        assert!(ellipse.validate(&ball).is_ok());
        assert!(hyperbola.validate(&ball).is_ok(), "{}", ball.describe());

        let curve = radial_trace(&ball, &ellipse, focus * 0.5, 256, 1e-12).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for k in 0..10_000 {
            // Half the samples hug the locus, half roam the plane.
            let z = if k % 2 == 0 {
                let p = curve.points[k % curve.len()];
                p + Vec2::new(next() - 0.5, next() - 0.5) * (4.0 * tol)
            } else {
                Vec2::new(next() * 8.0 - 4.0, next() * 8.0 - 4.0)
            };
            for spec in [&ellipse, &hyperbola] {
                let near = residual(&ball, spec, z).abs() <= tol;
                if near {
                    assert!(
                        tangency_membership_leading_circle(&ball, spec, z, 2.0 * tol).unwrap(),
                        "{}: reduced-on point fails direct tangency at ({}, {})",
                        ball.describe(),
                        z.x,
                        z.y
                    );
                }
                if tangency_membership_leading_circle(&ball, spec, z, tol).unwrap() {
                    assert!(
                        residual(&ball, spec, z).abs() <= 2.0 * tol,
                        "{}: tangent point far from reduced locus",
                        ball.describe()
                    );
                }
            }
        }
    }
}

/// Hyperbola branches by foci are mirror images through the center.
#[test]
fn hyperbola_branches_are_centrally_symmetric() {
    use conics_core::tracer::sweep_trace_hyperbola_foci;
    use conics_core::PolyCurve;
    for ball in [
        UnitBall::euclidean(),
        UnitBall::lp(1.5).unwrap(),
        UnitBall::lp_infinity(),
    ] {
        let x = Vec2::new(1.0, 0.2);
        let spec = ConicSpec::HyperbolaFoci {
            f1: -x,
            f2: x,
            a: 0.6,
        };
        let report = sweep_trace_hyperbola_foci(&ball, &spec, 5.0, 64, 1e-12).unwrap();
        assert_eq!(report.curves.len(), 2);
        let reflected = PolyCurve::new(
            report.curves[0].points.iter().map(|p| -*p).collect(),
            false,
            report.curves[0].residual_tol,
        );
        let d = hausdorff_distance(&reflected, &report.curves[1]);
        assert!(d <= 1e-6, "{}: branch asymmetry {d}", ball.describe());
    }
}

/// Sweep assembly keeps stations ordered: the transversal coordinate along
/// each branch curve never decreases.
#[test]
fn sweep_curves_are_monotone_in_the_offset() {
    use conics_core::birkhoff::birkhoff_transversal;
    use conics_core::tracer::sweep_trace_hyperbola_foci;
    for ball in sample_balls() {
        let x = Vec2::new(1.0, 0.0);
        let spec = ConicSpec::HyperbolaFoci {
            f1: -x,
            f2: x,
            a: 0.5,
        };
        let report = sweep_trace_hyperbola_foci(&ball, &spec, 4.0, 48, 1e-12).unwrap();
        let axis = Line::new(Vec2::ZERO, x).unwrap();
        let v = birkhoff_transversal(&ball, &axis);
        let n = axis.unit_normal();
        // Offset recovered through the dual pairing with the line normal.
        let coord = |p: Vec2| p.dot(n) / v.dot(n);
        for curve in &report.curves {
            let mut last = f64::NEG_INFINITY;
            for p in &curve.points {
                let o = coord(*p);
                assert!(
                    o >= last - 1e-9,
                    "{}: offset went backwards",
                    ball.describe()
                );
                last = o;
            }
        }
    }
}

/// Doubling the sample count keeps successive traces within a C/n envelope.
#[test]
fn trace_refinement_converges() {
    let ball = UnitBall::lp(3.0).unwrap();
    let spec = ConicSpec::EllipseFoci {
        f1: Vec2::new(-1.0, 0.0),
        f2: Vec2::new(1.0, 0.3),
        a: 1.6,
    };
    let seed = Vec2::new(0.0, 0.15);
    let trace = |n: usize| radial_trace(&ball, &spec, seed, n, 1e-12).unwrap();
    let d = |n: usize| hausdorff_distance(&trace(n), &trace(2 * n));
    let d0 = d(90);
    let c = 1.5 * d0 * 90.0;
    for n in [180usize, 360] {
        let dn = d(n);
        assert!(dn <= c / n as f64, "n={n}: {dn} exceeds {}", c / n as f64);
    }
}
