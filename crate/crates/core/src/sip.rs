//! Semi-inner-product machinery for smooth strictly convex l_p planes:
//! the product [y, x], the duality map and its inverse, the generalized
//! adjoint, self-adjointness and projective conic zero directions.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ball::{dual_exponent, Exponent, UnitBall};
use crate::error::{Error, Result};
use crate::geom::Vec2;

/// A smooth strictly convex plane: an l_p ball with p in (1, oo).
/// These admit a unique semi-inner product in closed form.
#[derive(Clone, Copy, Debug)]
pub struct SipSpace {
    p: f64,
}

impl SipSpace {
    pub fn new(p: f64) -> Result<SipSpace> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::InvalidBall(format!(
                "semi-inner product needs 1 < p < oo, got {p}"
            )));
        }
        Ok(SipSpace { p })
    }

    pub fn from_ball(ball: &UnitBall) -> Result<SipSpace> {
        match ball {
            UnitBall::Lp(Exponent::Finite(p)) if *p > 1.0 => SipSpace::new(*p),
            _ => Err(Error::InvalidBall(
                "semi-inner product needs a smooth strictly convex lp ball".into(),
            )),
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn ball(&self) -> UnitBall {
        UnitBall::Lp(Exponent::Finite(self.p))
    }

    pub fn norm(&self, v: Vec2) -> f64 {
        self.ball().norm(v)
    }

    /// The semi-inner product [y, x] = ||x||^{2-p} sum_i y_i |x_i|^{p-1} sign(x_i).
    /// Linear in y, with [x, x] = ||x||^2. Returns 0 for x = 0.
    pub fn sip(&self, y: Vec2, x: Vec2) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        y.dot(self.duality_map(x))
    }

    /// J(x): the Euclidean representer of [., x].
    pub fn duality_map(&self, x: Vec2) -> Vec2 {
        if x.is_zero() {
            return Vec2::ZERO;
        }
        let p = self.p;
        let scale = self.norm(x).powf(2.0 - p);
        Vec2::new(
            scale * x.x.abs().powf(p - 1.0) * x.x.signum(),
            scale * x.y.abs().powf(p - 1.0) * x.y.signum(),
        )
    }

    /// Exact inverse of the duality map: the duality map of the dual
    /// exponent q = p / (p - 1).
    pub fn inverse_duality(&self, phi: Vec2) -> Vec2 {
        if phi.is_zero() {
            return Vec2::ZERO;
        }
        let q = dual_exponent(self.p);
        let dual = SipSpace { p: q };
        dual.duality_map(phi)
    }

    /// The generalized adjoint applied to y: the unique w with
    /// [A x, y] = [x, w] for all x. Generally nonlinear in y.
    pub fn generalized_adjoint(&self, a: &LinearMap2, y: Vec2) -> Result<Vec2> {
        if y.is_zero() {
            return Err(Error::ZeroVector("adjoint argument"));
        }
        Ok(self.inverse_duality(a.transpose_euclid().apply(self.duality_map(y))))
    }

    /// Sampled test of A = A^T over `samples` unit directions: half
    /// deterministic, half drawn from the seeded generator.
    pub fn is_self_adjoint(&self, a: &LinearMap2, samples: usize, tol: f64, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0f64;
        for k in 0..samples {
            let theta = if k < samples / 2 {
                2.0 * std::f64::consts::PI * k as f64 / (samples / 2).max(1) as f64
            } else {
                rng.gen::<f64>() * 2.0 * std::f64::consts::PI
            };
            let y = Vec2::new(theta.cos(), theta.sin());
            let direct = a.apply(y);
            let adjoint = match self.generalized_adjoint(a, y) {
                Ok(w) => w,
                Err(_) => continue,
            };
            worst = worst.max(self.norm(direct - adjoint));
        }
        worst <= tol
    }

    /// Zero directions of the quadratic form Q(u) = [A u, u] on [0, pi):
    /// sign changes on an n-station scan refined by bisection. Q is
    /// homogeneous of degree two, so directions describe the projective
    /// zero set completely.
    pub fn projective_conic_zeros(&self, a: &LinearMap2, n: usize) -> Result<Vec<f64>> {
        if !a.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let q = |theta: f64| {
            let u = Vec2::new(theta.cos(), theta.sin());
            self.sip(a.apply(u), u)
        };
        let pi = std::f64::consts::PI;
        let step = pi / n as f64;
        let mut zeros = Vec::new();
        let values: Vec<f64> = (0..=n).map(|i| q(step * i as f64)).collect();
        for i in 0..n {
            let (va, vb) = (values[i], values[i + 1]);
            if va == 0.0 {
                zeros.push(step * i as f64);
                continue;
            }
            if (va > 0.0) != (vb > 0.0) && vb != 0.0 {
                let mut lo = step * i as f64;
                let mut hi = step * (i + 1) as f64;
                let rising = vb > 0.0;
                while hi - lo > 1e-10 {
                    let mid = 0.5 * (lo + hi);
                    if (q(mid) > 0.0) == rising {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                zeros.push(0.5 * (lo + hi));
            }
        }
        zeros.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        Ok(zeros)
    }
}

/// A 2x2 real matrix acting on plane vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearMap2 {
    /// Row-major entries [[a, b], [c, d]].
    pub entries: [[f64; 2]; 2],
}

impl LinearMap2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> LinearMap2 {
        LinearMap2 {
            entries: [[a, b], [c, d]],
        }
    }

    pub fn identity() -> LinearMap2 {
        LinearMap2::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(a: f64, d: f64) -> LinearMap2 {
        LinearMap2::new(a, 0.0, 0.0, d)
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        let m = &self.entries;
        Vec2::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    pub fn transpose_euclid(&self) -> LinearMap2 {
        let m = &self.entries;
        LinearMap2::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn scale(&self, t: f64) -> LinearMap2 {
        let m = &self.entries;
        LinearMap2::new(t * m[0][0], t * m[0][1], t * m[1][0], t * m[1][1])
    }

    /// Composition self . other.
    pub fn compose(&self, other: &LinearMap2) -> LinearMap2 {
        let a = &self.entries;
        let b = &other.entries;
        LinearMap2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    /// Whether this map is the square of `root`, entrywise within `tol`.
    pub fn is_square_of(&self, root: &LinearMap2, tol: f64) -> bool {
        let squared = root.compose(root);
        self.entries
            .iter()
            .flatten()
            .zip(squared.entries.iter().flatten())
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn det(&self) -> f64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn is_invertible(&self) -> bool {
        let m = &self.entries;
        let scale = m.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
        self.det().abs() > 1e-14 * (1.0 + scale * scale)
    }

    /// Euclidean operator norm estimate from a direction scan.
    pub fn op_norm(&self) -> f64 {
        (0..64)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / 64.0;
                self.apply(Vec2::new(t.cos(), t.sin())).hypot()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn sample_vec(rng: &mut ChaCha8Rng) -> Vec2 {
        loop {
            let v = Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if v.hypot() > 0.05 {
                return v;
            }
        }
    }

    #[test]
    fn p2_reduces_to_dot_product() {
        let s = SipSpace::new(2.0).unwrap();
        let mut r = rng(1);
        for _ in 0..200 {
            let x = sample_vec(&mut r);
            let y = sample_vec(&mut r);
            assert!((s.sip(y, x) - y.dot(x)).abs() < 1e-12);
        }
        assert_eq!(s.sip(Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)), 0.0);
    }

    #[test]
    fn sip_axioms_hold() {
        for p in [1.5, 2.0, 3.0, 5.0] {
            let s = SipSpace::new(p).unwrap();
            let mut r = rng(7);
            for _ in 0..500 {
                let x = sample_vec(&mut r);
                let y = sample_vec(&mut r);
                let z = sample_vec(&mut r);
                let t: f64 = r.gen_range(-3.0..3.0);
                let nx = s.norm(x);
                let ny = s.norm(y);
                // [x,x] = ||x||^2
                assert!((s.sip(x, x) - nx * nx).abs() <= 1e-10 * (1.0 + nx * nx));
                // Linearity in the first slot is exact to rounding.
                assert!(
                    (s.sip(y + z, x) - s.sip(y, x) - s.sip(z, x)).abs()
                        <= 1e-12 * (1.0 + nx * (ny + s.norm(z)))
                );
                assert!(
                    (s.sip(y * t, x) - t * s.sip(y, x)).abs() <= 1e-12 * (1.0 + t.abs() * nx * ny)
                );
                // Cauchy-Schwarz.
                let lhs = s.sip(y, x).powi(2);
                assert!(lhs <= nx * nx * ny * ny + 1e-10);
            }
        }
    }

    #[test]
    fn p4_diagonal_value() {
        let s = SipSpace::new(4.0).unwrap();
        let x = Vec2::new(1.0, 1.0);
        // [x,x] = ||x||_4^2 = sqrt(2).
        assert!((s.sip(x, x) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn duality_round_trip() {
        for p in [1.5, 2.0, 3.0, 4.0, 5.0] {
            let s = SipSpace::new(p).unwrap();
            let mut r = rng(11);
            for _ in 0..1000 {
                let x = sample_vec(&mut r);
                let back = s.inverse_duality(s.duality_map(x));
                assert!(
                    (back - x).hypot() <= 1e-10 * (1.0 + x.hypot()),
                    "p={p}, x=({}, {})",
                    x.x,
                    x.y
                );
            }
            // Axis vectors are fixed points.
            let e1 = Vec2::new(1.0, 0.0);
            assert!((s.duality_map(e1) - e1).hypot() < 1e-12);
        }
    }

    #[test]
    fn adjoint_identity_sampled() {
        let maps = [
            LinearMap2::new(1.0, 1.0, 0.0, 1.0),
            LinearMap2::new(0.0, -1.0, 1.0, 0.0),
            LinearMap2::new(0.7, 0.2, -0.4, 1.3),
        ];
        for p in [1.5, 2.0, 4.0] {
            let s = SipSpace::new(p).unwrap();
            let mut r = rng(23);
            for a in &maps {
                for _ in 0..100 {
                    let x = sample_vec(&mut r);
                    let y = sample_vec(&mut r);
                    let w = s.generalized_adjoint(a, y).unwrap();
                    let lhs = s.sip(a.apply(x), y);
                    let rhs = s.sip(x, w);
                    let bound = 1e-8 * (1.0 + a.op_norm() * s.norm(x) * s.norm(y));
                    assert!((lhs - rhs).abs() <= bound, "p={p}: {lhs} vs {rhs}");
                }
            }
        }
    }

    #[test]
    fn p2_adjoint_is_matrix_transpose_and_involutive() {
        let s = SipSpace::new(2.0).unwrap();
        let a = LinearMap2::new(0.3, -1.2, 0.8, 0.5);
        let mut r = rng(5);
        for _ in 0..100 {
            let y = sample_vec(&mut r);
            let w = s.generalized_adjoint(&a, y).unwrap();
            assert!((w - a.transpose_euclid().apply(y)).hypot() < 1e-9);
            // Applying the construction twice returns the original action.
            let back = s
                .generalized_adjoint(
                    &LinearMap2::new(
                        a.entries[0][0],
                        a.entries[1][0],
                        a.entries[0][1],
                        a.entries[1][1],
                    ),
                    y,
                )
                .unwrap();
            assert!((back - a.apply(y)).hypot() < 1e-9);
        }
    }

    #[test]
    fn adjoint_is_nonlinear_away_from_p2() {
        let s = SipSpace::new(3.0).unwrap();
        let a = LinearMap2::new(1.0, 1.0, 0.0, 1.0);
        let mut r = rng(41);
        let mut witness = 0.0f64;
        for _ in 0..200 {
            let y1 = sample_vec(&mut r);
            let y2 = sample_vec(&mut r);
            if (y1 + y2).is_zero() {
                continue;
            }
            let lhs = s.generalized_adjoint(&a, y1 + y2).unwrap();
            let rhs =
                s.generalized_adjoint(&a, y1).unwrap() + s.generalized_adjoint(&a, y2).unwrap();
            witness = witness.max(s.norm(lhs - rhs));
        }
        assert!(
            witness > 1e-3,
            "no nonlinearity witness found, worst {witness}"
        );
    }

    #[test]
    fn self_adjointness_examples() {
        let s2 = SipSpace::new(2.0).unwrap();
        assert!(s2.is_self_adjoint(&LinearMap2::new(2.0, 0.5, 0.5, -1.0), 512, 1e-9, 99));
        assert!(!s2.is_self_adjoint(&LinearMap2::new(0.0, 1.0, -1.0, 0.0), 512, 1e-9, 99));
        let s4 = SipSpace::new(4.0).unwrap();
        assert!(s4.is_self_adjoint(&LinearMap2::identity(), 512, 1e-9, 99));
        for lambda in [0.5, -2.0, 3.5] {
            assert!(s4.is_self_adjoint(&LinearMap2::identity().scale(lambda), 512, 1e-9, 99));
            // Projective class invariance for a nontrivial self-adjoint map.
            assert!(s4.is_self_adjoint(&LinearMap2::diag(1.0, -1.0).scale(lambda), 512, 1e-9, 99));
        }
    }

    #[test]
    fn square_operator_check() {
        let a = LinearMap2::diag(4.0, 1.0);
        assert!(a.is_square_of(&LinearMap2::diag(2.0, 1.0), 1e-12));
        assert!(a.is_square_of(&LinearMap2::diag(-2.0, -1.0), 1e-12));
        assert!(!a.is_square_of(&LinearMap2::new(1.0, 1.0, 0.0, 1.0), 1e-12));
        // A 90-degree rotation squares to -identity, not identity.
        let rot = LinearMap2::new(0.0, -1.0, 1.0, 0.0);
        assert!(!LinearMap2::identity().is_square_of(&rot, 1e-12));
        assert!(LinearMap2::identity().scale(-1.0).is_square_of(&rot, 1e-12));
    }

    #[test]
    fn conic_zero_directions() {
        let s2 = SipSpace::new(2.0).unwrap();
        assert!(s2
            .projective_conic_zeros(&LinearMap2::identity(), 4096)
            .unwrap()
            .is_empty());
        let zeros = s2
            .projective_conic_zeros(&LinearMap2::diag(1.0, -1.0), 4096)
            .unwrap();
        assert_eq!(zeros.len(), 2);
        let deg: Vec<f64> = zeros.iter().map(|z| z.to_degrees()).collect();
        assert!(
            (deg[0] - 45.0).abs() < 1e-8 && (deg[1] - 135.0).abs() < 1e-8,
            "{deg:?}"
        );

        let s4 = SipSpace::new(4.0).unwrap();
        let zeros = s4
            .projective_conic_zeros(&LinearMap2::diag(1.0, -1.0), 4096)
            .unwrap();
        assert_eq!(zeros.len(), 2);
        // Symmetric about the axes.
        assert!((zeros[0] + zeros[1] - std::f64::consts::PI).abs() < 1e-8);
        // Scaling the operator leaves the projective zero set unchanged.
        let scaled = s4
            .projective_conic_zeros(&LinearMap2::diag(1.0, -1.0).scale(-2.5), 4096)
            .unwrap();
        assert_eq!(scaled.len(), 2);
        for (z, w) in zeros.iter().zip(&scaled) {
            assert!((z - w).abs() < 1e-8);
        }
        assert!(s2
            .projective_conic_zeros(&LinearMap2::new(1.0, 2.0, 2.0, 4.0), 64)
            .is_err());
    }
}
