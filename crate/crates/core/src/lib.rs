//! Metric conics in two-dimensional normed (Minkowski) planes.
//!
//! The kernel represents the plane through its unit ball (`ball`). Ellipses,
//! hyperbolas and parabolas by their foci, leading circle or leading line,
//! together with bisectors and d-segments, are defined as signed residual
//! functions (`loci`), extracted as polylines or occupancy grids (`tracer`),
//! and checked against the structural claims that separate the definitions
//! (`verify`). The `sip` module carries the semi-inner-product operator
//! calculus of smooth strictly convex planes.

pub mod ball;
pub mod birkhoff;
pub mod emit;
pub mod error;
pub mod geom;
pub mod loci;
pub mod scene;
pub mod sip;
pub mod tracer;
pub mod verify;

pub use ball::{BallProperties, ContactFace, Exponent, Tangency, UnitBall};
pub use error::{Error, Result};
pub use geom::{BBox, Line, Vec2};
pub use loci::{ConicSpec, Degeneracy, Membership};
pub use tracer::{PolyCurve, RegionGrid, TraceReport};
