//! Serializable scene bundles: a unit ball, the loci to draw and the trace
//! parameters, as consumed by the command line.

use serde::{Deserialize, Serialize};

use crate::ball::UnitBall;
use crate::error::{Error, Result};
use crate::geom::BBox;
use crate::loci::ConicSpec;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub ball: UnitBall,
    pub specs: Vec<ConicSpec>,
    #[serde(default)]
    pub trace: TraceParams,
    pub bbox: BBox,
    #[serde(default)]
    pub outputs: Vec<OutputSpec>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceParams {
    /// Radial directions / sweep lines.
    #[serde(default = "default_n")]
    pub n: usize,
    /// Window half-size for unbounded loci; derived from the locus scale
    /// when absent.
    #[serde(default)]
    pub extent: Option<f64>,
    /// Bisection width for root refinement.
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_n() -> usize {
    512
}

fn default_tol() -> f64 {
    crate::tracer::DEFAULT_TRACE_TOL
}

impl Default for TraceParams {
    fn default() -> TraceParams {
        TraceParams {
            n: default_n(),
            extent: None,
            tol: default_tol(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub format: OutputFormat,
    pub path: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Svg,
    Pgm,
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Scene> {
        let scene: Scene =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("scene: {e}")))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serialization")
    }

    pub fn validate(&self) -> Result<()> {
        if self.specs.is_empty() {
            return Err(Error::InvalidSpec("scene lists no loci".into()));
        }
        for (i, spec) in self.specs.iter().enumerate() {
            spec.validate(&self.ball)
                .map_err(|e| Error::InvalidSpec(format!("specs[{i}]: {e}")))?;
        }
        if self.trace.n < 8 {
            return Err(Error::InvalidSpec("trace.n must be at least 8".into()));
        }
        if self.trace.tol <= 0.0 || self.trace.tol.is_nan() {
            return Err(Error::InvalidSpec("trace.tol must be positive".into()));
        }
        if let Some(e) = self.trace.extent {
            if e <= 0.0 || e.is_nan() {
                return Err(Error::InvalidSpec("trace.extent must be positive".into()));
            }
        }
        Ok(())
    }

    /// Window half-size for a locus: the explicit extent when given, else
    /// eight times the locus scale.
    pub fn extent_for(&self, spec: &ConicSpec) -> f64 {
        if let Some(e) = self.trace.extent {
            return e;
        }
        let scale = match spec {
            ConicSpec::EllipseFoci { f1, f2, a } | ConicSpec::HyperbolaFoci { f1, f2, a } => {
                (2.0 * a).max(self.ball.norm(*f1 - *f2))
            }
            ConicSpec::EllipseLeadingCircle { r, focus }
            | ConicSpec::HyperbolaLeadingCircle { r, focus } => r.max(self.ball.norm(*focus)),
            ConicSpec::LeadingLine { focus, line, .. } => {
                1.0 + self.ball.dist_point_line(*focus, line)
            }
            ConicSpec::Bisector { x, y } | ConicSpec::DSegment { x, y } => self.ball.norm(*x - *y),
        };
        8.0 * scale.max(0.25)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn sample_scene() -> Scene {
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
            trace: TraceParams::default(),
            bbox: BBox::new(Vec2::new(-6.0, -5.0), Vec2::new(6.0, 5.0)).unwrap(),
            outputs: vec![],
        }
    }

    #[test]
    fn scene_round_trip_is_identical() {
        let scene = sample_scene();
        let text = scene.to_json();
        let back = Scene::from_json(&text).unwrap();
        assert_eq!(text, back.to_json());
    }

    #[test]
    fn scene_rejects_invalid_spec_with_index() {
        let text = r#"{
            "ball": {"type": "lp", "p": 2.0},
            "specs": [{"kind": "ellipse_foci", "f1": [0, 0], "f2": [0, 0], "a": 1.0}],
            "bbox": [[-1, -1], [1, 1]]
        }"#;
        let err = Scene::from_json(text).unwrap_err();
        assert!(err.to_string().contains("specs[0]"), "{err}");
    }

    #[test]
    fn scene_parse_error_carries_position() {
        let err = Scene::from_json("{\n  \"ball\": 3\n}").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }
}
