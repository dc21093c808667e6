use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite {0}")]
    NonFinite(&'static str),
    #[error("zero vector given for {0}")]
    ZeroVector(&'static str),
    #[error("invalid unit ball: {0}")]
    InvalidBall(String),
    #[error("invalid conic description: {0}")]
    InvalidSpec(String),
    #[error("nonpositive radius")]
    NonpositiveRadius,
    #[error("disk does not touch the line (defect {0:.3e})")]
    NotTangent(f64),
    #[error("seed point is not interior (residual {0:.3e})")]
    SeedNotInterior(f64),
    #[error("bracketing failed along direction ({0}, {1})")]
    BracketingFailed(f64, f64),
    #[error("empty locus")]
    EmptyLocus,
    #[error("degenerate locus ({0}); rasterize it instead of tracing")]
    DegenerateLocus(&'static str),
    #[error("curve is open where a closed curve is required")]
    OpenCurve,
    #[error("curve has too few points")]
    TooFewPoints,
    #[error("empty bounding box")]
    EmptyBBox,
    #[error("focus must be exterior to the leading circle")]
    FocusNotExterior,
    #[error("singular matrix")]
    SingularMatrix,
}
