use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("root {0} is zero; c1 = λ1λ2λ3 would vanish")]
    ZeroRoot(usize),
    #[error("roots {0:?} all share one sign; the tangent cone is empty")]
    SameSign([f64; 3]),
    #[error("c1 must be non-zero")]
    ZeroC1,
    #[error("cubic has complex roots (discriminant {0:e} < 0)")]
    ComplexRoots(f64),
    #[error("moduli have a double root; the curvature equation has no non-constant solution")]
    DoubleRoot,
    #[error("initial curvature {y0} is outside the open band ({low}, {high})")]
    InitialValueOutOfBand { y0: f64, low: f64, high: f64 },
    #[error("curvature must be positive (got {0})")]
    NonpositiveY(f64),
    #[error("step {step} too large: {reason}")]
    StepTooLarge { step: f64, reason: String },
    #[error("phase derivative is not positive at s = {0}")]
    NonmonotonePhase(f64),
    #[error("curvature must be positive along the span (got {value} at s = {s})")]
    NonpositiveKappa { s: f64, value: f64 },
    #[error("torsion vanishes; the operator has no Σ/τ entry")]
    ZeroTorsion,
    #[error("helix radius must be positive and pitch non-zero (a = {a}, b = {b})")]
    BadRadius { a: f64, b: f64 },
    #[error("span ({0}, {1}) reaches the singular boundary ±π/(2c)")]
    SpanHitsSingularity(f64, f64),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("|α'×α''| vanishes at sample {0}; curvature undefined")]
    DegenerateSecondDerivative(usize),
    #[error("directions are parallel")]
    ParallelDirections,
    #[error("invalid moduli: {0}")]
    InvalidModuli(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable process exit code for the CLI. 0 and 1 are reserved for
    /// "report passed" and "report failed"; 2 is the argument parser's.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::Parse { .. } => 4,
            Error::InvalidArgument(_) => 5,
            Error::InvalidModuli(_) => 6,
            Error::ZeroRoot(_) => 10,
            Error::SameSign(_) => 11,
            Error::ComplexRoots(_) => 12,
            Error::ZeroC1 => 13,
            Error::DoubleRoot => 14,
            Error::InitialValueOutOfBand { .. } => 15,
            Error::StepTooLarge { .. } => 16,
            Error::GridTooCoarse(_) => 17,
            Error::NonpositiveY(_) => 18,
            Error::NonmonotonePhase(_) => 19,
            Error::NonpositiveKappa { .. } => 20,
            Error::ZeroTorsion => 21,
            Error::BadRadius { .. } => 22,
            Error::SpanHitsSingularity(..) => 23,
            Error::DegenerateSecondDerivative(_) => 24,
            Error::ParallelDirections => 25,
        }
    }
}
