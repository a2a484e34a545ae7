use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<String>, right: Vec<String> },

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole: denominator vanishes ({factor})")]
    Pole { factor: String },

    #[error("variable list is not of the paired form x1..xn, z1..zn: {0:?}")]
    NotPaired(Vec<String>),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported coefficient denominator: {0}")]
    UnsupportedDenominator(String),

    #[error("operator is not translation invariant")]
    NotTranslationInvariant,

    #[error("ansatz dimension {dimension} exceeds cap {cap}")]
    ResourceCap { dimension: usize, cap: usize },

    #[error("no closed-form intertwiner for n = {0}; use the ansatz solver")]
    NoKnownIntertwiner(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("collision of particles {i} and {j} at t = {t} (gap {gap:e})")]
    Collision { i: usize, j: usize, t: f64, gap: f64 },

    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("degenerate spectrum (gap {gap:e})")]
    Degenerate { gap: f64 },

    #[error("rank-one constraint violated (defect {defect:e})")]
    RankOneViolation { defect: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("verification failed: {0}")]
    Unverified(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
