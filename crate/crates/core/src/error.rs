use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("root finding failed: {0}")]
    Convergence(String),

    #[error("map is degenerate (coincident critical points)")]
    Degenerate,

    #[error("point {x} is not fixed by the {k}-th iterate (residual {residual:e})")]
    NotFixed { x: f64, k: usize, residual: f64 },

    #[error("orbit is not periodic: {0}")]
    NotPeriodic(String),

    #[error("permutation {0:?} is not a single cycle")]
    NotCyclic(Vec<usize>),

    #[error("order type {0:?} cannot be realized by a +-+ bimodal map")]
    Unrealizable(Vec<usize>),

    #[error("period {period} exceeds the supported maximum {max}")]
    PeriodTooLarge { period: usize, max: usize },

    #[error("depth {depth} exceeds the cap {cap}")]
    DepthExceeded { depth: usize, cap: usize },

    #[error("continuation step collapsed near ({v1}, {v2})")]
    StepCollapse { v1: f64, v2: f64 },

    #[error("order type changed during continuation: expected {expected:?}, found {found:?}")]
    OrderTypeChanged {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("bone is vacuous")]
    Empty,

    #[error("no center point found on bone")]
    NoCenter,

    #[error("invalid input: {0}")]
    Invalid(String),
}
