use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an instance needs at least one agent")]
    EmptyInstance,
    #[error("location {0} lies outside [0, 1]")]
    OutOfRange(Rational),
    #[error("invalid band: lower end {lo} exceeds upper end {hi}")]
    InvalidBand { lo: Rational, hi: Rational },
    #[error("median of an empty list")]
    EmptyList,
    #[error("expected {expected} phantoms for this instance, got {got}")]
    PhantomCountMismatch { expected: usize, got: usize },
    #[error("gamma must lie in [0, 1/2], got {0}")]
    InvalidGamma(Rational),
    #[error("lambda must lie in [0, 1/4], got {0}")]
    InvalidLambda(Rational),
    #[error("delta must lie in [0, 1/2], got {0}")]
    InvalidDelta(Rational),
    #[error("theta must lie in [0, 1/2], got {0}")]
    InvalidTheta(Rational),
    #[error("no closed-form bound is known for {0}")]
    UnknownFamily(String),
    #[error("no counterexample case applies: {0}")]
    InvalidCase(String),
    #[error("{0}")]
    Parse(String),
    #[error("mechanism {mechanism} expects {expected}, got {got}")]
    PredictionArity {
        mechanism: String,
        expected: &'static str,
        got: &'static str,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
