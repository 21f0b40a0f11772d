//! Error type shared by all solver modules.

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("right-hand side b_{row} = {value} is negative; the problem requires b >= 0")]
    NegativeRhs { row: usize, value: Rational },

    #[error("every right-hand side is zero; the initial scaling by b_1 is undefined")]
    AllRhsZero,

    #[error(
        "level {level} would hold {required} elements, exceeding the cap of {cap} \
         (raise --max-elements or OMEGA_MAX_ELEMENTS)"
    )]
    SizeLimitExceeded {
        level: usize,
        required: usize,
        cap: usize,
    },

    #[error(
        "no element of the final level has a positive normalization value d^2; \
         the construction produced no normalizable vertex (degenerate input)"
    )]
    NoPositiveD2,

    #[error("vertex coordinates are undefined where d^2 = 0")]
    DivisionByZeroD2,

    #[error(
        "internal invariant breach: vertex {label} with coordinates ({coords}) \
         violates feasibility; this is a solver defect, not an input error"
    )]
    InfeasibleVertexBug { label: String, coords: String },

    #[error(
        "the optimal value {lambda_bar} is not positive, so the game reduction is invalid; \
         re-run with --shift {suggested} (or larger) to make every payoff entry positive"
    )]
    ValueNotPositive {
        lambda_bar: Rational,
        suggested: Rational,
    },

    #[error("not a probability vector: {reason}")]
    NotAProbabilityVector { reason: String },

    #[error(
        "problem too large for exhaustive vertex enumeration: n + m = {size} exceeds the \
         guard of {cap}"
    )]
    TooLarge { size: usize, cap: usize },

    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("cannot read a number from {text:?}: expected an integer, p/q, or a decimal")]
    BadNumber { text: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit status: 1 user error, 2 internal invariant breach,
    /// 3 resource guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfeasibleVertexBug { .. } | Error::DivisionByZeroD2 | Error::DivisionByZero => 2,
            Error::SizeLimitExceeded { .. } | Error::TooLarge { .. } => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
