//! Exact LP and matrix-game solver built on level-by-level index pairing.
//!
//! The solver handles `maximize c.x subject to x >= 0, A x <= b` with
//! nonnegative right-hand sides, entirely in arbitrary-precision rational
//! arithmetic. Instead of pivoting, it consumes one constraint per level:
//! indices with nonpositive constraint value are kept, and every
//! (negative, positive) pair is combined so the constraint cancels exactly.
//! After the last level each surviving element names a point of the
//! feasible polyhedron; the best objective/normalization ratio is the
//! optimal value and the points achieving it are the complete optimal
//! vertex set (plus, on degenerate inputs, face-interior points, which are
//! flagged). A matrix-game adapter turns optimal vertices into every
//! optimal mixed strategy of the column player, and a brute-force oracle
//! cross-checks everything by exhaustive tight-set enumeration.

#![allow(clippy::result_large_err)]

pub mod cli;
pub mod elimination;
pub mod error;
pub mod game;
pub mod io;
pub mod label;
pub mod linalg;
pub mod oracle;
pub mod problem;
pub mod rational;
pub mod report;
pub mod solution;

pub use error::Error;
pub use game::{solve_game, GameSolution, MatrixGame};
pub use label::Label;
pub use problem::{
    build_reduced_data, canonicalize_problem, CanonicalProblem, LpProblem, ReducedData,
};
pub use rational::Rational;
pub use solution::{solve, SolveOptions, SolveReport, Vertex};
