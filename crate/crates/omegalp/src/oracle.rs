//! Independent brute-force ground truth.
//!
//! Enumerates every vertex of `{x >= 0, A x <= b}` by solving all square
//! systems of n tight constraints drawn from the n sign conditions and the
//! m rows, keeping the feasible solutions. Unboundedness of the objective
//! is decided exactly by enumerating the extreme rays of the recession cone
//! (as vertices of its unit-sum slice) and testing their objective growth.
//! Deliberately naive: exactness and independence from the main pipeline
//! are the point, so everything is plain exhaustive search over rationals.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::Error;
use crate::linalg::{dot, solve_square};
use crate::problem::LpProblem;
use crate::rational::Rational;

/// Guard on `n + m`: the enumeration solves `C(n+m, n)` systems.
pub const SIZE_GUARD: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Optimum {
    Value(Rational),
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Distinct vertices in lexicographic order.
    pub vertices: Vec<Vec<Rational>>,
    pub optimum: Optimum,
    /// Vertices attaining the optimum; empty when unbounded.
    pub optimal_vertices: Vec<Vec<Rational>>,
    pub bases_examined: usize,
}

/// Builds one tight-constraint row: either a sign condition `x_j = 0` or a
/// constraint row `A_l x = b_l`. Indices `0..n` are sign conditions,
/// `n..n+m` are rows.
fn constraint_row(problem: &LpProblem, index: usize) -> (Vec<Rational>, Rational) {
    let n = problem.n();
    if index < n {
        let mut row = vec![Rational::zero(); n];
        row[index] = Rational::one();
        (row, Rational::zero())
    } else {
        (problem.a[index - n].clone(), problem.b[index - n].clone())
    }
}

fn enumerate_basic_feasible(
    problem: &LpProblem,
    rows: &[(Vec<Rational>, Rational)],
    feasible: impl Fn(&[Rational]) -> bool,
) -> (BTreeSet<Vec<Rational>>, usize) {
    let n = problem.n();
    let mut points = BTreeSet::new();
    let mut bases = 0usize;
    for subset in (0..rows.len()).combinations(n) {
        bases += 1;
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let rhs: Vec<Rational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        // Rank-deficient subsets are simply skipped.
        let Some(x) = solve_square(&a, &rhs) else {
            continue;
        };
        if feasible(&x) {
            points.insert(x);
        }
    }
    (points, bases)
}

/// Does some recession direction increase the objective? Extreme rays of
/// `{r >= 0, A r <= 0}` are scanned as the vertices of its slice by
/// `sum(r) = 1`.
fn objective_unbounded(problem: &LpProblem) -> bool {
    let n = problem.n();
    let m = problem.m();
    let zeros = vec![Rational::zero(); m];
    let cone = LpProblem {
        c: problem.c.clone(),
        a: problem.a.clone(),
        b: zeros,
    };
    let mut rows: Vec<(Vec<Rational>, Rational)> = (0..n + m)
        .map(|i| constraint_row(&cone, i))
        .collect();
    rows.push((vec![Rational::one(); n], Rational::one()));

    let (rays, _) = enumerate_basic_feasible(&cone, &rows, |r| {
        r.iter().all(|v| !v.is_negative())
            && crate::linalg::mat_vec(&problem.a, r)
                .iter()
                .all(|v| !v.is_positive())
            && r.iter().sum::<Rational>() == Rational::one()
    });
    rays.iter().any(|r| dot(&problem.c, r).is_positive())
}

/// Exhaustive vertex enumeration with exact optimum classification.
pub fn enumerate_vertices(problem: &LpProblem) -> Result<OracleResult, Error> {
    problem.validate()?;
    if let Some((row, value)) = problem
        .b
        .iter()
        .enumerate()
        .find(|(_, v)| v.is_negative())
    {
        return Err(Error::NegativeRhs {
            row: row + 1,
            value: value.clone(),
        });
    }
    let n = problem.n();
    let m = problem.m();
    if n + m > SIZE_GUARD {
        return Err(Error::TooLarge {
            size: n + m,
            cap: SIZE_GUARD,
        });
    }

    let rows: Vec<(Vec<Rational>, Rational)> =
        (0..n + m).map(|i| constraint_row(problem, i)).collect();
    let (points, bases_examined) =
        enumerate_basic_feasible(problem, &rows, |x| problem.is_feasible(x));
    let vertices: Vec<Vec<Rational>> = points.into_iter().collect();

    if objective_unbounded(problem) {
        return Ok(OracleResult {
            vertices,
            optimum: Optimum::Unbounded,
            optimal_vertices: Vec::new(),
            bases_examined,
        });
    }

    let best = vertices
        .iter()
        .map(|x| dot(&problem.c, x))
        .max()
        .expect("the origin is always a vertex when b >= 0");
    let optimal_vertices = vertices
        .iter()
        .filter(|x| dot(&problem.c, x) == best)
        .cloned()
        .collect();
    Ok(OracleResult {
        vertices,
        optimum: Optimum::Value(best),
        optimal_vertices,
        bases_examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::williams_problem;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn one_variable_polytope() {
        let p = LpProblem::from_ints(&[1], &[&[2]], &[3]).unwrap();
        let result = enumerate_vertices(&p).unwrap();
        assert_eq!(
            result.vertices,
            vec![vec![Rational::zero()], vec![rat(3, 2)]]
        );
        assert_eq!(result.optimum, Optimum::Value(rat(3, 2)));
        assert_eq!(result.optimal_vertices, vec![vec![rat(3, 2)]]);
    }

    #[test]
    fn detects_unboundedness() {
        let p = LpProblem::from_ints(&[1, 1], &[&[-1, 0]], &[1]).unwrap();
        let result = enumerate_vertices(&p).unwrap();
        assert_eq!(result.optimum, Optimum::Unbounded);
        assert!(result.optimal_vertices.is_empty());
    }

    #[test]
    fn williams_optimum() {
        let result = enumerate_vertices(&williams_problem()).unwrap();
        assert_eq!(result.bases_examined, 84);
        assert_eq!(result.optimum, Optimum::Value(rat(3, 10)));
        // The feasible polyhedron has 27 extreme points, 8 of them optimal.
        assert_eq!(result.vertices.len(), 27);
        assert_eq!(result.optimal_vertices.len(), 8);
    }

    #[test]
    fn guard_rejects_large_problems() {
        let n = 20;
        let c = vec![1i64; n];
        let a_row = vec![1i64; n];
        let rows: Vec<&[i64]> = (0..5).map(|_| a_row.as_slice()).collect();
        let p = LpProblem::from_ints(&c, &rows, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(
            enumerate_vertices(&p).unwrap_err(),
            Error::TooLarge { size: 25, cap: 24 }
        );
    }

    #[test]
    fn deterministic_and_lexicographic() {
        let p = LpProblem::from_ints(&[1, 1], &[&[1, 2], &[2, 1]], &[2, 2]).unwrap();
        let first = enumerate_vertices(&p).unwrap();
        let second = enumerate_vertices(&p).unwrap();
        assert_eq!(first, second);
        let mut sorted = first.vertices.clone();
        sorted.sort();
        assert_eq!(first.vertices, sorted);
    }
}
