//! Problem statement and reduced data.
//!
//! The solver works on `maximize c·x subject to x >= 0, A x <= b` with
//! nonnegative right-hand sides. All later stages consume the reduced data:
//! the difference rows `f^1..f^{m-1}` over the extended index set
//! `{1..n+1}` (slot n+1 homogenizes the right-hand side) and the two carried
//! vectors `e^1` (objective) and `e^2` (normalization).

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

/// `maximize c·x` subject to `x >= 0`, `A x <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpProblem {
    pub c: Vec<Rational>,
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
}

impl LpProblem {
    pub fn new(c: Vec<Rational>, a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self, Error> {
        let problem = LpProblem { c, a, b };
        problem.validate()?;
        Ok(problem)
    }

    /// Convenience constructor from integer data.
    pub fn from_ints(c: &[i64], a: &[&[i64]], b: &[i64]) -> Result<Self, Error> {
        Self::new(
            c.iter().copied().map(Rational::from_int).collect(),
            a.iter()
                .map(|row| row.iter().copied().map(Rational::from_int).collect())
                .collect(),
            b.iter().copied().map(Rational::from_int).collect(),
        )
    }

    /// Variable count.
    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// Constraint count.
    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.c.is_empty() {
            return Err(Error::InvalidProblem("need at least one variable".into()));
        }
        if self.b.is_empty() {
            return Err(Error::InvalidProblem("need at least one constraint".into()));
        }
        if self.a.len() != self.b.len() {
            return Err(Error::InvalidProblem(format!(
                "A has {} rows but b has {} entries",
                self.a.len(),
                self.b.len()
            )));
        }
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != self.c.len() {
                return Err(Error::InvalidProblem(format!(
                    "row {} of A has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    self.c.len()
                )));
            }
        }
        Ok(())
    }

    /// Is `x >= 0` and `A x <= b`?
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        debug_assert_eq!(x.len(), self.n());
        if x.iter().any(Rational::is_negative) {
            return false;
        }
        self.a
            .iter()
            .zip(&self.b)
            .all(|(row, b)| crate::linalg::dot(row, x) <= *b)
    }

    pub fn objective(&self, x: &[Rational]) -> Rational {
        crate::linalg::dot(&self.c, x)
    }
}

/// A problem with `b_1 > 0`, plus the record of any row reordering applied
/// to achieve that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalProblem {
    pub problem: LpProblem,
    /// `row_order[i]` is the 1-based original index of canonical row `i`.
    /// Identity when no swap was needed.
    pub row_order: Vec<usize>,
}

impl CanonicalProblem {
    pub fn was_permuted(&self) -> bool {
        self.row_order.iter().enumerate().any(|(i, &o)| o != i + 1)
    }
}

/// Checks `b >= 0` and reorders constraints so that `b_1 > 0`.
///
/// Row order is irrelevant to the polyhedron, so a zero leading right-hand
/// side is fixed by swapping constraint 1 with the lowest-index constraint
/// whose right-hand side is positive. The permutation is recorded so reports
/// can state it.
pub fn canonicalize_problem(raw: &LpProblem) -> Result<CanonicalProblem, Error> {
    raw.validate()?;
    for (i, b) in raw.b.iter().enumerate() {
        if b.is_negative() {
            return Err(Error::NegativeRhs {
                row: i + 1,
                value: b.clone(),
            });
        }
    }
    let pivot = raw
        .b
        .iter()
        .position(Rational::is_positive)
        .ok_or(Error::AllRhsZero)?;
    let mut problem = raw.clone();
    let mut row_order: Vec<usize> = (1..=raw.m()).collect();
    if pivot != 0 {
        problem.a.swap(0, pivot);
        problem.b.swap(0, pivot);
        row_order.swap(0, pivot);
    }
    Ok(CanonicalProblem { problem, row_order })
}

/// The solver's working data over the extended index set `{1..n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedData {
    /// `fs[l][k] = a_{l+2}(k) - (b_{l+2}/b_1) a_1(k)` for `k <= n`, with the
    /// homogenization slot `fs[l][n] = -b_{l+2}/b_1` (0-based `l`, so `fs[0]`
    /// holds `f^1`). Empty when m = 1.
    pub fs: Vec<Vec<Rational>>,
    /// Objective vector: `c` extended by a zero slot.
    pub e1: Vec<Rational>,
    /// Normalization vector: `(a_1, 1) / b_1`.
    pub e2: Vec<Rational>,
}

impl ReducedData {
    /// n + 1.
    pub fn base_len(&self) -> usize {
        self.e1.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.fs.len() + 1
    }
}

/// Builds `f^1..f^{m-1}`, `e^1`, `e^2` from a canonicalized problem.
pub fn build_reduced_data(canonical: &CanonicalProblem) -> ReducedData {
    let p = &canonical.problem;
    let n = p.n();
    let b1 = &p.b[0];
    assert!(b1.is_positive(), "build_reduced_data needs b_1 > 0");

    let fs = (1..p.m())
        .map(|l| {
            let scale = &p.b[l] / b1;
            let mut row: Vec<Rational> = (0..n)
                .map(|k| &p.a[l][k] - &(&scale * &p.a[0][k]))
                .collect();
            row.push(-scale);
            row
        })
        .collect();

    let mut e1 = p.c.clone();
    e1.push(Rational::zero());

    let mut e2: Vec<Rational> = p.a[0].iter().map(|v| v / b1).collect();
    e2.push(b1.recip().expect("b_1 > 0"));

    ReducedData { fs, e1, e2 }
}

#[cfg(test)]
pub(crate) fn williams_problem() -> LpProblem {
    LpProblem::from_ints(
        &[1, 1, 1, 1, 1, 1],
        &[
            &[4, 3, 3, 2, 2, 6],
            &[0, 7, 3, 6, 2, 2],
            &[6, 0, 4, 2, 6, 2],
        ],
        &[1, 1, 1],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rats(values: &[i64]) -> Vec<Rational> {
        values.iter().copied().map(Rational::from_int).collect()
    }

    #[test]
    fn williams_is_already_canonical() {
        let canonical = canonicalize_problem(&williams_problem()).unwrap();
        assert_eq!(canonical.problem, williams_problem());
        assert_eq!(canonical.row_order, vec![1, 2, 3]);
        assert!(!canonical.was_permuted());
    }

    #[test]
    fn zero_leading_rhs_swaps_rows() {
        let raw = LpProblem::from_ints(&[1], &[&[1], &[2]], &[0, 2]).unwrap();
        let canonical = canonicalize_problem(&raw).unwrap();
        assert_eq!(canonical.problem.b, rats(&[2, 0]));
        assert_eq!(canonical.problem.a, vec![rats(&[2]), rats(&[1])]);
        assert_eq!(canonical.row_order, vec![2, 1]);
        assert!(canonical.was_permuted());
    }

    #[test]
    fn all_zero_rhs_is_rejected() {
        let raw = LpProblem::from_ints(&[1], &[&[1], &[2]], &[0, 0]).unwrap();
        assert_eq!(canonicalize_problem(&raw), Err(Error::AllRhsZero));
    }

    #[test]
    fn negative_rhs_is_rejected() {
        let raw = LpProblem::from_ints(&[1], &[&[1], &[2]], &[1, -3]).unwrap();
        assert_eq!(
            canonicalize_problem(&raw),
            Err(Error::NegativeRhs {
                row: 2,
                value: Rational::from_int(-3),
            })
        );
    }

    #[test]
    fn shape_validation() {
        assert!(LpProblem::from_ints(&[], &[&[]], &[1]).is_err());
        assert!(LpProblem::from_ints(&[1], &[], &[]).is_err());
        assert!(LpProblem::from_ints(&[1, 2], &[&[1]], &[1]).is_err());
        assert!(LpProblem::from_ints(&[1], &[&[1], &[2]], &[1]).is_err());
    }

    #[test]
    fn williams_reduced_data() {
        let canonical = canonicalize_problem(&williams_problem()).unwrap();
        let red = build_reduced_data(&canonical);
        assert_eq!(red.fs.len(), 2);
        assert_eq!(red.fs[0], rats(&[-4, 4, 0, 4, 0, -4, -1]));
        assert_eq!(red.fs[1], rats(&[2, -3, 1, 0, 4, -4, -1]));
        assert_eq!(red.e1, rats(&[1, 1, 1, 1, 1, 1, 0]));
        assert_eq!(red.e2, rats(&[4, 3, 3, 2, 2, 6, 1]));
    }

    #[test]
    fn single_constraint_reduced_data() {
        let raw = LpProblem::from_ints(&[1], &[&[2]], &[3]).unwrap();
        let red = build_reduced_data(&canonicalize_problem(&raw).unwrap());
        assert!(red.fs.is_empty());
        assert_eq!(red.e1, rats(&[1, 0]));
        assert_eq!(red.e2, vec![Rational::ratio(2, 3), Rational::ratio(1, 3)]);
    }

    fn small_problem() -> impl Strategy<Value = LpProblem> {
        (1usize..5, 1usize..4).prop_flat_map(|(n, m)| {
            (
                prop::collection::vec(-5i64..=5, n),
                prop::collection::vec(prop::collection::vec(-5i64..=5, n), m),
                prop::collection::vec(0i64..=5, m),
            )
                .prop_map(|(c, a, b)| LpProblem {
                    c: c.into_iter().map(Rational::from_int).collect(),
                    a: a.into_iter()
                        .map(|r| r.into_iter().map(Rational::from_int).collect())
                        .collect(),
                    b: b.into_iter().map(Rational::from_int).collect(),
                })
        })
    }

    proptest! {
        // Algebraic restatement of the reduction, exactly checkable:
        // b_1 f^l(k) + b_{l+1} a_1(k) = b_1 a_{l+1}(k).
        #[test]
        fn reduction_identity(raw in small_problem()) {
            prop_assume!(raw.b.iter().any(Rational::is_positive));
            let canonical = canonicalize_problem(&raw).unwrap();
            let p = &canonical.problem;
            let red = build_reduced_data(&canonical);
            let b1 = &p.b[0];
            for (l, f) in red.fs.iter().enumerate() {
                let bl = &p.b[l + 1];
                for k in 0..p.n() {
                    prop_assert_eq!(b1 * &f[k] + bl * &p.a[0][k], b1 * &p.a[l + 1][k]);
                }
                prop_assert_eq!(f[p.n()].clone(), -(bl / b1));
            }
            // e2 dotted with (x, 1) gives (a_1 x + 1) / b_1 for any x.
            let x: Vec<Rational> = (0..p.n()).map(|k| Rational::ratio(k as i64 + 1, 3)).collect();
            let mut extended = x.clone();
            extended.push(Rational::one());
            let lhs = crate::linalg::dot(&red.e2, &extended);
            let rhs = (crate::linalg::dot(&p.a[0], &x) + Rational::one()) / b1.clone();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
