//! Zero-sum matrix game adapter.
//!
//! A payoff matrix (rows: first player, columns: second player) reduces to
//! the LP `maximize sum(x)` subject to `x >= 0`, `(payoff + shift) x <= 1`.
//! When the optimal value `lambda_bar` is positive, the game value is
//! `1/lambda_bar - shift` and every optimal LP vertex normalizes to an
//! optimal mixed strategy of the second player.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::mat_vec;
use crate::problem::LpProblem;
use crate::rational::Rational;
use crate::solution::{solve, SolveOptions, SolveReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGame {
    pub payoff: Vec<Vec<Rational>>,
    #[serde(default)]
    pub shift: Rational,
}

impl MatrixGame {
    pub fn new(payoff: Vec<Vec<Rational>>, shift: Rational) -> Result<Self, Error> {
        if payoff.is_empty() || payoff[0].is_empty() {
            return Err(Error::InvalidProblem(
                "payoff matrix needs at least one row and one column".into(),
            ));
        }
        let cols = payoff[0].len();
        if payoff.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidProblem(
                "payoff matrix rows have unequal lengths".into(),
            ));
        }
        Ok(MatrixGame { payoff, shift })
    }

    pub fn from_ints(payoff: &[&[i64]]) -> Result<Self, Error> {
        Self::new(
            payoff
                .iter()
                .map(|row| row.iter().copied().map(Rational::from_int).collect())
                .collect(),
            Rational::zero(),
        )
    }

    pub fn rows(&self) -> usize {
        self.payoff.len()
    }

    pub fn cols(&self) -> usize {
        self.payoff[0].len()
    }

    fn shifted(&self) -> Vec<Vec<Rational>> {
        self.payoff
            .iter()
            .map(|row| row.iter().map(|v| v + &self.shift).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSolution {
    /// Optimal value of the reduced LP.
    pub lp_value: Rational,
    /// Value of the game on the payoff scale: `1/lp_value - shift`.
    pub game_value: Rational,
    /// Every optimal mixed strategy of the second player, deduplicated, in
    /// the order of the optimal vertices.
    pub strategies: Vec<Vec<Rational>>,
    pub report: SolveReport,
}

/// Reduction to the LP: all-ones objective, shifted payoff rows, unit
/// right-hand sides.
pub fn game_to_lp(game: &MatrixGame) -> LpProblem {
    LpProblem {
        c: vec![Rational::one(); game.cols()],
        a: game.shifted(),
        b: vec![Rational::one(); game.rows()],
    }
}

/// Solves the game for the second player.
pub fn solve_game(game: &MatrixGame, options: &SolveOptions) -> Result<GameSolution, Error> {
    let problem = game_to_lp(game);
    let report = solve(&problem, options)?;
    let lambda_bar = report.lambda_bar.clone();
    if !lambda_bar.is_positive() {
        let min_entry = game
            .payoff
            .iter()
            .flatten()
            .min()
            .cloned()
            .unwrap_or_else(Rational::zero);
        return Err(Error::ValueNotPositive {
            lambda_bar,
            suggested: Rational::one() - min_entry,
        });
    }
    let game_value = lambda_bar.recip()? - &game.shift;

    // Every optimal vertex has coordinate sum lambda_bar (all-ones
    // objective), so normalization is division by lambda_bar.
    let mut strategies: Vec<Vec<Rational>> = Vec::new();
    for vertex in &report.optimal_vertices {
        let total: Rational = vertex.x.iter().sum();
        debug_assert_eq!(total, lambda_bar);
        let strategy: Vec<Rational> = vertex.x.iter().map(|v| v / &total).collect();
        if !strategies.contains(&strategy) {
            strategies.push(strategy);
        }
    }

    Ok(GameSolution {
        lp_value: lambda_bar,
        game_value,
        strategies,
        report,
    })
}

/// Independent optimality check: `true` iff the worst case of playing `y`
/// equals the claimed value, i.e. `max_i (payoff y)_i = v`. Row values are
/// on the effective (shifted) payoff scale, so solved games always pass at
/// `v = game_value + shift`. Returns the full row values for reporting.
pub fn verify_strategy(
    game: &MatrixGame,
    strategy: &[Rational],
    value: &Rational,
) -> Result<(bool, Vec<Rational>), Error> {
    if strategy.len() != game.cols() {
        return Err(Error::NotAProbabilityVector {
            reason: format!(
                "length {} does not match the {} columns of the payoff matrix",
                strategy.len(),
                game.cols()
            ),
        });
    }
    if strategy.iter().any(Rational::is_negative) {
        return Err(Error::NotAProbabilityVector {
            reason: "contains a negative entry".into(),
        });
    }
    let total: Rational = strategy.iter().sum();
    if total != Rational::one() {
        return Err(Error::NotAProbabilityVector {
            reason: format!("entries sum to {total}, not 1"),
        });
    }
    let rows = mat_vec(&game.shifted(), strategy);
    let max = rows.iter().max().cloned().expect("at least one row");
    Ok((max == *value, rows))
}

#[cfg(test)]
pub(crate) fn williams_game() -> MatrixGame {
    MatrixGame::from_ints(&[
        &[4, 3, 3, 2, 2, 6],
        &[0, 7, 3, 6, 2, 2],
        &[6, 0, 4, 2, 6, 2],
    ])
    .unwrap()
}
