//! From the final level to the optimum and its vertices.
//!
//! Each final element with `d^2 > 0` names one vertex of the feasible
//! polyhedron: its coordinates are the kernel row divided by `d^2` (the
//! homogenization slot dropped), and its objective value is `d^1/d^2`. The
//! maximum ratio over the `d^2 > 0` elements is the optimal value; the
//! elements achieving it, deduplicated by exact coordinates, are the
//! complete set of optimal vertices.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::elimination::{EliminationRun, LevelElement, LevelState, RhoTable};
use crate::error::Error;
use crate::label::Label;
use crate::linalg::dot;
use crate::problem::LpProblem;
use crate::rational::Rational;

/// One row of the final ratio table. `ratio` is absent where `d^2 <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRow {
    pub label: Label,
    pub d1: Rational,
    pub d2: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Rational>,
}

/// A point of the feasible polyhedron named by a final element.
/// `other_labels` lists any further final elements whose coordinates
/// coincide with `x`, in level order.
///
/// On degenerate inputs the pairing construction can emit points lying in
/// the interior of a face; `extreme` records whether the point is a genuine
/// vertex (n linearly independent tight constraints), decided exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: Label,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub other_labels: Vec<Label>,
    pub x: Vec<Rational>,
    pub d1: Rational,
    pub d2: Rational,
    pub objective: Rational,
    pub optimal: bool,
    pub extreme: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub lambda_bar: Rational,
    pub optimal_vertices: Vec<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_vertices: Option<Vec<Vertex>>,
    pub ratio_table: Vec<RatioRow>,
    pub level_counts: Vec<usize>,
    pub rho_tables: Vec<RhoTable>,
    /// 1-based original index of each internal constraint row, present only
    /// when canonicalization reordered the rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_order: Option<Vec<usize>>,
}

/// One row per final element, in level order.
pub fn ratio_table(final_state: &LevelState) -> Vec<RatioRow> {
    final_state
        .elements
        .iter()
        .map(|e| {
            let d1 = e.d1().clone();
            let d2 = e.d2().clone();
            let ratio = d2.is_positive().then(|| &d1 / &d2);
            RatioRow {
                label: e.label.clone(),
                d1,
                d2,
                ratio,
            }
        })
        .collect()
}

/// The optimal value: maximum of `d^1/d^2` over elements with `d^2 > 0`.
pub fn maximin(final_state: &LevelState) -> Result<Rational, Error> {
    final_state
        .elements
        .iter()
        .filter(|e| e.d2().is_positive())
        .map(|e| e.d1() / e.d2())
        .max()
        .ok_or(Error::NoPositiveD2)
}

/// Coordinates of the vertex named by a final element: the kernel row over
/// the original variables, divided by `d^2`. The homogenization slot is
/// dropped.
pub fn vertex_coordinates(elem: &LevelElement) -> Result<Vec<Rational>, Error> {
    let d2 = elem.d2();
    if d2.is_zero() {
        return Err(Error::DivisionByZeroD2);
    }
    let n = elem.kernel_row.len() - 1;
    Ok(elem.kernel_row[..n].iter().map(|v| v / d2).collect())
}

/// Is `x` an extreme point of `{x >= 0, A x <= b}`? Exact test: the tight
/// constraints at `x` must span the full variable space.
pub fn is_extreme_point(problem: &LpProblem, x: &[Rational]) -> bool {
    let n = problem.n();
    let mut tight: Vec<Vec<Rational>> = Vec::new();
    for (j, value) in x.iter().enumerate() {
        if value.is_zero() {
            let mut row = vec![Rational::zero(); n];
            row[j] = Rational::one();
            tight.push(row);
        }
    }
    for (row, b) in problem.a.iter().zip(&problem.b) {
        if dot(row, x) == *b {
            tight.push(row.clone());
        }
    }
    crate::linalg::rank(&tight) == n
}

/// Gathers optimal (and optionally all) vertices from the final level,
/// deduplicating by exact coordinate equality and asserting feasibility of
/// everything emitted.
pub fn collect_vertices(
    problem: &LpProblem,
    run: &EliminationRun,
    lambda_bar: &Rational,
    want_all: bool,
    constraint_order: Option<Vec<usize>>,
) -> Result<SolveReport, Error> {
    let final_state = &run.final_state;
    let mut by_coords: BTreeMap<Vec<Rational>, Vertex> = BTreeMap::new();
    let mut order: Vec<Vec<Rational>> = Vec::new();

    for elem in &final_state.elements {
        if !elem.d2().is_positive() {
            continue;
        }
        let x = vertex_coordinates(elem)?;
        let objective = elem.d1() / elem.d2();
        if !problem.is_feasible(&x) {
            return Err(Error::InfeasibleVertexBug {
                label: elem.label.to_string(),
                coords: x
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            });
        }
        debug_assert_eq!(problem.objective(&x), objective);
        match by_coords.get_mut(&x) {
            Some(vertex) => vertex.other_labels.push(elem.label.clone()),
            None => {
                order.push(x.clone());
                let extreme = is_extreme_point(problem, &x);
                by_coords.insert(
                    x.clone(),
                    Vertex {
                        label: elem.label.clone(),
                        other_labels: Vec::new(),
                        x,
                        d1: elem.d1().clone(),
                        d2: elem.d2().clone(),
                        objective: objective.clone(),
                        optimal: objective == *lambda_bar,
                        extreme,
                    },
                );
            }
        }
    }

    let deduped: Vec<Vertex> = order
        .iter()
        .map(|coords| by_coords.get(coords).unwrap().clone())
        .collect();
    let optimal_vertices: Vec<Vertex> = deduped.iter().filter(|v| v.optimal).cloned().collect();

    Ok(SolveReport {
        lambda_bar: lambda_bar.clone(),
        optimal_vertices,
        all_vertices: want_all.then_some(deduped),
        ratio_table: ratio_table(final_state),
        level_counts: run.level_counts.clone(),
        rho_tables: run.rho_tables.clone(),
        constraint_order,
    })
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub want_all: bool,
    pub max_elements: Option<usize>,
    pub keep_levels: bool,
}

/// Full pipeline: canonicalize, reduce, eliminate, and collect vertices.
/// Returns the elimination run alongside the report so callers can inspect
/// intermediate levels.
pub fn solve_with_levels(
    raw: &LpProblem,
    options: &SolveOptions,
) -> Result<(SolveReport, EliminationRun), Error> {
    let canonical = crate::problem::canonicalize_problem(raw)?;
    let red = crate::problem::build_reduced_data(&canonical);
    let run = crate::elimination::run_elimination(
        &red,
        &crate::elimination::EliminationOptions {
            max_elements: options.max_elements,
            keep_levels: options.keep_levels,
        },
    )?;
    let lambda_bar = maximin(&run.final_state)?;
    let constraint_order = canonical.was_permuted().then_some(canonical.row_order);
    let report = collect_vertices(
        &canonical.problem,
        &run,
        &lambda_bar,
        options.want_all,
        constraint_order,
    )?;
    Ok((report, run))
}

pub fn solve(raw: &LpProblem, options: &SolveOptions) -> Result<SolveReport, Error> {
    solve_with_levels(raw, options).map(|(report, _)| report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elimination::{initial_state, run_elimination, EliminationOptions};
    use crate::problem::{build_reduced_data, canonicalize_problem, williams_problem};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn williams_run() -> EliminationRun {
        let canonical = canonicalize_problem(&williams_problem()).unwrap();
        let red = build_reduced_data(&canonical);
        run_elimination(&red, &EliminationOptions::default()).unwrap()
    }

    #[test]
    fn williams_ratio_table_rows() {
        let run = williams_run();
        let table = ratio_table(&run.final_state);
        assert_eq!(table.len(), 35);

        let row = |label: &str| table.iter().find(|r| r.label.to_string() == label).unwrap();

        let first_pair = row("[[4]_2,[1]_2]_3");
        assert_eq!(first_pair.d1, 6i64);
        assert_eq!(first_pair.d2, 28i64);
        assert_eq!(first_pair.ratio, Some(rat(3, 14)));

        // The printed source table gives (8, 72, 1/9) here, but its own
        // level-2 rows force 2*8 - (-4)*1 = 20: the kernel expansion is
        // (12, 8, 0, ...), whose objective is 20/72 = 5/18.
        let ninth = row("[[1,2]_2,[1]_2]_3");
        assert_eq!(ninth.d1, 20i64);
        assert_eq!(ninth.d2, 72i64);
        assert_eq!(ninth.ratio, Some(rat(5, 18)));

        let kept = row("[2]_3");
        assert_eq!(kept.d1, 0i64);
        assert_eq!(kept.d2, 1i64);
        assert_eq!(kept.ratio, Some(Rational::zero()));
    }

    #[test]
    fn williams_maximin() {
        assert_eq!(maximin(&williams_run().final_state).unwrap(), rat(3, 10));
    }

    #[test]
    fn single_constraint_maximin() {
        let raw = LpProblem::from_ints(&[1], &[&[2]], &[3]).unwrap();
        let red = build_reduced_data(&canonicalize_problem(&raw).unwrap());
        let state = initial_state(&red);
        assert_eq!(maximin(&state).unwrap(), rat(3, 2));
    }

    #[test]
    fn nonpositive_objective_is_returned_as_is() {
        let raw = LpProblem::from_ints(&[-1, -2], &[&[1, 1]], &[1]).unwrap();
        let (report, _) = solve_with_levels(&raw, &SolveOptions::default()).unwrap();
        assert_eq!(report.lambda_bar, Rational::zero());
    }

    #[test]
    fn empty_positive_part_is_an_error() {
        // Hand-built final level with no positive d^2 anywhere.
        let elements = vec![LevelElement {
            label: Label::base(1),
            kernel_row: vec![Rational::one(), Rational::zero()],
            carried: vec![Rational::one(), Rational::from_int(-1)],
        }];
        let state = LevelState::new(1, elements);
        assert_eq!(maximin(&state), Err(Error::NoPositiveD2));
    }

    #[test]
    fn coordinates_divide_once_by_d2() {
        let run = williams_run();
        let elem = run
            .final_state
            .elements
            .iter()
            .find(|e| e.label.to_string() == "[[1,2]_2,[2]_2]_3")
            .unwrap();
        assert_eq!(
            elem.kernel_row,
            [4, 4, 4, 0, 0, 0, 0].map(Rational::from_int)
        );
        assert_eq!(*elem.d2(), 40i64);
        assert_eq!(
            vertex_coordinates(elem).unwrap(),
            vec![rat(1, 10), rat(1, 10), rat(1, 10), rat(0, 1), rat(0, 1), rat(0, 1)]
        );
    }

    #[test]
    fn coordinates_of_hand_expanded_element() {
        let run = williams_run();
        let elem = run
            .final_state
            .elements
            .iter()
            .find(|e| e.label.to_string() == "[[6,4]_2,[1,4]_2]_3")
            .unwrap();
        assert_eq!(
            elem.kernel_row,
            [64, 0, 0, 96, 0, 32, 0].map(Rational::from_int)
        );
        assert_eq!(*elem.d2(), 640i64);
        assert_eq!(
            vertex_coordinates(elem).unwrap(),
            vec![rat(1, 10), rat(0, 1), rat(0, 1), rat(3, 20), rat(0, 1), rat(1, 20)]
        );
    }

    #[test]
    fn zero_kernel_row_yields_the_origin() {
        let elem = LevelElement {
            label: Label::base(2),
            kernel_row: vec![Rational::zero(), Rational::one()],
            carried: vec![Rational::zero(), Rational::ratio(1, 3)],
        };
        assert_eq!(vertex_coordinates(&elem).unwrap(), vec![Rational::zero()]);

        let zero_d2 = LevelElement {
            label: Label::base(1),
            kernel_row: vec![Rational::one(), Rational::zero()],
            carried: vec![Rational::one(), Rational::zero()],
        };
        assert_eq!(vertex_coordinates(&zero_d2), Err(Error::DivisionByZeroD2));
    }

    #[test]
    fn williams_optimal_labels() {
        let (report, _) = solve_with_levels(&williams_problem(), &SolveOptions::default()).unwrap();
        assert_eq!(report.lambda_bar, rat(3, 10));
        let labels: Vec<String> = report
            .optimal_vertices
            .iter()
            .map(|v| v.label.to_string())
            .collect();
        assert_eq!(
            labels,
            vec![
                "[[1,2]_2,[2]_2]_3",
                "[[1,2]_2,[3]_2]_3",
                "[[1,2]_2,[1,4]_2]_3",
                "[[6,2]_2,[2]_2]_3",
                "[[6,2]_2,[3]_2]_3",
                "[[6,2]_2,[1,4]_2]_3",
                "[[6,4]_2,[2]_2]_3",
                "[[6,4]_2,[3]_2]_3",
                "[[6,4]_2,[1,4]_2]_3",
            ]
        );
        assert!(report
            .optimal_vertices
            .iter()
            .all(|v| v.other_labels.is_empty()));
        // One of the nine optimal points sits in the interior of an edge of
        // the optimal face: it is (1/3) of [[1,2]_2,[1,4]_2]_3 plus (2/3) of
        // [[6,4]_2,[1,4]_2]_3.
        let flags: Vec<bool> = report.optimal_vertices.iter().map(|v| v.extreme).collect();
        assert_eq!(
            flags,
            vec![true, true, true, true, true, false, true, true, true]
        );
    }

    #[test]
    fn williams_all_vertices_are_distinct_and_feasible() {
        let options = SolveOptions {
            want_all: true,
            ..Default::default()
        };
        let (report, _) = solve_with_levels(&williams_problem(), &options).unwrap();
        let all = report.all_vertices.as_ref().unwrap();
        assert_eq!(all.len(), 35);
        assert_eq!(all.iter().filter(|v| v.extreme).count(), 27);
        let problem = williams_problem();
        for vertex in all {
            assert!(problem.is_feasible(&vertex.x));
            assert_eq!(problem.objective(&vertex.x), vertex.objective);
            assert!(vertex.objective <= report.lambda_bar);
        }
    }

    #[test]
    fn single_constraint_solve() {
        let raw = LpProblem::from_ints(&[1], &[&[2]], &[3]).unwrap();
        let (report, _) = solve_with_levels(&raw, &SolveOptions::default()).unwrap();
        assert_eq!(report.lambda_bar, rat(3, 2));
        assert_eq!(report.optimal_vertices.len(), 1);
        assert_eq!(report.optimal_vertices[0].x, vec![rat(3, 2)]);
    }
}
