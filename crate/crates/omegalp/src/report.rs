//! Report assembly and rendering.
//!
//! Machine output is JSON with every number as an exact fraction string;
//! it re-parses to the same in-memory value. Text output mirrors the
//! layout of the solver's level tables (elements as columns, transported
//! functions as rows) so runs can be eyeballed against hand calculations.

use serde::{Deserialize, Serialize};

use crate::elimination::LevelState;
use crate::game::GameSolution;
use crate::label::Label;
use crate::oracle::{Optimum, OracleResult};
use crate::problem::LpProblem;
use crate::rational::Rational;
use crate::solution::SolveReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub name: String,
    pub values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTrace {
    pub level: usize,
    pub labels: Vec<Label>,
    pub rows: Vec<TraceRow>,
}

/// Per-level tables of every transported function, for `--trace-levels`.
pub fn trace_levels(levels: &[LevelState], m: usize) -> Vec<LevelTrace> {
    levels
        .iter()
        .map(|state| {
            let l = state.level;
            let carried_len = state
                .elements
                .first()
                .map(|e| e.carried.len())
                .unwrap_or(0);
            let names: Vec<String> = (0..carried_len)
                .map(|slot| {
                    let f_count = carried_len - 2;
                    if slot < f_count {
                        if l == 1 {
                            format!("f^{}", slot + 1)
                        } else if slot == 0 {
                            format!("g^{l}")
                        } else {
                            format!("G({})f^{}", l - 1, l + slot)
                        }
                    } else {
                        let e = slot - f_count + 1;
                        if l == 1 {
                            format!("e^{e}")
                        } else if l == m {
                            format!("d^{e}")
                        } else {
                            format!("G({})e^{e}", l - 1)
                        }
                    }
                })
                .collect();
            LevelTrace {
                level: l,
                labels: state.elements.iter().map(|e| e.label.clone()).collect(),
                rows: names
                    .into_iter()
                    .enumerate()
                    .map(|(slot, name)| TraceRow {
                        name,
                        values: state
                            .elements
                            .iter()
                            .map(|e| e.carried[slot].clone())
                            .collect(),
                    })
                    .collect(),
            }
        })
        .collect()
}

/// Agreement between the pipeline and the exhaustive enumeration.
/// For a bounded objective `lambda_matches` means `lambda_bar` equals the
/// oracle optimum; with an unbounded objective the construction can emit
/// feasible face points above every vertex, so it then means `lambda_bar`
/// is at least the best vertex objective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub optimum: Optimum,
    pub vertex_count: usize,
    pub optimal_vertex_count: usize,
    pub lambda_matches: bool,
    /// Extreme optimal points equal the oracle's optimal vertex set.
    pub optimal_set_matches: bool,
    /// Every oracle optimal vertex appears among the optimal points.
    pub optimal_points_cover_oracle: bool,
    /// With `--all-vertices`: extreme points equal the oracle vertex set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extreme_set_matches: Option<bool>,
    /// With `--all-vertices`: every oracle vertex appears among the points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices_covered: Option<bool>,
}

pub fn oracle_section(
    problem: &LpProblem,
    report: &SolveReport,
    oracle: &OracleResult,
) -> OracleSection {
    use std::collections::BTreeSet;

    let best_vertex_objective = oracle
        .vertices
        .iter()
        .map(|x| crate::linalg::dot(&problem.c, x))
        .max();
    let lambda_matches = match &oracle.optimum {
        Optimum::Value(opt) => report.lambda_bar == *opt,
        Optimum::Unbounded => best_vertex_objective
            .as_ref()
            .is_some_and(|best| *best <= report.lambda_bar),
    };

    let pipeline_optimal: BTreeSet<&Vec<Rational>> =
        report.optimal_vertices.iter().map(|v| &v.x).collect();
    let pipeline_optimal_extreme: BTreeSet<&Vec<Rational>> = report
        .optimal_vertices
        .iter()
        .filter(|v| v.extreme)
        .map(|v| &v.x)
        .collect();

    // With an unbounded objective there is no optimal vertex set; compare
    // against the vertices that reach lambda_bar (possibly none).
    let reference_optimal: BTreeSet<&Vec<Rational>> = match &oracle.optimum {
        Optimum::Value(_) => oracle.optimal_vertices.iter().collect(),
        Optimum::Unbounded => oracle
            .vertices
            .iter()
            .filter(|x| crate::linalg::dot(&problem.c, x) == report.lambda_bar)
            .collect(),
    };

    let (extreme_set_matches, vertices_covered) = match &report.all_vertices {
        Some(all) => {
            let oracle_vertices: BTreeSet<&Vec<Rational>> = oracle.vertices.iter().collect();
            let points: BTreeSet<&Vec<Rational>> = all.iter().map(|v| &v.x).collect();
            let extreme: BTreeSet<&Vec<Rational>> =
                all.iter().filter(|v| v.extreme).map(|v| &v.x).collect();
            (
                Some(extreme == oracle_vertices),
                Some(oracle_vertices.is_subset(&points)),
            )
        }
        None => (None, None),
    };

    OracleSection {
        optimum: oracle.optimum.clone(),
        vertex_count: oracle.vertices.len(),
        optimal_vertex_count: oracle.optimal_vertices.len(),
        lambda_matches,
        optimal_set_matches: pipeline_optimal_extreme == reference_optimal,
        optimal_points_cover_oracle: reference_optimal.is_subset(&pipeline_optimal),
        extreme_set_matches,
        vertices_covered,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub unix_time: u64,
}

impl Meta {
    pub fn now() -> Self {
        Meta {
            unix_time: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutput {
    #[serde(flatten)]
    pub report: SolveReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<LevelTrace>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameOutput {
    #[serde(flatten)]
    pub solution: GameSolution,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<LevelTrace>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub strategy: Vec<Rational>,
    pub claimed_value: Rational,
    pub row_values: Vec<Rational>,
    pub max_row_value: Rational,
    pub optimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

fn fmt_rat(value: &Rational, decimal: bool) -> String {
    if decimal {
        format!("{:.6}", value.to_f64())
    } else {
        value.to_string()
    }
}

fn fmt_vec(values: &[Rational], decimal: bool) -> String {
    let inner: Vec<String> = values.iter().map(|v| fmt_rat(v, decimal)).collect();
    format!("({})", inner.join(", "))
}

/// Column-aligned table: the first column is left-aligned, the rest right.
fn render_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i == 0 {
                line.push_str(&format!("{cell:<width$}", width = widths[i]));
            } else {
                line.push_str(&format!("{cell:>width$}", width = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn vertices_table(vertices: &[crate::solution::Vertex], decimal: bool) -> String {
    let mut rows = vec![vec![
        "#".to_string(),
        "label".to_string(),
        "d^1".to_string(),
        "d^2".to_string(),
        "objective".to_string(),
        "extreme".to_string(),
        "x".to_string(),
    ]];
    for (i, v) in vertices.iter().enumerate() {
        let mut label = v.label.to_string();
        for extra in &v.other_labels {
            label.push_str(&format!(" = {extra}"));
        }
        rows.push(vec![
            (i + 1).to_string(),
            label,
            fmt_rat(&v.d1, decimal),
            fmt_rat(&v.d2, decimal),
            fmt_rat(&v.objective, decimal),
            if v.extreme { "yes" } else { "no" }.to_string(),
            fmt_vec(&v.x, decimal),
        ]);
    }
    render_table(&rows)
}

fn oracle_text(section: &OracleSection) -> String {
    let mut out = String::from("oracle check (exhaustive tight-set enumeration):\n");
    let optimum = match &section.optimum {
        Optimum::Value(v) => v.to_string(),
        Optimum::Unbounded => "unbounded".to_string(),
    };
    out.push_str(&format!(
        "  optimum: {optimum}; vertices: {}; optimal vertices: {}\n",
        section.vertex_count, section.optimal_vertex_count
    ));
    let yn = |b: bool| if b { "yes" } else { "NO" };
    out.push_str(&format!(
        "  lambda_bar matches best vertex objective: {}\n",
        yn(section.lambda_matches)
    ));
    out.push_str(&format!(
        "  extreme optimal points equal oracle optimal set: {}\n",
        yn(section.optimal_set_matches)
    ));
    out.push_str(&format!(
        "  optimal points cover oracle optimal set: {}\n",
        yn(section.optimal_points_cover_oracle)
    ));
    if let Some(b) = section.extreme_set_matches {
        out.push_str(&format!(
            "  extreme points equal oracle vertex set: {}\n",
            yn(b)
        ));
    }
    if let Some(b) = section.vertices_covered {
        out.push_str(&format!(
            "  every oracle vertex appears among the points: {}\n",
            yn(b)
        ));
    }
    out
}

fn trace_text(trace: &[LevelTrace], decimal: bool) -> String {
    let mut out = String::new();
    for level in trace {
        out.push_str(&format!(
            "level {} ({} elements):\n",
            level.level,
            level.labels.len()
        ));
        let mut rows = Vec::new();
        let mut header = vec!["omega".to_string()];
        header.extend(level.labels.iter().map(|l| l.to_string()));
        rows.push(header);
        for row in &level.rows {
            let mut cells = vec![row.name.clone()];
            cells.extend(row.values.iter().map(|v| fmt_rat(v, decimal)));
            rows.push(cells);
        }
        for line in render_table(&rows).lines() {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

fn report_text(out: &mut String, output: &SolveOutput, decimal: bool, all: bool) {
    let report = &output.report;
    let counts: Vec<String> = report
        .level_counts
        .iter()
        .enumerate()
        .map(|(i, c)| format!("|Omega_{}| = {}", i + 1, c))
        .collect();
    out.push_str(&format!("levels: {}\n", counts.join(", ")));
    if let Some(order) = &report.constraint_order {
        let order: Vec<String> = order.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "constraint order used internally (original row numbers): {}\n",
            order.join(", ")
        ));
    }
    for rho in &report.rho_tables {
        let entries: Vec<String> = rho
            .entries
            .iter()
            .enumerate()
            .map(|(i, parent)| format!("[{}]_{} -> {}", i + 1, rho.level, parent))
            .collect();
        out.push_str(&format!("rho_{}: {}\n", rho.level - 1, entries.join(", ")));
    }
    out.push('\n');

    out.push_str(&format!(
        "optimal vertices ({}):\n",
        report.optimal_vertices.len()
    ));
    out.push_str(&vertices_table(&report.optimal_vertices, decimal));
    out.push('\n');

    if all {
        if let Some(all_vertices) = &report.all_vertices {
            out.push_str(&format!("all points ({}):\n", all_vertices.len()));
            out.push_str(&vertices_table(all_vertices, decimal));
            out.push('\n');
        }
    }

    out.push_str(&format!("ratio table ({} rows):\n", report.ratio_table.len()));
    let mut rows = vec![vec![
        "#".to_string(),
        "label".to_string(),
        "d^1".to_string(),
        "d^2".to_string(),
        "d^1/d^2".to_string(),
    ]];
    for (i, row) in report.ratio_table.iter().enumerate() {
        rows.push(vec![
            (i + 1).to_string(),
            row.label.to_string(),
            fmt_rat(&row.d1, decimal),
            fmt_rat(&row.d2, decimal),
            row.ratio
                .as_ref()
                .map(|r| fmt_rat(r, decimal))
                .unwrap_or_else(|| "-".to_string()),
        ]);
    }
    out.push_str(&render_table(&rows));

    if let Some(section) = &output.oracle {
        out.push('\n');
        out.push_str(&oracle_text(section));
    }
    if let Some(trace) = &output.trace {
        out.push('\n');
        out.push_str(&trace_text(trace, decimal));
    }
    if let Some(meta) = &output.meta {
        out.push_str(&format!("\ngenerated at unix time {}\n", meta.unix_time));
    }
}

pub fn solve_text(output: &SolveOutput, decimal: bool, all: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "lambda_bar = {}\n",
        fmt_rat(&output.report.lambda_bar, decimal)
    ));
    report_text(&mut out, output, decimal, all);
    out
}

pub fn game_text(output: &GameOutput, decimal: bool, all: bool) -> String {
    let solution = &output.solution;
    let mut out = String::new();
    out.push_str(&format!(
        "value of the reduced LP (lambda_bar) = {}\n",
        fmt_rat(&solution.lp_value, decimal)
    ));
    out.push_str(&format!(
        "value of the game = {}\n\n",
        fmt_rat(&solution.game_value, decimal)
    ));

    let columns = solution.strategies.len();
    out.push_str(&format!(
        "optimal strategies of the column player ({columns}):\n"
    ));
    if columns > 0 {
        let coords = solution.strategies[0].len();
        let mut rows = Vec::new();
        let mut header = vec![String::new()];
        header.extend((1..=columns).map(|i| i.to_string()));
        rows.push(header);
        for j in 0..coords {
            let mut cells = vec![format!("y_{}", j + 1)];
            cells.extend(
                solution
                    .strategies
                    .iter()
                    .map(|s| fmt_rat(&s[j], decimal)),
            );
            rows.push(cells);
        }
        out.push_str(&render_table(&rows));
    }
    out.push('\n');

    let solve_output = SolveOutput {
        report: solution.report.clone(),
        oracle: output.oracle.clone(),
        trace: output.trace.clone(),
        meta: output.meta.clone(),
    };
    out.push_str("underlying LP report:\n");
    report_text(&mut out, &solve_output, decimal, all);
    out
}

pub fn verify_text(output: &VerifyOutput, decimal: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("strategy: {}\n", fmt_vec(&output.strategy, decimal)));
    out.push_str(&format!(
        "claimed value: {}\n",
        fmt_rat(&output.claimed_value, decimal)
    ));
    out.push_str(&format!(
        "row values: {}\n",
        fmt_vec(&output.row_values, decimal)
    ));
    out.push_str(&format!(
        "max row value: {}\n",
        fmt_rat(&output.max_row_value, decimal)
    ));
    out.push_str(&format!(
        "optimal: {}\n",
        if output.optimal { "yes" } else { "no" }
    ));
    if let Some(meta) = &output.meta {
        out.push_str(&format!("generated at unix time {}\n", meta.unix_time));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::williams_problem;
    use crate::solution::{solve_with_levels, SolveOptions};

    #[test]
    fn solve_output_json_round_trip() {
        let options = SolveOptions {
            want_all: true,
            keep_levels: true,
            ..Default::default()
        };
        let (report, run) = solve_with_levels(&williams_problem(), &options).unwrap();
        let problem = williams_problem();
        let oracle = crate::oracle::enumerate_vertices(&problem).unwrap();
        let output = SolveOutput {
            oracle: Some(oracle_section(&problem, &report, &oracle)),
            trace: Some(trace_levels(run.levels.as_ref().unwrap(), 3)),
            meta: None,
            report,
        };
        let json = to_json(&output);
        let back: SolveOutput = serde_json::from_str(&json).unwrap();
        assert_eq!(back, output);
    }

    #[test]
    fn williams_trace_names_follow_the_level_tables() {
        let options = SolveOptions {
            keep_levels: true,
            ..Default::default()
        };
        let (_, run) = solve_with_levels(&williams_problem(), &options).unwrap();
        let trace = trace_levels(run.levels.as_ref().unwrap(), 3);
        assert_eq!(trace.len(), 3);
        let names: Vec<Vec<&str>> = trace
            .iter()
            .map(|t| t.rows.iter().map(|r| r.name.as_str()).collect())
            .collect();
        assert_eq!(names[0], vec!["f^1", "f^2", "e^1", "e^2"]);
        assert_eq!(names[1], vec!["g^2", "G(1)e^1", "G(1)e^2"]);
        assert_eq!(names[2], vec!["d^1", "d^2"]);
        assert_eq!(
            trace[1].rows[2].values,
            [4, 3, 2, 6, 1, 28, 24, 36, 32, 7, 6].map(Rational::from_int)
        );
    }

    #[test]
    fn williams_oracle_section_all_green() {
        let options = SolveOptions {
            want_all: true,
            ..Default::default()
        };
        let (report, _) = solve_with_levels(&williams_problem(), &options).unwrap();
        let problem = williams_problem();
        let oracle = crate::oracle::enumerate_vertices(&problem).unwrap();
        let section = oracle_section(&problem, &report, &oracle);
        assert!(section.lambda_matches);
        assert!(section.optimal_set_matches);
        assert!(section.optimal_points_cover_oracle);
        assert_eq!(section.extreme_set_matches, Some(true));
        assert_eq!(section.vertices_covered, Some(true));
        assert_eq!(section.vertex_count, 27);
        assert_eq!(section.optimal_vertex_count, 8);
    }

    #[test]
    fn text_rendering_is_deterministic() {
        let options = SolveOptions {
            want_all: true,
            ..Default::default()
        };
        let (report, _) = solve_with_levels(&williams_problem(), &options).unwrap();
        let output = SolveOutput {
            report,
            oracle: None,
            trace: None,
            meta: None,
        };
        let first = solve_text(&output, false, true);
        let second = solve_text(&output, false, true);
        assert_eq!(first, second);
        assert!(first.starts_with("lambda_bar = 3/10\n"));
        assert!(first.contains("rho_2: [1]_3 -> [4]_2"));
    }
}
