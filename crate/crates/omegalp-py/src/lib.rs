//! Python bindings for the omegalp solver.
//!
//! Numbers cross the boundary as ints or strings (`"p/q"`, decimals) and
//! come back as exact fraction strings inside plain dicts and lists, so
//! nothing is ever rounded. The heavy lifting stays in the core crate.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use omegalp::game::{game_to_lp, MatrixGame};
use omegalp::oracle::enumerate_vertices as oracle_enumerate;
use omegalp::problem::LpProblem;
use omegalp::rational::Rational;
use omegalp::report::{oracle_section, to_json, trace_levels, GameOutput, SolveOutput};
use omegalp::solution::{solve_with_levels, SolveOptions};
use omegalp::Error;

fn to_py_err(err: Error) -> PyErr {
    match err.exit_code() {
        2 => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn rational_from_py(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(int) = value.extract::<i64>() {
        return Ok(Rational::from_int(int));
    }
    let text: String = value.extract().map_err(|_| {
        PyValueError::new_err(format!(
            "expected an int or a numeric string, got {}",
            value
                .get_type()
                .name()
                .map(|n| n.to_string())
                .unwrap_or_default()
        ))
    })?;
    Rational::parse(&text).map_err(to_py_err)
}

fn vector_from_py(values: &Bound<'_, PyAny>) -> PyResult<Vec<Rational>> {
    values
        .iter()?
        .map(|item| rational_from_py(&item?))
        .collect()
}

fn matrix_from_py(rows: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<Rational>>> {
    rows.iter()?.map(|row| vector_from_py(&row?)).collect()
}

fn problem_from_py(
    c: &Bound<'_, PyAny>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
) -> PyResult<LpProblem> {
    LpProblem::new(vector_from_py(c)?, matrix_from_py(a)?, vector_from_py(b)?).map_err(to_py_err)
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<PyObject> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py(py)
            }
        }
        Value::String(s) => s.into_py(py),
        Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_py(py)
        }
    })
}

fn serialize_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let json = serde_json::to_value(value)
        .map_err(|e| PyRuntimeError::new_err(format!("report serialization failed: {e}")))?;
    json_to_py(py, &json)
}

/// Solve `maximize c.x subject to x >= 0, A x <= b` exactly.
///
/// Returns a dict with `lambda_bar`, `optimal_vertices`, the full
/// `ratio_table`, level data, and optionally `all_vertices`, an `oracle`
/// agreement section, and per-level `trace` tables. All numbers are
/// fraction strings.
#[pyfunction]
#[pyo3(signature = (c, a, b, all_vertices=false, oracle_check=false, trace=false, max_elements=None))]
fn solve_lp(
    py: Python<'_>,
    c: &Bound<'_, PyAny>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    all_vertices: bool,
    oracle_check: bool,
    trace: bool,
    max_elements: Option<usize>,
) -> PyResult<PyObject> {
    let problem = problem_from_py(c, a, b)?;
    let options = SolveOptions {
        want_all: all_vertices || oracle_check,
        max_elements,
        keep_levels: trace,
    };
    let (mut report, run) = solve_with_levels(&problem, &options).map_err(to_py_err)?;
    let oracle = if oracle_check {
        let result = oracle_enumerate(&problem).map_err(to_py_err)?;
        Some(oracle_section(&problem, &report, &result))
    } else {
        None
    };
    if !all_vertices {
        report.all_vertices = None;
    }
    let output = SolveOutput {
        report,
        oracle,
        trace: run
            .levels
            .as_ref()
            .map(|levels| trace_levels(levels, problem.m())),
        meta: None,
    };
    serialize_to_py(py, &output)
}

/// Solve a zero-sum matrix game for the column player.
///
/// Returns a dict with `lp_value`, `game_value`, the optimal mixed
/// `strategies`, and the underlying LP report.
#[pyfunction]
#[pyo3(signature = (payoff, shift=None, oracle_check=false, max_elements=None))]
fn solve_game(
    py: Python<'_>,
    payoff: &Bound<'_, PyAny>,
    shift: Option<&Bound<'_, PyAny>>,
    oracle_check: bool,
    max_elements: Option<usize>,
) -> PyResult<PyObject> {
    let shift = match shift {
        Some(value) => rational_from_py(value)?,
        None => Rational::zero(),
    };
    let game = MatrixGame::new(matrix_from_py(payoff)?, shift).map_err(to_py_err)?;
    let options = SolveOptions {
        want_all: oracle_check,
        max_elements,
        keep_levels: false,
    };
    let solution = omegalp::game::solve_game(&game, &options).map_err(to_py_err)?;
    let oracle = if oracle_check {
        let problem = game_to_lp(&game);
        let result = oracle_enumerate(&problem).map_err(to_py_err)?;
        Some(oracle_section(&problem, &solution.report, &result))
    } else {
        None
    };
    let mut output = GameOutput {
        solution,
        oracle,
        trace: None,
        meta: None,
    };
    output.solution.report.all_vertices = None;
    serialize_to_py(py, &output)
}

/// Exhaustive ground-truth vertex enumeration (guarded to n + m <= 24).
#[pyfunction]
fn enumerate_vertices(
    py: Python<'_>,
    c: &Bound<'_, PyAny>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
) -> PyResult<PyObject> {
    let problem = problem_from_py(c, a, b)?;
    let result = oracle_enumerate(&problem).map_err(to_py_err)?;
    serialize_to_py(py, &result)
}

/// Check a claimed strategy/value pair: `optimal` is true iff the worst
/// payoff row of the strategy equals the claimed value.
#[pyfunction]
#[pyo3(signature = (payoff, strategy, value, shift=None))]
fn verify_strategy(
    py: Python<'_>,
    payoff: &Bound<'_, PyAny>,
    strategy: &Bound<'_, PyAny>,
    value: &Bound<'_, PyAny>,
    shift: Option<&Bound<'_, PyAny>>,
) -> PyResult<PyObject> {
    let shift = match shift {
        Some(value) => rational_from_py(value)?,
        None => Rational::zero(),
    };
    let game = MatrixGame::new(matrix_from_py(payoff)?, shift).map_err(to_py_err)?;
    let claimed = rational_from_py(value)?;
    let strategy = vector_from_py(strategy)?;
    let (optimal, rows) =
        omegalp::game::verify_strategy(&game, &strategy, &claimed).map_err(to_py_err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("optimal", optimal)?;
    dict.set_item(
        "row_values",
        rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    )?;
    dict.set_item(
        "max_row_value",
        rows.iter().max().map(|r| r.to_string()).unwrap_or_default(),
    )?;
    Ok(dict.into_py(py))
}

/// Render a report dict back to the canonical JSON text.
#[pyfunction]
fn report_json(report: &Bound<'_, PyAny>) -> PyResult<String> {
    let json: String = report
        .py()
        .import_bound("json")?
        .call_method1("dumps", (report,))?
        .extract()?;
    let value: serde_json::Value = serde_json::from_str(&json)
        .map_err(|e| PyValueError::new_err(format!("not a JSON-serializable report: {e}")))?;
    Ok(to_json(&value))
}

#[pymodule]
fn omegalp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(solve_lp, m)?)?;
    m.add_function(wrap_pyfunction!(solve_game, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(verify_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
