//! Command-line front end.
//!
//! Four subcommands: `solve` and `vertices` for LP inputs, `game` for a
//! payoff matrix, `verify` for checking a claimed strategy. Default output
//! is text; `--json` switches to the machine format. Exit status: 0 on
//! success, 1 on a user error, 2 on an internal invariant breach, 3 when a
//! resource guard triggers.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::game::{solve_game, verify_strategy, MatrixGame};
use crate::io::{parse_game, parse_problem, parse_strategy, InputFormat};
use crate::oracle::enumerate_vertices;
use crate::rational::Rational;
use crate::report::{
    game_text, oracle_section, solve_text, to_json, trace_levels, verify_text, GameOutput, Meta,
    SolveOutput, VerifyOutput,
};
use crate::solution::{solve_with_levels, SolveOptions};

pub const MAX_ELEMENTS_ENV: &str = "OMEGA_MAX_ELEMENTS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    #[default]
    Auto,
    Json,
    Text,
}

impl From<FormatArg> for InputFormat {
    fn from(arg: FormatArg) -> InputFormat {
        match arg {
            FormatArg::Auto => InputFormat::Auto,
            FormatArg::Json => InputFormat::Json,
            FormatArg::Text => InputFormat::Text,
        }
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct OutputFlags {
    /// Emit the machine-readable JSON report instead of text tables.
    #[arg(long)]
    pub json: bool,
    /// Render numbers as decimal approximations in text output.
    #[arg(long)]
    pub decimal: bool,
    /// Include generation metadata (timestamps) in the report.
    #[arg(long)]
    pub meta: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Default)]
pub struct SolveFlags {
    /// Input format; `auto` sniffs JSON by a leading brace.
    #[arg(long, value_enum, default_value_t)]
    pub format: FormatArg,
    /// Cross-check against exhaustive vertex enumeration.
    #[arg(long)]
    pub oracle_check: bool,
    /// Append per-level tables of every transported function.
    #[arg(long)]
    pub trace_levels: bool,
    /// Cap on the element count of any level (default 1000000; the
    /// OMEGA_MAX_ELEMENTS environment variable overrides the default).
    #[arg(long)]
    pub max_elements: Option<usize>,
}

#[derive(Parser, Debug)]
#[command(
    name = "omegalp",
    about = "Exact LP and matrix-game solver that enumerates every optimal vertex",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve an LP and report the optimal value and all optimal vertices.
    Solve {
        /// Problem file (JSON or whitespace text).
        input: PathBuf,
        /// Also list every distinct point of the final level.
        #[arg(long)]
        all_vertices: bool,
        #[command(flatten)]
        solve: SolveFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Solve an LP and report every distinct vertex of the feasible set.
    Vertices {
        input: PathBuf,
        #[command(flatten)]
        solve: SolveFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Solve a zero-sum matrix game for the column player.
    Game {
        /// Payoff file (whitespace matrix or JSON).
        input: PathBuf,
        /// Add this rational to every payoff entry before the reduction.
        #[arg(long)]
        shift: Option<String>,
        #[command(flatten)]
        solve: SolveFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Check a claimed strategy/value pair against a payoff matrix.
    Verify {
        /// Payoff file (whitespace matrix or JSON).
        game: PathBuf,
        /// Strategy file: entries then value, or JSON {"strategy", "value"}.
        strategy: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[command(flatten)]
        output: OutputFlags,
    },
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn effective_cap(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var(MAX_ELEMENTS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn emit(text: String, target: &Option<PathBuf>) -> Result<(), Error> {
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_solve(
    input: &Path,
    want_all: bool,
    solve_flags: &SolveFlags,
    output_flags: &OutputFlags,
) -> Result<(), Error> {
    let text = read_file(input)?;
    let problem = parse_problem(&text, solve_flags.format.into())?;
    let options = SolveOptions {
        want_all: want_all || solve_flags.oracle_check,
        max_elements: effective_cap(solve_flags.max_elements),
        keep_levels: solve_flags.trace_levels,
    };
    let (mut report, run) = solve_with_levels(&problem, &options)?;
    let oracle = if solve_flags.oracle_check {
        let result = enumerate_vertices(&problem)?;
        Some(oracle_section(&problem, &report, &result))
    } else {
        None
    };
    if !want_all {
        report.all_vertices = None;
    }
    let output = SolveOutput {
        report,
        oracle,
        trace: run
            .levels
            .as_ref()
            .map(|levels| trace_levels(levels, problem.m())),
        meta: output_flags.meta.then(Meta::now),
    };
    let rendered = if output_flags.json {
        to_json(&output)
    } else {
        solve_text(&output, output_flags.decimal, want_all)
    };
    emit(rendered, &output_flags.output)
}

fn run_game(
    input: &Path,
    shift: &Option<String>,
    solve_flags: &SolveFlags,
    output_flags: &OutputFlags,
) -> Result<(), Error> {
    let text = read_file(input)?;
    let mut game = parse_game(&text, solve_flags.format.into())?;
    if let Some(shift) = shift {
        game = MatrixGame::new(game.payoff, Rational::parse(shift)?)?;
    }
    let options = SolveOptions {
        want_all: solve_flags.oracle_check,
        max_elements: effective_cap(solve_flags.max_elements),
        keep_levels: solve_flags.trace_levels,
    };
    let solution = solve_game(&game, &options)?;
    let problem = crate::game::game_to_lp(&game);
    let oracle = if solve_flags.oracle_check {
        let result = enumerate_vertices(&problem)?;
        Some(oracle_section(&problem, &solution.report, &result))
    } else {
        None
    };
    let trace = if solve_flags.trace_levels {
        // Levels are not kept through solve_game's report; recompute.
        let (_, run) = solve_with_levels(
            &problem,
            &SolveOptions {
                keep_levels: true,
                max_elements: effective_cap(solve_flags.max_elements),
                want_all: false,
            },
        )?;
        run.levels.map(|levels| trace_levels(&levels, problem.m()))
    } else {
        None
    };
    let mut output = GameOutput {
        solution,
        oracle,
        trace,
        meta: output_flags.meta.then(Meta::now),
    };
    // The vertex list is only materialized for the oracle comparison;
    // strategies and the agreement section are the game-level output.
    output.solution.report.all_vertices = None;
    let rendered = if output_flags.json {
        to_json(&output)
    } else {
        game_text(&output, output_flags.decimal, false)
    };
    emit(rendered, &output_flags.output)
}

fn run_verify(
    game_path: &Path,
    strategy_path: &Path,
    format: FormatArg,
    output_flags: &OutputFlags,
) -> Result<(), Error> {
    let game = parse_game(&read_file(game_path)?, format.into())?;
    let (strategy, claimed) = parse_strategy(&read_file(strategy_path)?)?;
    let (optimal, row_values) = verify_strategy(&game, &strategy, &claimed)?;
    let max_row_value = row_values.iter().max().cloned().expect("nonempty rows");
    let output = VerifyOutput {
        strategy,
        claimed_value: claimed,
        row_values,
        max_row_value,
        optimal,
        meta: output_flags.meta.then(Meta::now),
    };
    let rendered = if output_flags.json {
        to_json(&output)
    } else {
        verify_text(&output, output_flags.decimal)
    };
    emit(rendered, &output_flags.output)
}

/// Runs one parsed command; the caller maps the error to an exit status.
pub fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Solve {
            input,
            all_vertices,
            solve,
            output,
        } => run_solve(input, *all_vertices, solve, output),
        Command::Vertices {
            input,
            solve,
            output,
        } => run_solve(input, true, solve, output),
        Command::Game {
            input,
            shift,
            solve,
            output,
        } => run_game(input, shift, solve, output),
        Command::Verify {
            game,
            strategy,
            format,
            output,
        } => run_verify(game, strategy, *format, output),
    }
}
