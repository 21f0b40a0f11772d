//! Input parsing for problems, games, and strategy files.
//!
//! Two formats per input kind. JSON carries every number as an integer, a
//! fraction string `"p/q"`, or a decimal string; non-integer JSON number
//! literals are rejected so nothing ever passes through floating point.
//! The whitespace text formats are line-oriented and report errors with
//! line and column.

use serde_json::Value;

use crate::error::Error;
use crate::game::MatrixGame;
use crate::problem::LpProblem;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    Auto,
    Json,
    Text,
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn rational_from_json(value: &Value, context: &str) -> Result<Rational, Error> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_int(i))
            } else if n.as_u64().is_some() || n.is_f64() {
                Err(Error::InvalidProblem(format!(
                    "{context}: non-integer or oversized JSON number {n}; \
                     write it as a string like \"p/q\""
                )))
            } else {
                Err(Error::BadNumber { text: n.to_string() })
            }
        }
        Value::String(s) => Rational::parse(s),
        other => Err(Error::InvalidProblem(format!(
            "{context}: expected a number or string, found {other}"
        ))),
    }
}

fn rational_vec(value: &Value, context: &str) -> Result<Vec<Rational>, Error> {
    let items = value.as_array().ok_or_else(|| {
        Error::InvalidProblem(format!("{context}: expected an array"))
    })?;
    items
        .iter()
        .map(|v| rational_from_json(v, context))
        .collect()
}

fn rational_matrix(value: &Value, context: &str) -> Result<Vec<Vec<Rational>>, Error> {
    let rows = value.as_array().ok_or_else(|| {
        Error::InvalidProblem(format!("{context}: expected an array of rows"))
    })?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| rational_vec(row, &format!("{context} row {}", i + 1)))
        .collect()
}

fn json_value(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        message: e.to_string(),
    })
}

fn field<'v>(object: &'v Value, name: &str) -> Result<&'v Value, Error> {
    object
        .get(name)
        .ok_or_else(|| Error::InvalidProblem(format!("missing field {name:?}")))
}

/// `{"n":…, "m":…, "c":[…], "A":[[…]], "b":[…]}`. The declared sizes are
/// cross-checked against the arrays.
pub fn parse_problem_json(text: &str) -> Result<LpProblem, Error> {
    let value = json_value(text)?;
    let c = rational_vec(field(&value, "c")?, "c")?;
    let a = rational_matrix(field(&value, "A")?, "A")?;
    let b = rational_vec(field(&value, "b")?, "b")?;
    for (name, declared, actual) in [("n", value.get("n"), c.len()), ("m", value.get("m"), b.len())]
    {
        if let Some(v) = declared {
            if v.as_u64() != Some(actual as u64) {
                return Err(Error::InvalidProblem(format!(
                    "declared {name} = {v} does not match the data ({actual})"
                )));
            }
        }
    }
    LpProblem::new(c, a, b)
}

/// Tokens with their 1-based positions, blank lines skipped.
struct Tokens<'a> {
    items: Vec<(usize, usize, &'a str)>,
    cursor: usize,
}

impl<'a> Tokens<'a> {
    fn scan(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (line_idx, line) in text.lines().enumerate() {
            let mut col = 0;
            for piece in line.split_whitespace() {
                let start = line[col..].find(piece).unwrap() + col;
                items.push((line_idx + 1, start + 1, piece));
                col = start + piece.len();
            }
        }
        Tokens { items, cursor: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, usize, &'a str), Error> {
        let item = self.items.get(self.cursor).copied().ok_or_else(|| {
            let (line, col) = self
                .items
                .last()
                .map(|&(l, c, t)| (l, c + t.len()))
                .unwrap_or((1, 1));
            Error::Parse {
                line,
                col,
                message: format!("unexpected end of input, expected {what}"),
            }
        })?;
        self.cursor += 1;
        Ok(item)
    }

    fn usize(&mut self, what: &str) -> Result<usize, Error> {
        let (line, col, text) = self.next(what)?;
        text.parse().map_err(|_| Error::Parse {
            line,
            col,
            message: format!("expected {what}, found {text:?}"),
        })
    }

    fn rational(&mut self, what: &str) -> Result<Rational, Error> {
        let (line, col, text) = self.next(what)?;
        Rational::parse(text).map_err(|_| Error::Parse {
            line,
            col,
            message: format!("expected {what} as a number, found {text:?}"),
        })
    }

    fn finish(&self) -> Result<(), Error> {
        if let Some(&(line, col, text)) = self.items.get(self.cursor) {
            return Err(Error::Parse {
                line,
                col,
                message: format!("unexpected trailing token {text:?}"),
            });
        }
        Ok(())
    }
}

/// First line `n m`, then the m rows of A, then the b line, then the c line.
pub fn parse_problem_text(text: &str) -> Result<LpProblem, Error> {
    let mut tokens = Tokens::scan(text);
    let n = tokens.usize("the variable count n")?;
    let m = tokens.usize("the constraint count m")?;
    let mut a = Vec::with_capacity(m);
    for row in 0..m {
        let mut entries = Vec::with_capacity(n);
        for col in 0..n {
            entries.push(tokens.rational(&format!("A[{},{}]", row + 1, col + 1))?);
        }
        a.push(entries);
    }
    let mut b = Vec::with_capacity(m);
    for row in 0..m {
        b.push(tokens.rational(&format!("b[{}]", row + 1))?);
    }
    let mut c = Vec::with_capacity(n);
    for col in 0..n {
        c.push(tokens.rational(&format!("c[{}]", col + 1))?);
    }
    tokens.finish()?;
    LpProblem::new(c, a, b)
}

pub fn parse_problem(text: &str, format: InputFormat) -> Result<LpProblem, Error> {
    match format {
        InputFormat::Json => parse_problem_json(text),
        InputFormat::Text => parse_problem_text(text),
        InputFormat::Auto => {
            if looks_like_json(text) {
                parse_problem_json(text)
            } else {
                parse_problem_text(text)
            }
        }
    }
}

/// `{"payoff": [[…]], "shift": "0"}`; shift defaults to zero.
pub fn parse_game_json(text: &str) -> Result<MatrixGame, Error> {
    let value = json_value(text)?;
    let payoff = rational_matrix(field(&value, "payoff")?, "payoff")?;
    let shift = match value.get("shift") {
        Some(v) => rational_from_json(v, "shift")?,
        None => Rational::zero(),
    };
    MatrixGame::new(payoff, shift)
}

/// A bare whitespace matrix: one payoff row per line.
pub fn parse_game_text(text: &str) -> Result<MatrixGame, Error> {
    let mut payoff: Vec<Vec<Rational>> = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut col = 0;
        for piece in line.split_whitespace() {
            let start = line[col..].find(piece).unwrap() + col;
            row.push(Rational::parse(piece).map_err(|_| Error::Parse {
                line: line_idx + 1,
                col: start + 1,
                message: format!("expected a payoff entry, found {piece:?}"),
            })?);
            col = start + piece.len();
        }
        if let Some(first) = payoff.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: line_idx + 1,
                    col: 1,
                    message: format!(
                        "payoff row has {} entries, previous rows have {}",
                        row.len(),
                        first.len()
                    ),
                });
            }
        }
        payoff.push(row);
    }
    MatrixGame::new(payoff, Rational::zero())
}

pub fn parse_game(text: &str, format: InputFormat) -> Result<MatrixGame, Error> {
    match format {
        InputFormat::Json => parse_game_json(text),
        InputFormat::Text => parse_game_text(text),
        InputFormat::Auto => {
            if looks_like_json(text) {
                parse_game_json(text)
            } else {
                parse_game_text(text)
            }
        }
    }
}

/// A claimed solution: the strategy vector plus the claimed value.
/// JSON `{"strategy": […], "value": …}` or text with the strategy entries
/// on the first line and the value on the second.
pub fn parse_strategy(text: &str) -> Result<(Vec<Rational>, Rational), Error> {
    if looks_like_json(text) {
        let value = json_value(text)?;
        let strategy = rational_vec(field(&value, "strategy")?, "strategy")?;
        let claimed = rational_from_json(field(&value, "value")?, "value")?;
        return Ok((strategy, claimed));
    }
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let strategy_line = lines.next().ok_or(Error::Parse {
        line: 1,
        col: 1,
        message: "expected a strategy line".into(),
    })?;
    let strategy = strategy_line
        .split_whitespace()
        .map(Rational::parse)
        .collect::<Result<Vec<_>, _>>()?;
    let value_line = lines.next().ok_or(Error::Parse {
        line: 2,
        col: 1,
        message: "expected a value line after the strategy".into(),
    })?;
    let claimed = Rational::parse(value_line.trim())?;
    Ok((strategy, claimed))
}
