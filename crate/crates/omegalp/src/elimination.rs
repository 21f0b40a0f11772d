//! Level-by-level elimination.
//!
//! Starting from the base index set, each step consumes one constraint
//! function `g^l`: elements where `g^l <= 0` are kept unchanged, and every
//! (negative, positive) pair combines into a new element via
//! `h' = g^l(pos) * h(neg) - g^l(neg) * h(pos)`, which annihilates `g^l`
//! exactly and keeps all transported quantities nonnegative combinations of
//! their parents. After m-1 steps the survivors carry the objective and
//! normalization values `d^1`, `d^2`, and a kernel row over the base set
//! from which vertex coordinates are read off.

use crate::error::Error;
use crate::label::Label;
use crate::problem::ReducedData;
use crate::rational::Rational;

/// One element of a level: its identity, its expansion over the base set,
/// and the transported values of every not-yet-consumed function
/// (remaining `f^j` first, then `e^1`, `e^2` in the last two slots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelElement {
    pub label: Label,
    pub kernel_row: Vec<Rational>,
    pub carried: Vec<Rational>,
}

impl LevelElement {
    /// Current constraint value; only meaningful before the final level.
    pub fn g(&self) -> &Rational {
        &self.carried[0]
    }

    /// Transported objective value at the final level.
    pub fn d1(&self) -> &Rational {
        &self.carried[self.carried.len() - 2]
    }

    /// Transported normalization value at the final level.
    pub fn d2(&self) -> &Rational {
        &self.carried[self.carried.len() - 1]
    }
}

/// Sign partition of a level's `g` values, 0-based ascending positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignPartition {
    pub zero: Vec<usize>,
    pub neg: Vec<usize>,
    pub pos: Vec<usize>,
}

impl SignPartition {
    /// Positions carried to the next level: zero and negative, ascending.
    pub fn kept(&self) -> Vec<usize> {
        let mut kept: Vec<usize> = self.zero.iter().chain(&self.neg).copied().collect();
        kept.sort_unstable();
        kept
    }

    /// Size of the next level.
    pub fn next_len(&self) -> usize {
        self.zero.len() + self.neg.len() + self.neg.len() * self.pos.len()
    }
}

pub fn sign_partition(values: &[Rational]) -> SignPartition {
    let mut partition = SignPartition::default();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            partition.zero.push(i);
        } else if v.is_negative() {
            partition.neg.push(i);
        } else {
            partition.pos.push(i);
        }
    }
    partition
}

/// Lexicographic pair order: negative index first, positive index second.
pub fn ordered_pairs(neg: &[usize], pos: &[usize]) -> Vec<(usize, usize)> {
    neg.iter()
        .flat_map(|&n| pos.iter().map(move |&p| (n, p)))
        .collect()
}

/// One level of the construction. `partition` is present while a constraint
/// remains to be consumed (`carried` longer than the two `e` slots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelState {
    pub level: usize,
    pub elements: Vec<LevelElement>,
    pub partition: Option<SignPartition>,
}

impl LevelState {
    pub fn new(level: usize, elements: Vec<LevelElement>) -> Self {
        let partition = elements
            .first()
            .filter(|e| e.carried.len() > 2)
            .map(|_| sign_partition(&elements.iter().map(|e| e.g().clone()).collect::<Vec<_>>()));
        LevelState {
            level,
            elements,
            partition,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_final(&self) -> bool {
        self.partition.is_none()
    }
}

/// Level 1: base elements with unit kernel rows, carrying every `f^j`
/// followed by `e^1` and `e^2`.
pub fn initial_state(red: &ReducedData) -> LevelState {
    let len = red.base_len();
    let elements = (0..len)
        .map(|i| {
            let mut kernel_row = vec![Rational::zero(); len];
            kernel_row[i] = Rational::one();
            let mut carried: Vec<Rational> = red.fs.iter().map(|f| f[i].clone()).collect();
            carried.push(red.e1[i].clone());
            carried.push(red.e2[i].clone());
            LevelElement {
                label: Label::base(i + 1),
                kernel_row,
                carried,
            }
        })
        .collect();
    LevelState::new(1, elements)
}

/// Consumes the current `g` level: kept elements first (in ascending order,
/// values unchanged), then one element per (negative, positive) pair with
/// every transported quantity combined as `g(pos) * h(neg) - g(neg) * h(pos)`.
pub fn advance(state: &LevelState) -> LevelState {
    let partition = state
        .partition
        .as_ref()
        .expect("advance called on a final level");
    let next_level = state.level + 1;
    let mut elements = Vec::with_capacity(partition.next_len());

    for &i in &partition.kept() {
        let parent = &state.elements[i];
        elements.push(LevelElement {
            label: Label::kept(next_level, elements.len() + 1),
            kernel_row: parent.kernel_row.clone(),
            carried: parent.carried[1..].to_vec(),
        });
    }

    for (ni, pi) in ordered_pairs(&partition.neg, &partition.pos) {
        let neg = &state.elements[ni];
        let pos = &state.elements[pi];
        let g_neg = neg.g();
        let g_pos = pos.g();
        let combine = |vn: &Rational, vp: &Rational| g_pos * vn - g_neg * vp;
        elements.push(LevelElement {
            label: Label::pair(next_level, neg.label.clone(), pos.label.clone()),
            kernel_row: neg
                .kernel_row
                .iter()
                .zip(&pos.kernel_row)
                .map(|(vn, vp)| combine(vn, vp))
                .collect(),
            carried: neg.carried[1..]
                .iter()
                .zip(&pos.carried[1..])
                .map(|(vn, vp)| combine(vn, vp))
                .collect(),
        });
    }

    LevelState::new(next_level, elements)
}

/// Kept-element mapping of one transition: `entries[r-1]` is the parent
/// label of the element written `[r]_level`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RhoTable {
    pub level: usize,
    pub entries: Vec<Label>,
}

#[derive(Clone, Debug, Default)]
pub struct EliminationOptions {
    /// Cap on any single level's element count; pairing growth is quadratic
    /// per level, so blow-ups surface as an explicit error.
    pub max_elements: Option<usize>,
    /// Keep every intermediate level for trace output.
    pub keep_levels: bool,
}

pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct EliminationRun {
    pub final_state: LevelState,
    pub rho_tables: Vec<RhoTable>,
    pub level_counts: Vec<usize>,
    /// All levels including the final one, when requested.
    pub levels: Option<Vec<LevelState>>,
}

/// Runs all m-1 transitions from the reduced data.
pub fn run_elimination(
    red: &ReducedData,
    options: &EliminationOptions,
) -> Result<EliminationRun, Error> {
    let cap = options.max_elements.unwrap_or(DEFAULT_MAX_ELEMENTS);
    let mut state = initial_state(red);
    let mut rho_tables = Vec::new();
    let mut level_counts = vec![state.len()];
    let mut levels = options.keep_levels.then(|| vec![state.clone()]);

    while let Some(partition) = &state.partition {
        let required = partition.next_len();
        if required > cap {
            return Err(Error::SizeLimitExceeded {
                level: state.level + 1,
                required,
                cap,
            });
        }
        rho_tables.push(RhoTable {
            level: state.level + 1,
            entries: partition
                .kept()
                .iter()
                .map(|&i| state.elements[i].label.clone())
                .collect(),
        });
        state = advance(&state);
        level_counts.push(state.len());
        if let Some(levels) = levels.as_mut() {
            levels.push(state.clone());
        }
    }

    Ok(EliminationRun {
        final_state: state,
        rho_tables,
        level_counts,
        levels,
    })
}
