//! Recursive identities of level elements.
//!
//! A level-1 element is a plain base index `1..=n+1`. At every later level an
//! element is either a kept element, written `[rank]_level`, or a
//! negative-positive pair of the previous level's elements, written
//! `[neg,pos]_level` with the parent labels spelled out in full, e.g.
//! `[[6,2]_2,[1,4]_2]_3`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Level-1 index in `1..=n+1`.
    Base(usize),
    /// Element carried over unchanged; `rank` is its 1-based position among
    /// the kept block of its level.
    Kept { level: usize, rank: usize },
    /// Combination of a strictly negative and a strictly positive parent.
    Pair {
        level: usize,
        neg: Box<Label>,
        pos: Box<Label>,
    },
}

impl Label {
    pub fn base(index: usize) -> Self {
        Label::Base(index)
    }

    pub fn kept(level: usize, rank: usize) -> Self {
        debug_assert!(level >= 2 && rank >= 1);
        Label::Kept { level, rank }
    }

    pub fn pair(level: usize, neg: Label, pos: Label) -> Self {
        debug_assert!(level >= 2);
        Label::Pair {
            level,
            neg: Box::new(neg),
            pos: Box::new(pos),
        }
    }

    pub fn level(&self) -> usize {
        match self {
            Label::Base(_) => 1,
            Label::Kept { level, .. } | Label::Pair { level, .. } => *level,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Base(i) => write!(f, "{i}"),
            Label::Kept { level, rank } => write!(f, "[{rank}]_{level}"),
            Label::Pair { level, neg, pos } => write!(f, "[{neg},{pos}]_{level}"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            col: self.pos + 1,
            message: format!("label: {message}"),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, expected: char) -> Result<(), Error> {
        if self.peek() == Some(expected) {
            self.pos += expected.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected {expected:?}")))
        }
    }

    fn integer(&mut self) -> Result<usize, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error("index out of range"))
    }

    fn label(&mut self) -> Result<Label, Error> {
        if self.peek() != Some('[') {
            return Ok(Label::Base(self.integer()?));
        }
        self.eat('[')?;
        let first = self.label()?;
        let second = if self.peek() == Some(',') {
            self.eat(',')?;
            Some(self.label()?)
        } else {
            None
        };
        self.eat(']')?;
        self.eat('_')?;
        let level = self.integer()?;
        if level < 2 {
            return Err(self.error("bracketed labels start at level 2"));
        }
        match second {
            None => match first {
                Label::Base(rank) => Ok(Label::kept(level, rank)),
                _ => Err(self.error("kept labels carry a plain rank")),
            },
            Some(pos) => {
                for part in [&first, &pos] {
                    if part.level() != level - 1 {
                        return Err(self.error("pair components must come from the level below"));
                    }
                }
                Ok(Label::pair(level, first, pos))
            }
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            text: s.trim(),
            pos: 0,
        };
        let label = parser.label()?;
        if parser.pos != parser.text.len() {
            return Err(parser.error("trailing characters after label"));
        }
        Ok(label)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rendering() {
        assert_eq!(Label::base(7).to_string(), "7");
        assert_eq!(Label::kept(2, 4).to_string(), "[4]_2");
        assert_eq!(
            Label::pair(2, Label::base(1), Label::base(2)).to_string(),
            "[1,2]_2"
        );
        let deep = Label::pair(
            3,
            Label::pair(2, Label::base(6), Label::base(2)),
            Label::kept(2, 1),
        );
        assert_eq!(deep.to_string(), "[[6,2]_2,[1]_2]_3");
    }

    #[test]
    fn parsing() {
        let l: Label = "[[6,2]_2,[1]_2]_3".parse().unwrap();
        assert_eq!(
            l,
            Label::pair(
                3,
                Label::pair(2, Label::base(6), Label::base(2)),
                Label::kept(2, 1),
            )
        );
        assert!("[1,2]_1".parse::<Label>().is_err());
        assert!("[[1]_2,3]_3".parse::<Label>().is_err());
        assert!("[4]_2 junk".parse::<Label>().is_err());
    }

    fn label_strategy() -> impl Strategy<Value = Label> {
        // Components of a pair at level l must sit at level l-1, so the tree
        // is grown by wrapping same-level siblings.
        let base = (1usize..30).prop_map(Label::base);
        base.prop_recursive(4, 32, 4, |inner| {
            (inner.clone(), inner).prop_flat_map(|(a, b)| {
                let level = a.level().max(b.level()) + 1;
                let lift = move |l: Label, rank: usize| {
                    if l.level() == level - 1 {
                        l
                    } else {
                        Label::kept(level - 1, rank)
                    }
                };
                let a2 = lift(a, 1);
                let b2 = lift(b, 2);
                prop_oneof![
                    Just(Label::pair(level, a2.clone(), b2.clone())),
                    (1usize..20).prop_map(move |r| Label::kept(level, r)),
                ]
            })
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(label in label_strategy()) {
            let text = label.to_string();
            prop_assert_eq!(text.parse::<Label>().unwrap(), label);
        }
    }
}
