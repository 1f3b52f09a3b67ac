//! Axis-tagged labels for rows, columns, and symbols.

use std::cmp::Ordering;
use std::fmt;

/// The three coordinate axes of a partial latin square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Row,
    Col,
    Sym,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Row, Axis::Col, Axis::Sym];

    pub fn index(self) -> usize {
        match self {
            Axis::Row => 0,
            Axis::Col => 1,
            Axis::Sym => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Row => "row",
            Axis::Col => "column",
            Axis::Sym => "symbol",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A label value. Tokens that are canonical base-10 integers take the
/// integer fast path and order numerically; everything else is kept as
/// text, so any token round-trips unchanged ("007" stays "007").
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LabelValue {
    Int(i64),
    Text(String),
}

impl LabelValue {
    /// Parses a single token. The integer representation is used only when
    /// the token is exactly the canonical rendering of an `i64`.
    pub fn parse(token: &str) -> LabelValue {
        if let Ok(n) = token.parse::<i64>() {
            if n.to_string() == token {
                return LabelValue::Int(n);
            }
        }
        LabelValue::Text(token.to_owned())
    }

    pub fn text(s: impl Into<String>) -> LabelValue {
        LabelValue::Text(s.into())
    }
}

impl fmt::Display for LabelValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelValue::Int(n) => write!(f, "{n}"),
            LabelValue::Text(s) => f.write_str(s),
        }
    }
}

impl Ord for LabelValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LabelValue::Int(a), LabelValue::Int(b)) => a.cmp(b),
            (LabelValue::Int(_), LabelValue::Text(_)) => Ordering::Less,
            (LabelValue::Text(_), LabelValue::Int(_)) => Ordering::Greater,
            (LabelValue::Text(a), LabelValue::Text(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for LabelValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for LabelValue {
    fn from(n: i64) -> Self {
        LabelValue::Int(n)
    }
}

impl From<&str> for LabelValue {
    fn from(s: &str) -> Self {
        LabelValue::parse(s)
    }
}

/// A label on one axis. Labels compare by `(axis, value)`, so values on
/// distinct axes never compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub axis: Axis,
    pub value: LabelValue,
}

impl Label {
    pub fn new(axis: Axis, value: LabelValue) -> Label {
        Label { axis, value }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}
