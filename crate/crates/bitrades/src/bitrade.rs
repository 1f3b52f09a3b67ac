//! Partial latin squares and latin bitrades.
//!
//! A bitrade is a pair `(T_dia, T_oti)` of partial latin squares that are
//! disjoint, occupy the same cells, and whose corresponding rows and columns
//! contain the same symbol sets. The pair records the difference between two
//! latin squares. Validation is rule-based and reports violations instead of
//! failing fast, so a caller can see everything that is wrong with an input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::label::{Axis, Label, LabelValue};

/// A single `(row, column, symbol)` triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    row: Label,
    col: Label,
    sym: Label,
}

impl Entry {
    pub fn new(
        row: impl Into<LabelValue>,
        col: impl Into<LabelValue>,
        sym: impl Into<LabelValue>,
    ) -> Entry {
        Entry {
            row: Label::new(Axis::Row, row.into()),
            col: Label::new(Axis::Col, col.into()),
            sym: Label::new(Axis::Sym, sym.into()),
        }
    }

    pub fn row(&self) -> &Label {
        &self.row
    }

    pub fn col(&self) -> &Label {
        &self.col
    }

    pub fn sym(&self) -> &Label {
        &self.sym
    }

    pub fn get(&self, axis: Axis) -> &Label {
        match axis {
            Axis::Row => &self.row,
            Axis::Col => &self.col,
            Axis::Sym => &self.sym,
        }
    }

    /// True when the two entries agree on both given axes.
    pub fn agrees_on(&self, other: &Entry, a: Axis, b: Axis) -> bool {
        self.get(a) == other.get(a) && self.get(b) == other.get(b)
    }

    /// Compact `r:c:s` rendering used for dart names in cycle notation and
    /// JSON keys.
    pub fn dart(&self) -> String {
        format!("{}:{}:{}", self.row, self.col, self.sym)
    }

    /// Parses an `r:c:s` dart name. Fails if the text does not split into
    /// exactly three tokens (labels containing `:` cannot be round-tripped
    /// through this rendering).
    pub fn parse_dart(s: &str) -> Result<Entry, CoreError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 || parts.iter().any(|p| p.is_empty()) {
            return Err(CoreError::BadDart(s.to_owned()));
        }
        Ok(Entry::new(
            LabelValue::parse(parts[0]),
            LabelValue::parse(parts[1]),
            LabelValue::parse(parts[2]),
        ))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.row, self.col, self.sym)
    }
}

/// Rule identifiers used in validation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// At most one symbol per cell, each symbol at most once per row/column.
    #[serde(rename = "PLS")]
    Pls,
    /// The two halves are disjoint.
    R1,
    /// Every first-half entry has a unique second-half partner agreeing on
    /// each pair of positions.
    R2,
    /// Same as R2 with the halves swapped.
    R3,
    /// Partition classes are pairwise disjoint.
    #[serde(rename = "disjoint")]
    Disjoint,
    /// Partition classes cover the first half exactly.
    #[serde(rename = "coverage")]
    Coverage,
    /// A partition class fails the transversal conditions.
    #[serde(rename = "transversal")]
    Transversal,
    /// The class labeling is not compatible with the permutation actions.
    #[serde(rename = "propagation")]
    Propagation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    /// The offending entry or cell, rendered.
    pub site: String,
    pub message: String,
}

impl Violation {
    pub fn new(rule: Rule, site: impl Into<String>, message: impl Into<String>) -> Violation {
        Violation {
            rule,
            site: site.into(),
            message: message.into(),
        }
    }
}

/// Outcome of a validation pass: `ok` holds exactly when no violation was
/// recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> ValidationReport {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn passed() -> ValidationReport {
        ValidationReport::from_violations(Vec::new())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  [{:?}] {}: {}", v.rule, v.site, v.message)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("not a latin square: {0}")]
    NotLatin(String),
    #[error("latin squares are not on the same label sets: {0}")]
    UniverseMismatch(String),
    #[error("entry {0} is not contained in the first half of the bitrade")]
    NotInFirstHalf(String),
    #[error("malformed dart `{0}`, expected `row:col:sym`")]
    BadDart(String),
}

/// Checks the two partial-latin-square conditions over a raw entry set:
/// at most one entry per cell, and each symbol at most once per row and per
/// column. Reports every violation; never fails.
pub fn validate_pls(entries: &BTreeSet<Entry>) -> ValidationReport {
    validate_pls_tagged(entries, "")
}

fn validate_pls_tagged(entries: &BTreeSet<Entry>, half: &str) -> ValidationReport {
    let mut violations = Vec::new();
    let mut cells: BTreeMap<(&Label, &Label), &Entry> = BTreeMap::new();
    let mut row_syms: BTreeMap<(&Label, &Label), &Entry> = BTreeMap::new();
    let mut col_syms: BTreeMap<(&Label, &Label), &Entry> = BTreeMap::new();
    for e in entries {
        if let Some(prev) = cells.insert((e.row(), e.col()), e) {
            violations.push(Violation::new(
                Rule::Pls,
                format!("{half}cell ({}, {})", e.row(), e.col()),
                format!("cell holds both {} and {}", prev.sym(), e.sym()),
            ));
        }
        if let Some(prev) = row_syms.insert((e.row(), e.sym()), e) {
            violations.push(Violation::new(
                Rule::Pls,
                format!("{half}entry {e}"),
                format!(
                    "symbol {} repeats in row {} (also {prev})",
                    e.sym(),
                    e.row()
                ),
            ));
        }
        if let Some(prev) = col_syms.insert((e.col(), e.sym()), e) {
            violations.push(Violation::new(
                Rule::Pls,
                format!("{half}entry {e}"),
                format!(
                    "symbol {} repeats in column {} (also {prev})",
                    e.sym(),
                    e.col()
                ),
            ));
        }
    }
    ValidationReport::from_violations(violations)
}

const AXIS_PAIRS: [(Axis, Axis); 3] = [
    (Axis::Row, Axis::Col),
    (Axis::Row, Axis::Sym),
    (Axis::Col, Axis::Sym),
];

/// Checks the three bitrade rules over a raw pair of entry sets.
///
/// Both halves must first pass [`validate_pls`]; failures there are reported
/// with rule `PLS` and the remaining rules are skipped. R2 and R3 are checked
/// by counting witnesses over every entry and position pair, which is
/// quadratic but entirely adequate at the scales this library targets.
pub fn validate_bitrade(t_dia: &BTreeSet<Entry>, t_oti: &BTreeSet<Entry>) -> ValidationReport {
    let mut violations = Vec::new();
    for (set, half) in [(t_dia, "first half: "), (t_oti, "second half: ")] {
        violations.extend(validate_pls_tagged(set, half).violations);
    }
    if !violations.is_empty() {
        return ValidationReport::from_violations(violations);
    }

    for e in t_dia.intersection(t_oti) {
        violations.push(Violation::new(
            Rule::R1,
            format!("entry {e}"),
            "entry appears in both halves".to_owned(),
        ));
    }

    for (source, target, rule) in [(t_dia, t_oti, Rule::R2), (t_oti, t_dia, Rule::R3)] {
        for a in source {
            for (p, q) in AXIS_PAIRS {
                let count = target.iter().filter(|b| a.agrees_on(b, p, q)).count();
                if count != 1 {
                    violations.push(Violation::new(
                        rule,
                        format!("entry {a}"),
                        format!(
                            "expected exactly one partner agreeing on ({}, {}), found {count}",
                            p.name(),
                            q.name()
                        ),
                    ));
                }
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// A set of entries satisfying the partial-latin-square conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLatinSquare {
    entries: BTreeSet<Entry>,
}

impl PartialLatinSquare {
    pub fn new(entries: BTreeSet<Entry>) -> Result<PartialLatinSquare, ValidationReport> {
        let report = validate_pls(&entries);
        if report.ok {
            Ok(PartialLatinSquare { entries })
        } else {
            Err(report)
        }
    }

    pub fn from_entries<I: IntoIterator<Item = Entry>>(
        entries: I,
    ) -> Result<PartialLatinSquare, ValidationReport> {
        PartialLatinSquare::new(entries.into_iter().collect())
    }

    pub fn entries(&self) -> &BTreeSet<Entry> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The set of labels actually used on one axis.
    pub fn universe(&self, axis: Axis) -> BTreeSet<&Label> {
        self.entries.iter().map(|e| e.get(axis)).collect()
    }

    /// Entries carrying the given label on the given axis.
    pub fn line<'a>(&'a self, label: &'a Label) -> impl Iterator<Item = &'a Entry> {
        self.entries
            .iter()
            .filter(move |e| e.get(label.axis) == label)
    }

    /// True when this is a full latin square: square universes of equal
    /// size, every cell filled, every symbol exactly once per row and
    /// column.
    pub fn is_latin_square(&self) -> bool {
        let rows = self.universe(Axis::Row);
        let cols = self.universe(Axis::Col);
        let syms = self.universe(Axis::Sym);
        let n = rows.len();
        if n == 0 || cols.len() != n || syms.len() != n {
            return false;
        }
        // A valid PLS with n^2 entries on n x n cells is full; fullness plus
        // the at-most-once conditions forces exactly-once everywhere.
        self.entries.len() == n * n
    }
}

/// A validated bitrade: two disjoint partial latin squares on the same
/// cells with matching row and column symbol sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitrade {
    t_dia: PartialLatinSquare,
    t_oti: PartialLatinSquare,
}

impl Bitrade {
    /// Validates the pair and constructs the bitrade. The empty pair is
    /// valid; downstream operations define their own behavior on it.
    pub fn new(
        t_dia: PartialLatinSquare,
        t_oti: PartialLatinSquare,
    ) -> Result<Bitrade, ValidationReport> {
        let report = validate_bitrade(t_dia.entries(), t_oti.entries());
        if report.ok {
            Ok(Bitrade { t_dia, t_oti })
        } else {
            Err(report)
        }
    }

    /// Validates raw entry sets (both the latin conditions and the bitrade
    /// rules) and constructs the bitrade.
    pub fn from_raw(
        t_dia: BTreeSet<Entry>,
        t_oti: BTreeSet<Entry>,
    ) -> Result<Bitrade, ValidationReport> {
        let report = validate_bitrade(&t_dia, &t_oti);
        if report.ok {
            Ok(Bitrade {
                t_dia: PartialLatinSquare { entries: t_dia },
                t_oti: PartialLatinSquare { entries: t_oti },
            })
        } else {
            Err(report)
        }
    }

    /// Constructs without validating. Downstream consistency checks are the
    /// only guard on such a value; intended for diagnostic paths that must
    /// accept corrupt input.
    pub fn from_raw_unchecked(t_dia: BTreeSet<Entry>, t_oti: BTreeSet<Entry>) -> Bitrade {
        Bitrade {
            t_dia: PartialLatinSquare { entries: t_dia },
            t_oti: PartialLatinSquare { entries: t_oti },
        }
    }

    pub fn t_dia(&self) -> &PartialLatinSquare {
        &self.t_dia
    }

    pub fn t_oti(&self) -> &PartialLatinSquare {
        &self.t_oti
    }

    pub fn is_empty(&self) -> bool {
        self.t_dia.is_empty() && self.t_oti.is_empty()
    }
}

/// The difference of two latin squares of the same order on the same label
/// sets: the first half keeps the entries of `l1` not in `l2`, the second
/// half the entries of `l2` not in `l1`.
pub fn bitrade_from_squares(
    l1: &PartialLatinSquare,
    l2: &PartialLatinSquare,
) -> Result<Bitrade, CoreError> {
    for (sq, name) in [(l1, "first"), (l2, "second")] {
        if !sq.is_latin_square() {
            return Err(CoreError::NotLatin(format!("{name} square")));
        }
    }
    for axis in Axis::ALL {
        if l1.universe(axis) != l2.universe(axis) {
            return Err(CoreError::UniverseMismatch(format!(
                "{} labels differ",
                axis.name()
            )));
        }
    }
    let t_dia: BTreeSet<Entry> = l1.entries().difference(l2.entries()).cloned().collect();
    let t_oti: BTreeSet<Entry> = l2.entries().difference(l1.entries()).cloned().collect();
    Ok(Bitrade::from_raw(t_dia, t_oti)
        .expect("difference of two latin squares always satisfies the bitrade rules"))
}

/// True when every row, every column, and every symbol of the first half
/// occurs exactly `k` times. The mirrored counts on the second half are a
/// consequence for valid bitrades and are asserted as a cross-check.
pub fn is_k_homogeneous(b: &Bitrade, k: usize) -> bool {
    fn uniform_counts(p: &PartialLatinSquare, k: usize) -> bool {
        Axis::ALL.iter().all(|&axis| {
            let mut counts: BTreeMap<&Label, usize> = BTreeMap::new();
            for e in p.entries() {
                *counts.entry(e.get(axis)).or_insert(0) += 1;
            }
            counts.values().all(|&c| c == k)
        })
    }
    let dia = uniform_counts(b.t_dia(), k);
    if dia {
        assert!(
            uniform_counts(b.t_oti(), k),
            "halves of a valid bitrade must have matching homogeneity"
        );
    }
    dia
}

/// True when `s` meets each row of the first half exactly once, each column
/// exactly once, and contains as many distinct symbols as elements.
///
/// Fails if `s` is not a subset of the first half.
pub fn is_transversal(s: &BTreeSet<Entry>, b: &Bitrade) -> Result<bool, CoreError> {
    if let Some(outside) = s.iter().find(|e| !b.t_dia().entries().contains(e)) {
        return Err(CoreError::NotInFirstHalf(outside.to_string()));
    }
    for axis in [Axis::Row, Axis::Col] {
        let universe = b.t_dia().universe(axis);
        let mut counts: BTreeMap<&Label, usize> = BTreeMap::new();
        for e in s {
            *counts.entry(e.get(axis)).or_insert(0) += 1;
        }
        let hits_each_once = universe.iter().all(|l| counts.get(l) == Some(&1));
        if !hits_each_once || counts.len() != universe.len() {
            return Ok(false);
        }
    }
    let syms: BTreeSet<&Label> = s.iter().map(|e| e.sym()).collect();
    Ok(syms.len() == s.len())
}
