//! Finite permutations acting on entry darts.
//!
//! Permutations act on the right throughout: the composition `s.then(&t)`
//! applies `s` first and `t` second. Fixed points are never stored, so the
//! moved set is exactly the key set of the internal map. Cycles are kept in
//! canonical form (each cycle rotated so its least dart comes first, cycles
//! sorted by their first dart), which makes equality and printed output
//! stable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::bitrade::Entry;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("mapping is not a bijection on its support (near {0})")]
    NotBijective(String),
    #[error("cycles are not disjoint (dart {0} repeats)")]
    OverlappingCycles(String),
    #[error("cycle of length 1 at {0}; fixed points must simply be omitted")]
    TrivialCycle(String),
    #[error("malformed cycle notation: {0}")]
    BadNotation(String),
}

/// A permutation of a finite set of darts, stored as its nontrivial cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: BTreeMap<Entry, Entry>,
    cycles: Vec<Vec<Entry>>,
}

impl Permutation {
    pub fn identity() -> Permutation {
        Permutation {
            map: BTreeMap::new(),
            cycles: Vec::new(),
        }
    }

    /// Builds a permutation from a forward map. Fixed points in the map are
    /// dropped; the remainder must be a bijection on its support.
    pub fn from_map(map: BTreeMap<Entry, Entry>) -> Result<Permutation, PermError> {
        let map: BTreeMap<Entry, Entry> = map.into_iter().filter(|(k, v)| k != v).collect();
        let keys: BTreeSet<&Entry> = map.keys().collect();
        let values: BTreeSet<&Entry> = map.values().collect();
        if keys != values {
            let witness = keys
                .symmetric_difference(&values)
                .next()
                .map(|e| e.dart())
                .unwrap_or_default();
            return Err(PermError::NotBijective(witness));
        }
        let cycles = cycles_of(&map);
        Ok(Permutation { map, cycles })
    }

    /// Builds a permutation from disjoint cycles of length at least two.
    pub fn from_cycles(cycles: Vec<Vec<Entry>>) -> Result<Permutation, PermError> {
        let mut map = BTreeMap::new();
        for cycle in &cycles {
            if cycle.len() < 2 {
                let at = cycle.first().map(|e| e.dart()).unwrap_or_default();
                return Err(PermError::TrivialCycle(at));
            }
            for (i, dart) in cycle.iter().enumerate() {
                let image = cycle[(i + 1) % cycle.len()].clone();
                if map.insert(dart.clone(), image).is_some() {
                    return Err(PermError::OverlappingCycles(dart.dart()));
                }
            }
        }
        if map.values().collect::<BTreeSet<_>>().len() != map.len() {
            return Err(PermError::OverlappingCycles(
                cycles
                    .first()
                    .and_then(|c| c.first())
                    .map(|e| e.dart())
                    .unwrap_or_default(),
            ));
        }
        let cycles = cycles_of(&map);
        Ok(Permutation { map, cycles })
    }

    /// The image of a dart; darts outside the support are fixed.
    pub fn apply(&self, dart: &Entry) -> Entry {
        self.map.get(dart).cloned().unwrap_or_else(|| dart.clone())
    }

    /// True when the dart is moved by this permutation.
    pub fn moves(&self, dart: &Entry) -> bool {
        self.map.contains_key(dart)
    }

    /// The moved set, in order.
    pub fn moved(&self) -> impl Iterator<Item = &Entry> {
        self.map.keys()
    }

    pub fn support_size(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Canonical cycles: least dart first within each cycle, cycles sorted
    /// by their first dart.
    pub fn cycles(&self) -> &[Vec<Entry>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// The cycle containing `dart`, if it is moved.
    pub fn cycle_containing(&self, dart: &Entry) -> Option<&[Entry]> {
        self.cycles
            .iter()
            .find(|c| c.contains(dart))
            .map(|c| c.as_slice())
    }

    /// Right-action composition: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        let support: BTreeSet<&Entry> = self.map.keys().chain(other.map.keys()).collect();
        let map: BTreeMap<Entry, Entry> = support
            .into_iter()
            .map(|x| (x.clone(), other.apply(&self.apply(x))))
            .collect();
        Permutation::from_map(map).expect("composition of bijections is a bijection")
    }

    pub fn inverse(&self) -> Permutation {
        let map: BTreeMap<Entry, Entry> = self
            .map
            .iter()
            .map(|(k, v)| (v.clone(), k.clone()))
            .collect();
        Permutation::from_map(map).expect("inverse of a bijection is a bijection")
    }

    /// Cycle-notation rendering, e.g. `(0:0:0,0:1:1)(1:0:1,1:1:0)`. The
    /// identity renders as `()`.
    pub fn cycle_notation(&self) -> String {
        if self.cycles.is_empty() {
            return "()".to_owned();
        }
        let mut out = String::new();
        for cycle in &self.cycles {
            let darts: Vec<String> = cycle.iter().map(Entry::dart).collect();
            out.push('(');
            out.push_str(&darts.join(","));
            out.push(')');
        }
        out
    }

    /// Parses cycle notation produced by [`Permutation::cycle_notation`].
    /// Only flat dart names (`r:c:s` without parentheses or commas in the
    /// labels) can be read back.
    pub fn parse_cycle_notation(text: &str) -> Result<Permutation, PermError> {
        let text = text.trim();
        if text == "()" || text.is_empty() {
            return Ok(Permutation::identity());
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(PermError::BadNotation(format!("expected `(` at `{rest}`")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::BadNotation("unbalanced parenthesis".to_owned()))?;
            let inner = &rest[1..close];
            let cycle: Result<Vec<Entry>, _> = inner
                .split(',')
                .map(|d| {
                    Entry::parse_dart(d.trim()).map_err(|e| PermError::BadNotation(e.to_string()))
                })
                .collect();
            cycles.push(cycle?);
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

fn cycles_of(map: &BTreeMap<Entry, Entry>) -> Vec<Vec<Entry>> {
    let mut seen: BTreeSet<&Entry> = BTreeSet::new();
    let mut cycles = Vec::new();
    for start in map.keys() {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![start.clone()];
        seen.insert(start);
        let mut current = &map[start];
        while current != start {
            cycle.push(current.clone());
            seen.insert(current);
            current = &map[current];
        }
        cycles.push(cycle);
    }
    // Keys are visited in order and each cycle starts at its least unseen
    // dart, so cycles come out canonical already; assert the invariant.
    debug_assert!(cycles.iter().all(|c| c.iter().min() == c.first()));
    cycles
}
