//! Partition of a 3-homogeneous bitrade into three transversals.
//!
//! In a 3-homogeneous bitrade every row, column, and symbol cycle of the
//! permutation representation has length three, so labels in Z/3 can be
//! propagated along all three generators with a fixed +1 step. The three
//! label classes are the transversals. Consistency of the propagation is a
//! theorem for valid input; the algorithm still verifies every revisited
//! dart and surfaces a contradiction loudly, since a contradiction proves
//! the input (or this library) is broken. An exhaustive backtracking oracle
//! over all 3-colorings provides an independent check at small sizes.

// Failure values carry whole witness entries; the convenience outweighs
// the large Err variants at these call rates.
#![allow(clippy::result_large_err)]

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;
use thiserror::Error;

use crate::bitrade::{is_transversal, Bitrade, Entry, Rule, ValidationReport, Violation};
use crate::label::{Axis, Label};
use crate::permrep::tau_representation;

/// Default size limit for the exhaustive oracle.
pub const DEFAULT_ORACLE_CAP: usize = 18;

/// Three disjoint entry classes covering the first half, together with the
/// underlying Z/3 labeling. Classes are reported in label order; labels are
/// rotated so that each connected component's least dart carries label 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalPartition {
    pub classes: [BTreeSet<Entry>; 3],
    pub labeling: BTreeMap<Entry, u8>,
}

impl TransversalPartition {
    fn from_labeling(labeling: BTreeMap<Entry, u8>) -> TransversalPartition {
        let mut classes: [BTreeSet<Entry>; 3] = Default::default();
        for (entry, label) in &labeling {
            classes[*label as usize].insert(entry.clone());
        }
        TransversalPartition { classes, labeling }
    }

    /// The classes as an unordered family, for comparisons up to class
    /// reordering.
    pub fn unordered_classes(&self) -> BTreeSet<BTreeSet<Entry>> {
        self.classes.iter().cloned().collect()
    }

    /// JSON rendering: `{"classes": [[...],[...],[...]], "labeling":
    /// {"r:c:s": 0|1|2}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<Vec<[String; 3]>> = self
            .classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|e| {
                        [
                            e.row().to_string(),
                            e.col().to_string(),
                            e.sym().to_string(),
                        ]
                    })
                    .collect()
            })
            .collect();
        let labeling: BTreeMap<String, u8> =
            self.labeling.iter().map(|(e, l)| (e.dart(), *l)).collect();
        json!({ "classes": classes, "labeling": labeling })
    }
}

/// Why the partition algorithm refused or contradicted itself.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PartitionFailure {
    #[error("bitrade is not 3-homogeneous: {witness}")]
    Not3Homogeneous { witness: String },
    /// Two propagation paths assigned different labels to the same dart.
    /// Unreachable for valid input; kept as a guard against corrupt data
    /// and implementation bugs, with a reproducible witness.
    #[error(
        "inconsistent labeling: {} reached from {} by generator {generator} \
         wants label {expected} but already has {found}",
        .dart.dart(), .via.dart()
    )]
    InconsistentLabeling {
        dart: Entry,
        via: Entry,
        generator: usize,
        expected: u8,
        found: u8,
    },
    /// A propagation step could not be resolved (no witness entry exists).
    /// Only reachable when validation was skipped.
    #[error("no witness to step from {} along generator {generator}", .dart.dart())]
    UnresolvedStep { dart: Entry, generator: usize },
}

impl PartitionFailure {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PartitionFailure::Not3Homogeneous { witness } => {
                json!({ "kind": "not_3_homogeneous", "witness": witness })
            }
            PartitionFailure::InconsistentLabeling {
                dart,
                via,
                generator,
                expected,
                found,
            } => json!({
                "kind": "inconsistent_labeling",
                "witness": {
                    "dart": dart.dart(),
                    "via": via.dart(),
                    "generator": generator,
                    "expected": expected,
                    "found": found,
                }
            }),
            PartitionFailure::UnresolvedStep { dart, generator } => json!({
                "kind": "inconsistent_labeling",
                "witness": { "dart": dart.dart(), "generator": generator, "missing_step": true }
            }),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("first half has {size} entries, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

fn homogeneity_witness(entries: &BTreeSet<Entry>, k: usize) -> Option<String> {
    for axis in Axis::ALL {
        let mut counts: BTreeMap<&Label, usize> = BTreeMap::new();
        for e in entries {
            *counts.entry(e.get(axis)).or_insert(0) += 1;
        }
        for (label, count) in counts {
            if count != k {
                return Some(format!(
                    "{} {label} has {count} entries, expected {k}",
                    axis.name()
                ));
            }
        }
    }
    None
}

/// Breadth-first +1 propagation over all three generators. Each connected
/// component starts at its least unlabeled dart (or at `base` for the
/// component containing it) and is finally rotated so that the component's
/// least dart carries label 0.
fn propagate<F>(
    omega: &BTreeSet<Entry>,
    base: Option<&Entry>,
    step: F,
) -> Result<BTreeMap<Entry, u8>, PartitionFailure>
where
    F: Fn(usize, &Entry) -> Option<Entry>,
{
    let mut labels: BTreeMap<Entry, u8> = BTreeMap::new();
    let mut remaining: BTreeSet<Entry> = omega.clone();
    while !remaining.is_empty() {
        let start = match base {
            Some(b) if remaining.contains(b) => b.clone(),
            _ => remaining.iter().next().cloned().unwrap(),
        };
        remaining.remove(&start);
        labels.insert(start.clone(), 0);
        let mut component = vec![start.clone()];
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let at = labels[&x];
            for generator in 0..3 {
                let y = step(generator, &x).ok_or_else(|| PartitionFailure::UnresolvedStep {
                    dart: x.clone(),
                    generator,
                })?;
                let expected = (at + 1) % 3;
                match labels.get(&y) {
                    Some(&found) => {
                        if found != expected {
                            return Err(PartitionFailure::InconsistentLabeling {
                                dart: y,
                                via: x,
                                generator,
                                expected,
                                found,
                            });
                        }
                    }
                    None => {
                        labels.insert(y.clone(), expected);
                        remaining.remove(&y);
                        component.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
        }
        let least = component.iter().min().unwrap();
        let shift = labels[least];
        if shift != 0 {
            for member in &component {
                let l = labels.get_mut(member).unwrap();
                *l = (*l + 3 - shift) % 3;
            }
        }
    }
    Ok(labels)
}

/// Partitions the first half of a 3-homogeneous bitrade into three
/// transversals by label propagation. The empty bitrade yields three empty
/// classes.
pub fn three_transversal_partition(b: &Bitrade) -> Result<TransversalPartition, PartitionFailure> {
    three_transversal_partition_from(b, None)
}

/// Same algorithm with an explicit base dart for the component containing
/// it. The unordered class family does not depend on the base; the final
/// per-component rotation makes even the ordered output identical.
pub fn three_transversal_partition_from(
    b: &Bitrade,
    base: Option<&Entry>,
) -> Result<TransversalPartition, PartitionFailure> {
    if b.is_empty() {
        return Ok(TransversalPartition::from_labeling(BTreeMap::new()));
    }
    if let Some(witness) = homogeneity_witness(b.t_dia().entries(), 3) {
        return Err(PartitionFailure::Not3Homogeneous { witness });
    }
    let rep = tau_representation(b).expect("nonempty bitrade");
    let labels = propagate(rep.omega(), base, |i, x| Some(rep.apply(i, x)))?;
    Ok(TransversalPartition::from_labeling(labels))
}

/// Propagation over a raw, unvalidated pair. Each step resolves its
/// intermediate witness by first match, so corrupt input either resolves
/// into a labeling contradiction or fails to step, both reported with a
/// witness. With valid input this agrees with
/// [`three_transversal_partition`].
pub fn three_transversal_partition_unchecked(
    t_dia: &BTreeSet<Entry>,
    t_oti: &BTreeSet<Entry>,
) -> Result<TransversalPartition, PartitionFailure> {
    if t_dia.is_empty() {
        return Ok(TransversalPartition::from_labeling(BTreeMap::new()));
    }
    if let Some(witness) = homogeneity_witness(t_dia, 3) {
        return Err(PartitionFailure::Not3Homogeneous { witness });
    }
    let first_match =
        |set: &BTreeSet<Entry>, a1: Axis, s1: &Entry, a2: Axis, s2: &Entry| -> Option<Entry> {
            set.iter()
                .find(|t| t.get(a1) == s1.get(a1) && t.get(a2) == s2.get(a2))
                .cloned()
        };
    // Each step hops into the second half on two shared coordinates and
    // back; with multiple candidates the least one wins, with none the
    // step fails.
    let step = |generator: usize, x: &Entry| -> Option<Entry> {
        let (m1, m2, b1, b2) = match generator {
            0 => (Axis::Row, Axis::Sym, Axis::Row, Axis::Col),
            1 => (Axis::Row, Axis::Col, Axis::Col, Axis::Sym),
            _ => (Axis::Col, Axis::Sym, Axis::Sym, Axis::Row),
        };
        let mid = first_match(t_oti, m1, x, m2, x)?;
        first_match(t_dia, b1, x, b2, &mid)
    };
    let labels = propagate(t_dia, None, step)?;
    Ok(TransversalPartition::from_labeling(labels))
}

/// Checks a claimed partition against a bitrade: disjointness, exact
/// coverage of the first half, the transversal property of every class,
/// and the +1 propagation identity of the labeling along all generators.
pub fn verify_partition(p: &TransversalPartition, b: &Bitrade) -> ValidationReport {
    let mut violations = Vec::new();
    let t_dia = b.t_dia().entries();

    let mut seen: BTreeMap<&Entry, usize> = BTreeMap::new();
    for (i, class) in p.classes.iter().enumerate() {
        for e in class {
            if let Some(first) = seen.insert(e, i) {
                violations.push(Violation::new(
                    Rule::Disjoint,
                    format!("entry {e}"),
                    format!("entry appears in classes {first} and {i}"),
                ));
            }
            if !t_dia.contains(e) {
                violations.push(Violation::new(
                    Rule::Coverage,
                    format!("entry {e}"),
                    "class entry is not in the first half".to_owned(),
                ));
            }
        }
    }
    for e in t_dia {
        if !seen.contains_key(e) {
            violations.push(Violation::new(
                Rule::Coverage,
                format!("entry {e}"),
                "first-half entry is not covered by any class".to_owned(),
            ));
        }
    }

    for (i, class) in p.classes.iter().enumerate() {
        match is_transversal(class, b) {
            Ok(true) => {}
            Ok(false) => violations.push(Violation::new(
                Rule::Transversal,
                format!("class {i}"),
                "class is not a transversal".to_owned(),
            )),
            Err(err) => violations.push(Violation::new(
                Rule::Transversal,
                format!("class {i}"),
                err.to_string(),
            )),
        }
    }

    for (e, &label) in &p.labeling {
        let in_class = p.classes.get(label as usize).is_some_and(|c| c.contains(e));
        if !in_class {
            violations.push(Violation::new(
                Rule::Propagation,
                format!("entry {e}"),
                format!("labeling says {label} but the entry is not in that class"),
            ));
        }
    }

    if !b.is_empty() {
        let rep = tau_representation(b).expect("nonempty bitrade");
        for x in rep.omega() {
            let Some(&lx) = p.labeling.get(x) else {
                violations.push(Violation::new(
                    Rule::Propagation,
                    format!("entry {x}"),
                    "dart has no label".to_owned(),
                ));
                continue;
            };
            for i in 0..3 {
                let y = rep.apply(i, x);
                if let Some(&ly) = p.labeling.get(&y) {
                    if ly != (lx + 1) % 3 {
                        violations.push(Violation::new(
                            Rule::Propagation,
                            format!("entry {y}"),
                            format!(
                                "label {ly} but generator {i} from {x} (label {lx}) forces {}",
                                (lx + 1) % 3
                            ),
                        ));
                    }
                }
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// Exhaustively enumerates every partition of the first half into three
/// transversals, by backtracking over class assignments with pruning on
/// row, column, and symbol repeats. Results are deduplicated up to class
/// reordering by construction: an entry may only open the next unused
/// class, so class indices follow first use.
pub fn brute_force_partitions(
    b: &Bitrade,
    cap: usize,
) -> Result<Vec<TransversalPartition>, OracleError> {
    let entries: Vec<Entry> = b.t_dia().entries().iter().cloned().collect();
    if entries.len() > cap {
        return Err(OracleError::CapExceeded {
            size: entries.len(),
            cap,
        });
    }

    #[derive(Default)]
    struct ClassState<'a> {
        rows: BTreeSet<&'a Label>,
        cols: BTreeSet<&'a Label>,
        syms: BTreeSet<&'a Label>,
        size: usize,
    }

    fn search<'a>(
        entries: &'a [Entry],
        idx: usize,
        used_classes: usize,
        states: &mut [ClassState<'a>; 3],
        assignment: &mut Vec<u8>,
        results: &mut Vec<Vec<u8>>,
    ) {
        if idx == entries.len() {
            results.push(assignment.clone());
            return;
        }
        let e = &entries[idx];
        let limit = (used_classes + 1).min(3);
        for class in 0..limit {
            let state = &mut states[class];
            if state.rows.contains(e.row())
                || state.cols.contains(e.col())
                || state.syms.contains(e.sym())
            {
                continue;
            }
            state.rows.insert(e.row());
            state.cols.insert(e.col());
            state.syms.insert(e.sym());
            state.size += 1;
            assignment.push(class as u8);
            let now_used = used_classes.max(class + 1);
            search(entries, idx + 1, now_used, states, assignment, results);
            assignment.pop();
            let state = &mut states[class];
            state.rows.remove(e.row());
            state.cols.remove(e.col());
            state.syms.remove(e.sym());
            state.size -= 1;
        }
    }

    let mut states: [ClassState; 3] = Default::default();
    let mut results = Vec::new();
    search(
        &entries,
        0,
        0,
        &mut states,
        &mut Vec::with_capacity(entries.len()),
        &mut results,
    );

    let mut partitions = Vec::new();
    for assignment in results {
        let labeling: BTreeMap<Entry, u8> = entries
            .iter()
            .cloned()
            .zip(assignment.iter().copied())
            .collect();
        let p = TransversalPartition::from_labeling(labeling);
        if p.classes
            .iter()
            .all(|class| is_transversal(class, b) == Ok(true))
        {
            partitions.push(p);
        }
    }
    Ok(partitions)
}
