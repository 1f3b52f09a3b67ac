//! Fixtures, parametric families, lattice quotients, and small-order
//! exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::bitrade::{Bitrade, Entry, ValidationReport};
use crate::exact::vertex_color;
use crate::label::LabelValue;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("exhaustive enumeration is limited to order 4, got {0}")]
    OrderTooLarge(usize),
    #[error("lattice spec is degenerate (determinant 0)")]
    DegenerateSpec,
    #[error("lattice quotient is not a valid bitrade: {0}")]
    QuotientRejected(ValidationReport),
}

/// The four-entry bitrade swapping a 2x2 subsquare, on labels {0, 1}.
pub fn intercalate() -> Bitrade {
    let t_dia = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)];
    let t_oti = [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)];
    let to_set = |cells: [(i64, i64, i64); 4]| -> BTreeSet<Entry> {
        cells
            .into_iter()
            .map(|(r, c, s)| Entry::new(r, c, s))
            .collect()
    };
    Bitrade::from_raw(to_set(t_dia), to_set(t_oti)).expect("fixture is valid")
}

/// A 3-homogeneous bitrade on four rows, columns, and symbols (labels
/// 1..=4) with twelve entries; its surface is the torus and its first half
/// splits into three transversals.
pub fn example2() -> Bitrade {
    let t_dia = [
        (1, 1, 1),
        (1, 2, 3),
        (1, 4, 2),
        (2, 1, 3),
        (2, 2, 2),
        (2, 3, 4),
        (3, 2, 4),
        (3, 3, 3),
        (3, 4, 1),
        (4, 1, 2),
        (4, 3, 1),
        (4, 4, 4),
    ];
    let t_oti = [
        (1, 1, 3),
        (1, 2, 2),
        (1, 4, 1),
        (2, 1, 2),
        (2, 2, 4),
        (2, 3, 3),
        (3, 2, 3),
        (3, 3, 1),
        (3, 4, 4),
        (4, 1, 1),
        (4, 3, 4),
        (4, 4, 2),
    ];
    let to_set = |cells: [(i64, i64, i64); 12]| -> BTreeSet<Entry> {
        cells
            .into_iter()
            .map(|(r, c, s)| Entry::new(r, c, s))
            .collect()
    };
    Bitrade::from_raw(to_set(t_dia), to_set(t_oti)).expect("fixture is valid")
}

/// The difference between the mod-n addition table and its symbol shift:
/// first half `(i, j, i+j)`, second half `(i, j, i+j+1)`. An n-homogeneous
/// bitrade with `n^2` entries.
pub fn cyclic_shift_bitrade(n: usize) -> Result<Bitrade, GenerateError> {
    if n < 2 {
        return Err(GenerateError::OrderTooSmall(n));
    }
    let n = n as i64;
    let mut t_dia = BTreeSet::new();
    let mut t_oti = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            t_dia.insert(Entry::new(i, j, (i + j) % n));
            t_oti.insert(Entry::new(i, j, (i + j + 1) % n));
        }
    }
    Ok(Bitrade::from_raw(t_dia, t_oti).expect("shifted tables always differ cleanly"))
}

/// A finite-index sublattice of the black-vertex lattice, spanned by `v1`
/// and `v2` (coordinates in the black-lattice basis). The index counts the
/// black vertices of the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    pub v1: (i64, i64),
    pub v2: (i64, i64),
}

impl LatticeSpec {
    pub fn new(v1: (i64, i64), v2: (i64, i64)) -> LatticeSpec {
        LatticeSpec { v1, v2 }
    }

    pub fn det(&self) -> i64 {
        self.v1.0 * self.v2.1 - self.v1.1 * self.v2.0
    }

    pub fn index(&self) -> usize {
        self.det().unsigned_abs() as usize
    }

    /// Canonical coset representative of a black-lattice point, lying in
    /// the half-open fundamental parallelepiped of the sublattice.
    fn reduce(&self, p: (i64, i64)) -> (i64, i64) {
        let det = self.det();
        debug_assert!(det != 0);
        // Solve p = a v1 + b v2 over the rationals and subtract the floors.
        let num_a = p.0 * self.v2.1 - p.1 * self.v2.0;
        let num_b = -p.0 * self.v1.1 + p.1 * self.v1.0;
        let floor_div = |n: i64, d: i64| -> i64 {
            debug_assert!(d != 0);
            let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
            n.div_euclid(d)
        };
        let fa = floor_div(num_a, det);
        let fb = floor_div(num_b, det);
        (
            p.0 - fa * self.v1.0 - fb * self.v2.0,
            p.1 - fa * self.v1.1 - fb * self.v2.1,
        )
    }
}

// Unit-lattice coordinates: every tessellation vertex is m*(1,0) +
// n*(1/2, sqrt(3)/2). The black sublattice is spanned by (1,1) and (2,-1)
// in these coordinates; whites sit at black + (0,1), stars at black +
// (1,0).
const BLACK_BASIS_UNIT: [(i64, i64); 2] = [(1, 1), (2, -1)];

fn black_to_unit(p: (i64, i64)) -> (i64, i64) {
    (
        p.0 * BLACK_BASIS_UNIT[0].0 + p.1 * BLACK_BASIS_UNIT[1].0,
        p.0 * BLACK_BASIS_UNIT[0].1 + p.1 * BLACK_BASIS_UNIT[1].1,
    )
}

fn unit_to_black(u: (i64, i64)) -> (i64, i64) {
    debug_assert_eq!(vertex_color(u.0, u.1), 0, "not a black vertex");
    let beta = (u.0 - u.1) / 3;
    let alpha = u.1 + beta;
    debug_assert_eq!(black_to_unit((alpha, beta)), u);
    (alpha, beta)
}

/// Shaded-triangle vertex offsets (white, star) in unit coordinates for
/// each of the three stations around a black vertex, and the same for
/// unshaded triangles.
const SHADED_OFFSETS: [((i64, i64), (i64, i64)); 3] =
    [((0, 1), (-1, 1)), ((-1, 0), (0, -1)), ((1, -1), (1, 0))];
const UNSHADED_OFFSETS: [((i64, i64), (i64, i64)); 3] =
    [((0, 1), (1, 0)), ((-1, 0), (-1, 1)), ((1, -1), (0, -1))];

/// Builds the quotient of the labelled plane tessellation by the given
/// sublattice: rows are black vertex classes, columns white classes,
/// symbols star classes, the first half collects shaded triangles and the
/// second half unshaded ones. The construction is attempted and validated;
/// sublattices too small to separate the triangles are rejected with the
/// validator's report.
pub fn lattice_quotient_bitrade(spec: &LatticeSpec) -> Result<Bitrade, GenerateError> {
    if spec.det() == 0 {
        return Err(GenerateError::DegenerateSpec);
    }

    // Enumerate the coset representatives by flooding from the origin.
    let index = spec.index();
    let mut reps: BTreeSet<(i64, i64)> = BTreeSet::new();
    let mut queue = VecDeque::from([spec.reduce((0, 0))]);
    reps.insert(spec.reduce((0, 0)));
    while let Some(p) = queue.pop_front() {
        if reps.len() == index {
            break;
        }
        for step in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let q = spec.reduce((p.0 + step.0, p.1 + step.1));
            if reps.insert(q) {
                queue.push_back(q);
            }
        }
    }
    debug_assert_eq!(reps.len(), index);

    let label_of = |p: (i64, i64)| -> LabelValue { LabelValue::Text(format!("{},{}", p.0, p.1)) };
    // A white vertex at unit position u is classified by the black-lattice
    // point u - (0,1); a star vertex by u - (1,0).
    let white_class =
        |u: (i64, i64)| -> LabelValue { label_of(spec.reduce(unit_to_black((u.0, u.1 - 1)))) };
    let star_class =
        |u: (i64, i64)| -> LabelValue { label_of(spec.reduce(unit_to_black((u.0 - 1, u.1)))) };

    let mut t_dia = BTreeSet::new();
    let mut t_oti = BTreeSet::new();
    for &rep in &reps {
        let row = label_of(rep);
        let u = black_to_unit(rep);
        let triangle = |(w_off, s_off): ((i64, i64), (i64, i64)), row: &LabelValue| -> Entry {
            let w = (u.0 + w_off.0, u.1 + w_off.1);
            let s = (u.0 + s_off.0, u.1 + s_off.1);
            Entry::new(row.clone(), white_class(w), star_class(s))
        };
        for &offsets in &SHADED_OFFSETS {
            t_dia.insert(triangle(offsets, &row));
        }
        for &offsets in &UNSHADED_OFFSETS {
            t_oti.insert(triangle(offsets, &row));
        }
    }

    Bitrade::from_raw(t_dia, t_oti).map_err(GenerateError::QuotientRejected)
}

/// All sublattices of a given index, one canonical (Hermite-form) spec
/// each: `v1 = (a, 0)`, `v2 = (c, d)` with `a*d = index` and `0 <= c < a`.
pub fn sublattice_specs_of_index(index: usize) -> Vec<LatticeSpec> {
    let n = index as i64;
    let mut specs = Vec::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let d = n / a;
        for c in 0..a {
            specs.push(LatticeSpec::new((a, 0), (c, d)));
        }
    }
    specs
}

/// All latin squares of the given order on symbols `0..order`, as
/// row-major symbol vectors, in lexicographic order.
fn latin_squares_flat(order: usize) -> Vec<Vec<u8>> {
    let n = order;
    let mut result = Vec::new();
    let mut grid = vec![0u8; n * n];
    fn fill(grid: &mut Vec<u8>, pos: usize, n: usize, result: &mut Vec<Vec<u8>>) {
        if pos == n * n {
            result.push(grid.clone());
            return;
        }
        let (r, c) = (pos / n, pos % n);
        'symbol: for s in 0..n as u8 {
            for cc in 0..c {
                if grid[r * n + cc] == s {
                    continue 'symbol;
                }
            }
            for rr in 0..r {
                if grid[rr * n + c] == s {
                    continue 'symbol;
                }
            }
            grid[pos] = s;
            fill(grid, pos + 1, n, result);
        }
    }
    fill(&mut grid, 0, n, &mut result);
    result
}

/// Exhaustively enumerates every nonempty bitrade arising as the
/// difference of two latin squares of the given order (at most 4), on
/// labels `0..order`. Results are deduplicated by their cell-difference
/// fingerprint and returned in fingerprint order, which is deterministic.
///
/// The order-4 corpus has 159984 members; use
/// [`enumerate_small_for_each`] to stream it instead of holding every
/// bitrade in memory.
pub fn enumerate_small(order: usize) -> Result<Vec<Bitrade>, GenerateError> {
    let mut out = Vec::new();
    enumerate_small_for_each(order, |b| out.push(b.clone()))?;
    Ok(out)
}

/// Streaming form of [`enumerate_small`]: calls `visit` once per distinct
/// bitrade, in deterministic fingerprint order, and returns the count.
pub fn enumerate_small_for_each(
    order: usize,
    mut visit: impl FnMut(&Bitrade),
) -> Result<usize, GenerateError> {
    if order < 2 {
        return Err(GenerateError::OrderTooSmall(order));
    }
    if order > 4 {
        return Err(GenerateError::OrderTooLarge(order));
    }
    let squares = latin_squares_flat(order);
    let n = order;
    // Fingerprint: the sorted list of (cell, symbol-in-first, symbol-in-
    // second) over all differing cells, taken up to swapping the two
    // halves so that each unordered difference class is kept once.
    let mut distinct: BTreeSet<Vec<u8>> = BTreeSet::new();
    for l1 in &squares {
        for l2 in &squares {
            if l1 == l2 {
                continue;
            }
            let mut key = Vec::new();
            let mut swapped = Vec::new();
            for pos in 0..n * n {
                if l1[pos] != l2[pos] {
                    key.extend([pos as u8, l1[pos], l2[pos]]);
                    swapped.extend([pos as u8, l2[pos], l1[pos]]);
                }
            }
            distinct.insert(key.min(swapped));
        }
    }
    let count = distinct.len();
    for key in distinct {
        let mut t_dia = BTreeSet::new();
        let mut t_oti = BTreeSet::new();
        for chunk in key.chunks_exact(3) {
            let (pos, s1, s2) = (chunk[0] as usize, chunk[1] as i64, chunk[2] as i64);
            let (r, c) = ((pos / n) as i64, (pos % n) as i64);
            t_dia.insert(Entry::new(r, c, s1));
            t_oti.insert(Entry::new(r, c, s2));
        }
        let b = Bitrade::from_raw(t_dia, t_oti)
            .expect("difference of two latin squares is a valid bitrade");
        visit(&b);
    }
    Ok(count)
}

/// Per-bitrade record in a corpus manifest.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CorpusRecord {
    pub file: String,
    pub entries: usize,
    /// The uniform line count, when rows, columns, and symbols all agree.
    pub homogeneous: Option<usize>,
    pub primary: bool,
    pub orbit_count: usize,
    pub genus_per_orbit: Vec<u32>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CorpusManifest {
    pub order: usize,
    pub count: usize,
    pub bitrades: Vec<CorpusRecord>,
}

/// Describes one bitrade for the manifest (file name supplied by the
/// writer).
pub fn corpus_record(b: &Bitrade, file: String) -> CorpusRecord {
    let entries = b.t_dia().len();
    let homogeneous = {
        let mut counts: BTreeMap<&crate::label::Label, usize> = BTreeMap::new();
        for e in b.t_dia().entries() {
            *counts.entry(e.row()).or_insert(0) += 1;
        }
        counts
            .values()
            .next()
            .copied()
            .filter(|&k| crate::bitrade::is_k_homogeneous(b, k))
    };
    let rep = crate::permrep::tau_representation(b).expect("corpus bitrades are nonempty");
    let orbit_count = crate::permrep::orbits(&rep).len();
    let genus_per_orbit = crate::surface::genus_per_orbit(&rep)
        .map(|reports| reports.iter().map(|r| r.genus).collect())
        .unwrap_or_default();
    CorpusRecord {
        file,
        entries,
        homogeneous,
        primary: orbit_count == 1,
        orbit_count,
        genus_per_orbit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitrade::is_k_homogeneous;
    use crate::permrep::{is_primary, tau_representation};
    use crate::surface::genus;

    fn e(r: i64, c: i64, s: i64) -> Entry {
        Entry::new(r, c, s)
    }

    #[test]
    fn intercalate_matches_its_table() {
        let b = intercalate();
        let expected: BTreeSet<Entry> = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
            .into_iter()
            .map(|(r, c, s)| e(r, c, s))
            .collect();
        assert_eq!(b.t_dia().entries(), &expected);
        assert!(is_k_homogeneous(&b, 2));
    }

    #[test]
    fn example2_matches_its_table() {
        let b = example2();
        assert_eq!(b.t_dia().len(), 12);
        assert!(b.t_dia().entries().contains(&e(1, 1, 1)));
        assert!(b.t_oti().entries().contains(&e(1, 1, 3)));
        assert!(is_k_homogeneous(&b, 3));
        let rep = tau_representation(&b).unwrap();
        assert_eq!(genus(&rep).unwrap().genus, 1);
    }

    #[test]
    fn cyclic_shift_small_cases() {
        assert_eq!(cyclic_shift_bitrade(2).unwrap(), intercalate());
        let b3 = cyclic_shift_bitrade(3).unwrap();
        assert_eq!(b3.t_dia().len(), 9);
        assert!(is_k_homogeneous(&b3, 3));
        let rep = tau_representation(&b3).unwrap();
        assert_eq!(genus(&rep).unwrap().genus, 1);
        assert!(matches!(
            cyclic_shift_bitrade(1),
            Err(GenerateError::OrderTooSmall(1))
        ));
    }

    #[test]
    fn unit_black_coordinate_roundtrip() {
        for a in -5..6 {
            for b in -5..6 {
                let u = black_to_unit((a, b));
                assert_eq!(vertex_color(u.0, u.1), 0);
                assert_eq!(unit_to_black(u), (a, b));
            }
        }
    }

    #[test]
    fn reduce_is_idempotent_and_respects_the_lattice() {
        let spec = LatticeSpec::new((2, 1), (-1, 3));
        assert_eq!(spec.det(), 7);
        for a in -6..7 {
            for b in -6..7 {
                let r = spec.reduce((a, b));
                assert_eq!(spec.reduce(r), r);
                // The difference lies in the sublattice.
                let d = (a - r.0, b - r.1);
                let na = d.0 * spec.v2.1 - d.1 * spec.v2.0;
                let nb = -d.0 * spec.v1.1 + d.1 * spec.v1.0;
                assert_eq!(na % spec.det(), 0);
                assert_eq!(nb % spec.det(), 0);
            }
        }
    }

    #[test]
    fn index_one_quotient_is_rejected() {
        assert!(matches!(
            lattice_quotient_bitrade(&LatticeSpec::new((1, 0), (0, 1))),
            Err(GenerateError::QuotientRejected(_))
        ));
    }

    #[test]
    fn degenerate_spec_is_rejected() {
        assert!(matches!(
            lattice_quotient_bitrade(&LatticeSpec::new((2, 1), (4, 2))),
            Err(GenerateError::DegenerateSpec)
        ));
    }

    #[test]
    fn index_four_quotient_is_shaped_like_a_four_row_torus() {
        let specs = sublattice_specs_of_index(4);
        let accepted: Vec<Bitrade> = specs
            .iter()
            .filter_map(|s| lattice_quotient_bitrade(s).ok())
            .collect();
        assert!(!accepted.is_empty(), "some index-4 quotient must exist");
        for b in &accepted {
            assert_eq!(b.t_dia().len(), 12);
            for axis in crate::label::Axis::ALL {
                assert_eq!(b.t_dia().universe(axis).len(), 4);
            }
            assert!(is_k_homogeneous(b, 3));
            assert_eq!(is_primary(b), Ok(true));
            let rep = tau_representation(b).unwrap();
            assert_eq!(genus(&rep).unwrap().genus, 1);
        }
    }

    #[test]
    fn accepted_quotients_have_the_expected_size() {
        for index in 1..=9 {
            for spec in sublattice_specs_of_index(index) {
                if let Ok(b) = lattice_quotient_bitrade(&spec) {
                    assert_eq!(b.t_dia().len(), 3 * index, "spec {spec:?}");
                    assert!(is_k_homogeneous(&b, 3));
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_are_frozen() {
        assert_eq!(latin_squares_flat(2).len(), 2);
        assert_eq!(latin_squares_flat(3).len(), 12);
        assert_eq!(latin_squares_flat(4).len(), 576);
    }

    #[test]
    fn order_two_enumeration_is_the_intercalate_alone() {
        let all = enumerate_small(2).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], intercalate());
    }

    #[test]
    fn order_three_enumeration_contains_the_cyclic_shift() {
        let all = enumerate_small(3).unwrap();
        let cyclic = cyclic_shift_bitrade(3).unwrap();
        assert!(all.contains(&cyclic));
        // 66 distinct difference classes of the 12 order-3 squares, 12 of
        // them 3-homogeneous (the pairs differing in every cell).
        assert_eq!(all.len(), 66);
        let hom3 = all
            .iter()
            .filter(|b| crate::bitrade::is_k_homogeneous(b, 3))
            .count();
        assert_eq!(hom3, 12);
    }

    #[test]
    fn enumeration_rejects_out_of_range_orders() {
        assert!(matches!(
            enumerate_small(1),
            Err(GenerateError::OrderTooSmall(1))
        ));
        assert!(matches!(
            enumerate_small(5),
            Err(GenerateError::OrderTooLarge(5))
        ));
    }
}
