//! Surface embedding of a permutation triple.
//!
//! A connected triple embeds as a bipartite graph on an oriented surface:
//! black vertices are the cycles of the first permutation, white vertices
//! the cycles of the second, and there is one edge per dart, ordered
//! anticlockwise around each vertex by cycle order. Subdividing every face
//! around a new star vertex yields the canonical triangulation, in which
//! shaded triangles correspond to first-half entries and unshaded triangles
//! to second-half entries. Counting cycles gives the genus of the surface.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::bitrade::Entry;
use crate::permrep::{orbits, TStatus, TauRep};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("dart set is empty")]
    EmptyDartSet,
    #[error("permutation triple does not satisfy the required conditions ({0})")]
    ConditionsNotMet(TStatus),
    #[error("triple is disconnected ({0} orbits); compute per orbit instead")]
    Disconnected(usize),
    #[error("euler characteristic {0} is odd or exceeds 2; input is corrupt")]
    EulerBreach(i64),
}

/// A bipartite graph with a rotation scheme, i.e. an embedding in an
/// oriented surface.
#[derive(Debug, Clone)]
pub struct Hypermap {
    rep: TauRep,
    black: Vec<Vec<Entry>>,
    white: Vec<Vec<Entry>>,
    black_of: BTreeMap<Entry, usize>,
    white_of: BTreeMap<Entry, usize>,
}

fn index_cycles(cycles: &[Vec<Entry>]) -> BTreeMap<Entry, usize> {
    let mut index = BTreeMap::new();
    for (i, cycle) in cycles.iter().enumerate() {
        for dart in cycle {
            index.insert(dart.clone(), i);
        }
    }
    index
}

/// Builds the bipartite embedding of a triple satisfying all four
/// conditions. A disconnected triple is rejected; split it by orbit first.
pub fn hypermap_from_tau(rep: &TauRep) -> Result<Hypermap, SurfaceError> {
    let status = rep.t_status();
    if !(status.t1 && status.t2 && status.t3) {
        return Err(SurfaceError::ConditionsNotMet(status));
    }
    if !status.t4 {
        return Err(SurfaceError::Disconnected(orbits(rep).len()));
    }
    let black = rep.tau(0).cycles().to_vec();
    let white = rep.tau(1).cycles().to_vec();
    let black_of = index_cycles(&black);
    let white_of = index_cycles(&white);
    Ok(Hypermap {
        rep: rep.clone(),
        black,
        white,
        black_of,
        white_of,
    })
}

impl Hypermap {
    pub fn rep(&self) -> &TauRep {
        &self.rep
    }

    pub fn black_vertices(&self) -> &[Vec<Entry>] {
        &self.black
    }

    pub fn white_vertices(&self) -> &[Vec<Entry>] {
        &self.white
    }

    /// One edge per dart: `(black vertex, white vertex, key)`.
    pub fn edges(&self) -> Vec<(usize, usize, Entry)> {
        self.rep
            .omega()
            .iter()
            .map(|x| (self.black_of[x], self.white_of[x], x.clone()))
            .collect()
    }

    pub fn black_of(&self, dart: &Entry) -> usize {
        self.black_of[dart]
    }

    pub fn white_of(&self, dart: &Entry) -> usize {
        self.white_of[dart]
    }

    /// Edge keys around a black vertex in anticlockwise order.
    pub fn rotation_at_black(&self, v: usize) -> &[Entry] {
        &self.black[v]
    }

    /// Edge keys around a white vertex in anticlockwise order.
    pub fn rotation_at_white(&self, v: usize) -> &[Entry] {
        &self.white[v]
    }

    /// GraphViz rendering: black vertices filled, white vertices hollow,
    /// edges labelled by their dart.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph hypermap {\n  node [shape=circle];\n");
        for (i, cycle) in self.black.iter().enumerate() {
            let label = crate::permrep::cycle_label(cycle);
            out.push_str(&format!(
                "  b{i} [style=filled, fillcolor=black, fontcolor=white, label=\"{label}\"];\n"
            ));
        }
        for (i, cycle) in self.white.iter().enumerate() {
            let label = crate::permrep::cycle_label(cycle);
            out.push_str(&format!("  w{i} [label=\"{label}\"];\n"));
        }
        for (b, w, dart) in self.edges() {
            out.push_str(&format!("  b{b} -- w{w} [label=\"{}\"];\n", dart.dart()));
        }
        out.push_str("}\n");
        out
    }
}

/// The faces of the embedding: the cycles of the third permutation, one
/// star vertex per face.
pub fn faces(rep: &TauRep) -> Vec<Vec<Entry>> {
    rep.tau(2).cycles().to_vec()
}

/// Cycle counts, Euler characteristic, and genus of a connected triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub z_sigma: usize,
    pub z_alpha: usize,
    pub z_phi: usize,
    pub omega_size: usize,
    /// `z_sigma + z_alpha + z_phi - omega_size`; equals `2 - 2 * genus`.
    pub euler_rhs: i64,
    pub genus: u32,
    pub surface_name: String,
}

/// Computes the genus of a connected triple from its cycle counts.
pub fn genus(rep: &TauRep) -> Result<GenusReport, SurfaceError> {
    if rep.omega().is_empty() {
        return Err(SurfaceError::EmptyDartSet);
    }
    let status = rep.t_status();
    if !status.t1 {
        return Err(SurfaceError::ConditionsNotMet(status));
    }
    if !status.t4 {
        return Err(SurfaceError::Disconnected(orbits(rep).len()));
    }
    let z_sigma = rep.tau(0).cycle_count();
    let z_alpha = rep.tau(1).cycle_count();
    let z_phi = rep.tau(2).cycle_count();
    let omega_size = rep.omega().len();
    let euler_rhs = (z_sigma + z_alpha + z_phi) as i64 - omega_size as i64;
    if euler_rhs > 2 || euler_rhs.rem_euclid(2) != 0 {
        return Err(SurfaceError::EulerBreach(euler_rhs));
    }
    let genus = ((2 - euler_rhs) / 2) as u32;
    let surface_name = match genus {
        0 => "sphere".to_owned(),
        1 => "torus".to_owned(),
        g => format!("genus-{g}"),
    };
    Ok(GenusReport {
        z_sigma,
        z_alpha,
        z_phi,
        omega_size,
        euler_rhs,
        genus,
        surface_name,
    })
}

/// Restricts the triple to one orbit. Cycles never straddle orbits, so the
/// restriction just keeps the cycles supported inside the orbit.
fn restrict_to_orbit(rep: &TauRep, orbit: &[Entry]) -> TauRep {
    let members: std::collections::BTreeSet<&Entry> = orbit.iter().collect();
    let tau = [0, 1, 2].map(|i| {
        let cycles: Vec<Vec<Entry>> = rep
            .tau(i)
            .cycles()
            .iter()
            .filter(|c| members.contains(&c[0]))
            .cloned()
            .collect();
        crate::perm::Permutation::from_cycles(cycles).expect("cycles of a permutation")
    });
    TauRep::new(tau)
}

/// Genus of each orbit separately, ordered by least dart. A connected
/// triple yields a single report; the genus of a disjoint union is not
/// defined and deliberately not aggregated.
pub fn genus_per_orbit(rep: &TauRep) -> Result<Vec<GenusReport>, SurfaceError> {
    orbits(rep)
        .iter()
        .map(|orbit| genus(&restrict_to_orbit(rep, orbit)))
        .collect()
}

/// Edge kinds of the canonical triangulation, in storage order.
///
/// Every triangle has one vertex of each color and one side of each kind:
/// star vertices connect to black vertices by dotted edges and to white
/// vertices by dashed edges, while black–white edges are the solid edges of
/// the underlying bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Black–star side.
    Dotted = 0,
    /// Black–white side (an edge of the bipartite graph).
    Solid = 1,
    /// White–star side.
    Dashed = 2,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 3] = [EdgeKind::Dotted, EdgeKind::Solid, EdgeKind::Dashed];
}

/// One triangle of the canonical triangulation.
///
/// For a shaded triangle `key` is its dart. Unshaded triangles are indexed
/// by the witness dart `y` of the second-half rule (the triple is then the
/// black cycle of `y`, the white cycle of `y tau1`, and the star cycle of
/// `y`); this indexing convention is fixed here once and used everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleFace {
    pub key: Entry,
    pub black: usize,
    pub white: usize,
    pub star: usize,
    /// Indices into the opposite shading class, by [`EdgeKind`] order.
    pub neighbors: [usize; 3],
}

/// The canonical triangulation: one shaded and one unshaded triangle per
/// dart, each edge-adjacent only to triangles of the opposite shading.
#[derive(Debug, Clone)]
pub struct Triangulation {
    shaded: Vec<TriangleFace>,
    unshaded: Vec<TriangleFace>,
    shaded_index: BTreeMap<Entry, usize>,
    unshaded_index: BTreeMap<Entry, usize>,
    stars: Vec<Vec<Entry>>,
}

/// Subdivides the embedding into alternating shaded and unshaded
/// triangles. The shaded triangle of a dart has that dart's black, white,
/// and star cycles as vertices; its unshaded neighbors are found by walking
/// the witness rule along each side.
pub fn canonical_triangulation(h: &Hypermap) -> Triangulation {
    let rep = h.rep();
    let stars = faces(rep);
    let star_of = index_cycles(&stars);
    let darts: Vec<Entry> = rep.omega().iter().cloned().collect();
    let index: BTreeMap<Entry, usize> = darts
        .iter()
        .enumerate()
        .map(|(i, d)| (d.clone(), i))
        .collect();
    let tau1_inv = rep.tau(0).inverse();
    let tau3_inv = rep.tau(2).inverse();

    // Both families are indexed identically (shaded by dart, unshaded by
    // witness), so neighbor indices can be computed through `index`.
    let shaded: Vec<TriangleFace> = darts
        .iter()
        .map(|x| TriangleFace {
            key: x.clone(),
            black: h.black_of(x),
            white: h.white_of(x),
            star: star_of[x],
            neighbors: [index[x], index[&tau1_inv.apply(x)], index[&rep.apply(2, x)]],
        })
        .collect();
    let unshaded: Vec<TriangleFace> = darts
        .iter()
        .map(|y| TriangleFace {
            key: y.clone(),
            black: h.black_of(y),
            white: h.white_of(&rep.apply(0, y)),
            star: star_of[y],
            neighbors: [index[y], index[&rep.apply(0, y)], index[&tau3_inv.apply(y)]],
        })
        .collect();
    Triangulation {
        shaded,
        unshaded,
        shaded_index: index.clone(),
        unshaded_index: index,
        stars,
    }
}

impl Triangulation {
    pub fn shaded(&self) -> &[TriangleFace] {
        &self.shaded
    }

    pub fn unshaded(&self) -> &[TriangleFace] {
        &self.unshaded
    }

    pub fn stars(&self) -> &[Vec<Entry>] {
        &self.stars
    }

    pub fn shaded_for(&self, dart: &Entry) -> &TriangleFace {
        &self.shaded[self.shaded_index[dart]]
    }

    pub fn unshaded_for(&self, witness: &Entry) -> &TriangleFace {
        &self.unshaded[self.unshaded_index[witness]]
    }

    /// Anticlockwise rotation of a shaded triangle around its black vertex:
    /// cross the dotted side into an unshaded triangle, then leave it
    /// across the solid side.
    pub fn rotate_black(&self, dart: &Entry) -> &Entry {
        let u = &self.unshaded[self.shaded_for(dart).neighbors[EdgeKind::Dotted as usize]];
        &self.shaded[u.neighbors[EdgeKind::Solid as usize]].key
    }

    /// Anticlockwise rotation around the white vertex: cross the solid
    /// side, leave across the dashed side.
    pub fn rotate_white(&self, dart: &Entry) -> &Entry {
        let u = &self.unshaded[self.shaded_for(dart).neighbors[EdgeKind::Solid as usize]];
        &self.shaded[u.neighbors[EdgeKind::Dashed as usize]].key
    }

    /// Anticlockwise rotation around the star vertex: cross the dashed
    /// side, leave across the dotted side.
    pub fn rotate_star(&self, dart: &Entry) -> &Entry {
        let u = &self.unshaded[self.shaded_for(dart).neighbors[EdgeKind::Dashed as usize]];
        &self.shaded[u.neighbors[EdgeKind::Dotted as usize]].key
    }
}
