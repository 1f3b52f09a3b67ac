//! Latin bitrades: pairs of partial latin squares recording the difference
//! between two latin squares.
//!
//! The crate covers:
//!
//! * validation of partial latin squares and of the bitrade rules, with
//!   rule-level violation reports ([`bitrade`]);
//! * the representation of a bitrade as three permutations moving along
//!   rows, columns, and symbols, and the reverse construction ([`permrep`]);
//! * the embedding of that triple as a bipartite graph on an oriented
//!   surface, its canonical triangulation, and the genus computation
//!   ([`surface`]);
//! * the partition of a 3-homogeneous bitrade into three transversals by
//!   mod-3 label propagation, with an exhaustive backtracking oracle
//!   ([`partition`]);
//! * the lift of a 3-homogeneous bitrade to a labelled tessellation of the
//!   Euclidean plane by unit triangles, rendered as SVG ([`tessellate`]);
//! * fixtures, parametric families, lattice quotients, and small-order
//!   exhaustive enumeration ([`generate`]);
//! * the text and JSON file formats ([`formats`]).
//!
//! All values are immutable after construction and safe to share across
//! threads; every operation is a pure function of its inputs.
//!
//! ```
//! use bitrades::generate::example2;
//! use bitrades::partition::three_transversal_partition;
//! use bitrades::surface::genus;
//! use bitrades::tau_representation;
//!
//! let b = example2();
//! let rep = tau_representation(&b)?;
//! assert_eq!(genus(&rep)?.surface_name, "torus");
//!
//! let partition = three_transversal_partition(&b)?;
//! assert!(partition.classes.iter().all(|class| class.len() == 4));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bitrade;
pub mod exact;
pub mod formats;
pub mod generate;
pub mod label;
pub mod partition;
pub mod perm;
pub mod permrep;
pub mod surface;
pub mod tessellate;

pub use bitrade::{
    bitrade_from_squares, is_k_homogeneous, is_transversal, validate_bitrade, validate_pls,
    Bitrade, CoreError, Entry, PartialLatinSquare, Rule, ValidationReport, Violation,
};
pub use label::{Axis, Label, LabelValue};
pub use perm::Permutation;
pub use permrep::{
    beta_maps, bitrade_from_tau, bitrade_from_tau_with_original_labels, check_t_conditions,
    is_primary, orbits, tau_representation, BetaTriple, TStatus, TauRep,
};
