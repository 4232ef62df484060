//! Nim-values of the two impartial generating games on a finite group.
//!
//! In both games the players alternately pick previously unchosen group
//! elements, growing a shared set `P`. In the *achievement* game ([`GameKind::Gen`])
//! the player whose move first makes `P` generate the whole group wins; in the
//! *avoidance* game ([`GameKind::Dng`]) a move is only legal while the grown set
//! still generates a proper subgroup, and the player left without a legal move
//! loses.
//!
//! Two independent engines compute the nim-value of the starting position:
//!
//! * [`structure::game_nim_value`] — collapses positions into classes indexed
//!   by intersections of maximal subgroups and solves a small digraph of
//!   parity-typed classes. Cost scales with the subgroup lattice, not `2^|G|`.
//! * [`oracle::bruteforce_nim`] — memoized Sprague–Grundy recursion over raw
//!   labeled positions. Exponential, but trustworthy; used to cross-check the
//!   structure engine on small groups.

pub mod group;
pub mod lattice;
pub mod oracle;
pub mod structure;

pub use group::{
    build_group, element_order, is_generating, subgroup_generated, validate_group, ElementSet,
    FiniteGroup, GroupError, GroupSpec, MAX_ORDER,
};
pub use lattice::{
    all_subgroups, envelope_of_subgroup, frattini, intersection_family, maximal_subgroups,
    minimal_envelope, Envelope, IntersectionFamily, LatticeError, SubgroupFamily, SUBGROUP_CAP,
};
pub use oracle::{
    best_move, bruteforce_nim, enumerate_labeled_positions, grundy, verify_parity_invariant,
    BestMove, OracleConfig, OracleError, ParityCheck, ParityViolation, DEFAULT_MAX_STATES,
};
pub use structure::{
    build_digraph, classify_position, compute_types, game_nim_value, node_kind_census,
    simplify_digraph, GameKind, KindCensus, NodeKind, NodeSubject, StructureDigraph,
    StructureError, StructureNode, TypeTriple,
};

/// Minimum excludant: the least non-negative integer absent from `values`.
///
/// The values need not be sorted or distinct.
pub fn mex(values: &[u32]) -> u32 {
    let mut seen = vec![false; values.len() + 1];
    for &v in values {
        if (v as usize) < seen.len() {
            seen[v as usize] = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap() as u32
}
