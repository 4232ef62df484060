//! DOT export of a structure digraph.

use gengame_core::{GameKind, StructureDigraph};
use std::fmt::Write as _;

/// Render the digraph as DOT: one node per structure class in id order, one
/// edge per option. Each label packs the class's subgroup order, parity, the
/// two parity-split values, and the move-structure kind.
pub fn export_dot(d: &StructureDigraph) -> String {
    assert!(d.types_computed(), "compute types before exporting");
    let graph_name = match d.game() {
        GameKind::Dng => "avoidance",
        GameKind::Gen => "achievement",
    };
    let mut out = String::new();
    let _ = writeln!(out, "digraph {graph_name} {{");
    out.push_str("  rankdir=TB;\n  node [shape=box];\n");
    for node in d.nodes() {
        let _ = writeln!(
            out,
            "  n{} [label=\"I={}|pty={}|(a,b)=({},{})|{}\"];",
            node.id, node.subgroup_order, node.triple.pty, node.triple.a, node.triple.b, node.kind
        );
    }
    for node in d.nodes() {
        for &target in &node.options {
            let _ = writeln!(out, "  n{} -> n{};", node.id, target);
        }
    }
    out.push_str("}\n");
    out
}

/// Node and edge counts as they appear in rendered DOT text (used by tests to
/// check exports against the digraph they came from).
pub fn dot_counts(dot: &str) -> (usize, usize) {
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains(" -> ")).count();
    (nodes, edges)
}
