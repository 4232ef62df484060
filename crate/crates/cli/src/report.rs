//! Serializable analysis reports.
//!
//! The JSON schema is the struct layout below, in declaration order (serde
//! keeps field order), so repeated serializations of the same analysis are
//! byte-identical and `parse(serialize(r)) == r`.

use gengame_core::{FiniteGroup, GameKind, IntersectionFamily, StructureDigraph};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub frattini_order: usize,
    /// Orders of the maximal subgroups, ascending (a multiset).
    pub maximal_subgroup_orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub id: usize,
    pub subgroup_order: usize,
    pub parity: u8,
    pub kind: String,
    /// `[pty, a, b]`: the class parity and its even-size/odd-size values.
    #[serde(rename = "type")]
    pub type_: [u32; 3],
    pub options: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub nim: u32,
    pub agreed: bool,
    pub states_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub group: GroupSummary,
    /// `"dng"` or `"gen"`.
    pub game: String,
    /// True for the order-1 group, whose games are solved directly (it has no
    /// maximal subgroups and therefore no structure digraph).
    pub trivial_group: bool,
    pub nim: u32,
    pub nodes: Vec<NodeReport>,
    pub simplified_nodes: Vec<NodeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

pub fn game_token(game: GameKind) -> &'static str {
    match game {
        GameKind::Dng => "dng",
        GameKind::Gen => "gen",
    }
}

/// Human nim-value notation.
pub fn star(nim: u32) -> String {
    format!("*{nim}")
}

pub fn group_summary(g: &FiniteGroup, fam: Option<&IntersectionFamily>) -> GroupSummary {
    let (frattini_order, mut maximal_subgroup_orders) = match fam {
        Some(fam) => (
            fam.member(fam.frattini_id()).len() as usize,
            fam.maximal_ids()
                .iter()
                .map(|&id| fam.member(id).len() as usize)
                .collect::<Vec<_>>(),
        ),
        // Only the trivial group lacks a family: no maximal subgroups, and
        // the empty intersection convention makes the whole group its own
        // Frattini subgroup.
        None => (g.order(), Vec::new()),
    };
    maximal_subgroup_orders.sort_unstable();
    GroupSummary {
        name: g.name().to_string(),
        order: g.order(),
        frattini_order,
        maximal_subgroup_orders,
    }
}

pub fn node_reports(d: &StructureDigraph) -> Vec<NodeReport> {
    d.nodes()
        .iter()
        .map(|n| NodeReport {
            id: n.id,
            subgroup_order: n.subgroup_order,
            parity: n.parity,
            kind: n.kind.to_string(),
            type_: [n.triple.pty as u32, n.triple.a, n.triple.b],
            options: n.options.clone(),
        })
        .collect()
}

/// Assemble the report for one game on one group. Pass the family, the
/// digraph, and its simplification for a non-trivial group; for the trivial
/// group (which has none of those) pass `None` for both.
pub fn build_report(
    g: &FiniteGroup,
    fam: Option<&IntersectionFamily>,
    game: GameKind,
    nim: u32,
    digraphs: Option<(&StructureDigraph, &StructureDigraph)>,
    oracle: Option<OracleReport>,
) -> AnalysisReport {
    AnalysisReport {
        group: group_summary(g, fam),
        game: game_token(game).to_string(),
        trivial_group: g.order() == 1,
        nim,
        nodes: digraphs.map(|(d, _)| node_reports(d)).unwrap_or_default(),
        simplified_nodes: digraphs.map(|(_, s)| node_reports(s)).unwrap_or_default(),
        oracle,
    }
}

pub fn export_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub fn export_json_many(reports: &[AnalysisReport]) -> String {
    if let [only] = reports {
        return export_json(only);
    }
    let mut s = serde_json::to_string_pretty(reports).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<AnalysisReport, serde_json::Error> {
    serde_json::from_str(text)
}
