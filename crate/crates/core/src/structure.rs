//! The structure digraph: positions of a generating game collapsed into
//! classes indexed by intersections of maximal subgroups, with a parity-split
//! nim-value ("type") computed per class.
//!
//! A position `P` (set of chosen elements) belongs to the class of the
//! smallest intersection-family member containing ⟨P⟩. Within one class,
//! positions of equal size-parity share a nim-value, so a class carries a
//! triple `(pty, a, b)`: the parity of the indexing subgroup, the value of
//! even-size positions, and the value of odd-size positions. Class-to-class
//! moves are computed once from the representative position `I` itself, and
//! the within-class moves (which flip size parity) are folded into the mex
//! recursion.

use crate::group::{subgroup_generated, ElementSet, FiniteGroup};
use crate::lattice::{
    envelope_of_subgroup, intersection_family, minimal_envelope, Envelope, IntersectionFamily,
    LatticeError,
};
use crate::mex;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Which of the two generating games is being played.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameKind {
    /// Avoidance: a move may never make the chosen set generate the whole
    /// group; the player with no legal move loses.
    Dng,
    /// Achievement: the player whose move first makes the chosen set generate
    /// the whole group wins.
    Gen,
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameKind::Dng => "DNG",
            GameKind::Gen => "GEN",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("the trivial group has no structure digraph; its games are solved directly")]
    TrivialGroup,
    #[error("position generates the whole group and is not a legal avoidance-game position")]
    IllegalPosition,
    #[error("node kinds are an achievement-game classification; this digraph is for the avoidance game")]
    WrongGame,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Parity-split nim-value of one structure class: `pty` is |I| mod 2, `a` the
/// value of even-size positions in the class, `b` the value of odd-size ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeTriple {
    pub pty: u8,
    pub a: u32,
    pub b: u32,
}

impl TypeTriple {
    pub fn new(pty: u8, a: u32, b: u32) -> Self {
        TypeTriple { pty, a, b }
    }
}

impl fmt::Display for TypeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pty, self.a, self.b)
    }
}

/// What a digraph node stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeSubject {
    /// A member of the intersection family, by member id.
    Member(usize),
    /// The synthetic achievement-game sink: the set generates everything.
    WholeGroup,
}

/// Move-structure classification of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// No moves remain (avoidance), or the game just ended (achievement sink).
    Terminal,
    /// Achievement only: some move from here ends the game at once.
    SemiTerminal,
    NonTerminal,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Terminal => "Terminal",
            NodeKind::SemiTerminal => "SemiTerminal",
            NodeKind::NonTerminal => "NonTerminal",
        })
    }
}

/// One structure class.
#[derive(Clone, Debug)]
pub struct StructureNode {
    pub id: usize,
    pub subject: NodeSubject,
    /// |I| for a member node; |G| for the whole-group node.
    pub subgroup_order: usize,
    /// `subgroup_order % 2`; equals `triple.pty`.
    pub parity: u8,
    pub kind: NodeKind,
    /// Ids of option nodes, ascending. Options strictly increase
    /// `subgroup_order`, so the digraph is acyclic.
    pub options: Vec<usize>,
    /// The class type; meaningful once types are computed.
    pub triple: TypeTriple,
    /// Distinct types of the option classes, sorted.
    pub otype: Vec<TypeTriple>,
    /// `otype` together with this node's own type, sorted — the key used to
    /// merge nodes during simplification.
    pub otype_closure: Vec<TypeTriple>,
}

/// The class digraph of one game on one group.
#[derive(Clone, Debug)]
pub struct StructureDigraph {
    game: GameKind,
    parent_order: usize,
    nodes: Vec<StructureNode>,
    /// Node whose class contains the empty position (the Frattini class, or
    /// its image after simplification).
    start_id: usize,
    /// The achievement sink, if this is an achievement digraph.
    whole_id: Option<usize>,
    types_computed: bool,
}

impl StructureDigraph {
    pub fn game(&self) -> GameKind {
        self.game
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn nodes(&self) -> &[StructureNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &StructureNode {
        &self.nodes[id]
    }

    /// Id of the class containing the empty position.
    pub fn start_id(&self) -> usize {
        self.start_id
    }

    /// Id of the achievement sink node, when the game is [`GameKind::Gen`].
    pub fn whole_id(&self) -> Option<usize> {
        self.whole_id
    }

    pub fn types_computed(&self) -> bool {
        self.types_computed
    }

    /// Total number of edges.
    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|n| n.options.len()).sum()
    }

    /// The game's nim-value: the even-size (`a`) component at the start
    /// class, since the empty position has even size.
    pub fn nim_value(&self) -> u32 {
        assert!(self.types_computed, "compute_types before reading the nim-value");
        self.nodes[self.start_id].triple.a
    }
}

/// Builds the class digraph of `game` on `g`, one node per member of `fam`
/// (plus the sink node for the achievement game).
///
/// Edges use the indexing subgroup `I` as the representative position of its
/// class: for every `x ∉ I`, the move lands in the class of `⟨I ∪ {x}⟩`. If
/// that join is the whole group the move ends the achievement game (edge to
/// the sink) and is illegal in the avoidance game (no edge).
///
/// Kinds: `Terminal` for the sink and for avoidance nodes with no moves
/// (exactly the maximal subgroups); `SemiTerminal` for achievement nodes with
/// an edge to the sink; `NonTerminal` otherwise.
pub fn build_digraph(
    g: &FiniteGroup,
    fam: &IntersectionFamily,
    game: GameKind,
) -> Result<StructureDigraph, StructureError> {
    if g.order() <= 1 {
        return Err(StructureError::TrivialGroup);
    }
    assert_eq!(fam.parent_order(), g.order(), "family from a different group");
    let n = g.order();
    let member_count = fam.len();
    let whole_id = match game {
        GameKind::Gen => Some(member_count),
        GameKind::Dng => None,
    };

    // ⟨I ∪ {x}⟩ depends on x only through ⟨x⟩, so joins are deduplicated by
    // the cyclic subgroup of x.
    let cyclics: Vec<ElementSet> = (0..n)
        .map(|x| subgroup_generated(g, &ElementSet::from_indices(n, &[x])))
        .collect();

    let mut nodes: Vec<StructureNode> = Vec::with_capacity(member_count + 1);
    for id in 0..member_count {
        let subgroup = fam.member(id);
        let mut opts: BTreeSet<usize> = BTreeSet::new();
        let mut seen_cyclic: BTreeSet<&ElementSet> = BTreeSet::new();
        for x in 0..n {
            if subgroup.contains(x) || !seen_cyclic.insert(&cyclics[x]) {
                continue;
            }
            let mut seed = subgroup.clone();
            seed.insert(x);
            let join = subgroup_generated(g, &seed);
            if join.len() == n {
                if let Some(w) = whole_id {
                    opts.insert(w);
                }
            } else {
                match envelope_of_subgroup(g, fam, &join) {
                    Envelope::Member(j) => {
                        opts.insert(j);
                    }
                    Envelope::WholeGroup => unreachable!("proper join has an envelope"),
                }
            }
        }
        let options: Vec<usize> = opts.into_iter().collect();
        let kind = match game {
            GameKind::Dng if options.is_empty() => NodeKind::Terminal,
            GameKind::Dng => NodeKind::NonTerminal,
            GameKind::Gen if options.last() == Some(&member_count) => NodeKind::SemiTerminal,
            GameKind::Gen => NodeKind::NonTerminal,
        };
        nodes.push(StructureNode {
            id,
            subject: NodeSubject::Member(id),
            subgroup_order: subgroup.len(),
            parity: (subgroup.len() % 2) as u8,
            kind,
            options,
            triple: TypeTriple::new((subgroup.len() % 2) as u8, 0, 0),
            otype: Vec::new(),
            otype_closure: Vec::new(),
        });
    }
    if let Some(w) = whole_id {
        nodes.push(StructureNode {
            id: w,
            subject: NodeSubject::WholeGroup,
            subgroup_order: n,
            parity: (n % 2) as u8,
            kind: NodeKind::Terminal,
            options: Vec::new(),
            triple: TypeTriple::new((n % 2) as u8, 0, 0),
            otype: Vec::new(),
            otype_closure: Vec::new(),
        });
    }

    Ok(StructureDigraph {
        game,
        parent_order: n,
        nodes,
        start_id: fam.frattini_id(),
        whole_id,
        types_computed: false,
    })
}

/// Runs the parity-split mex recursion over the digraph and fills in
/// `triple`, `otype`, and `otype_closure` on every node.
///
/// Nodes are processed in decreasing subgroup order (options only point to
/// strictly larger subgroups, so every option is typed first). The
/// achievement sink is fixed at `(|G| mod 2, 0, 0)`: reaching it ends the
/// game, so it behaves as a terminal of value 0. Every other node with
/// option-type components `A = {a}` and `B = {b}` gets, for even `|I|`,
/// `a = mex(B)` then `b = mex(A ∪ {a})`; for odd `|I|`, `b = mex(A)` then
/// `a = mex(B ∪ {b})` — the cross-over reflects that a move flips the size
/// parity, and the extra element accounts for within-class moves, which exist
/// from every position except the largest one in the class.
pub fn compute_types(mut d: StructureDigraph) -> StructureDigraph {
    let mut order: Vec<usize> = (0..d.nodes.len()).collect();
    // Decreasing subject size; ties (never linked by edges) in id order.
    order.sort_by(|&x, &y| {
        d.nodes[y]
            .subgroup_order
            .cmp(&d.nodes[x].subgroup_order)
            .then(d.nodes[x].id.cmp(&d.nodes[y].id))
    });
    for id in order {
        if Some(id) == d.whole_id {
            // Fixed sink type; otype stays empty.
            d.nodes[id].triple = TypeTriple::new((d.parent_order % 2) as u8, 0, 0);
            d.nodes[id].otype_closure = vec![d.nodes[id].triple];
            continue;
        }
        let opt_triples: Vec<TypeTriple> =
            d.nodes[id].options.iter().map(|&j| d.nodes[j].triple).collect();
        let a_parts: Vec<u32> = opt_triples.iter().map(|t| t.a).collect();
        let b_parts: Vec<u32> = opt_triples.iter().map(|t| t.b).collect();
        let pty = d.nodes[id].parity;
        let triple = if pty == 0 {
            let a = mex(&b_parts);
            let with_a: Vec<u32> = a_parts.iter().copied().chain([a]).collect();
            let b = mex(&with_a);
            TypeTriple::new(0, a, b)
        } else {
            let b = mex(&a_parts);
            let with_b: Vec<u32> = b_parts.iter().copied().chain([b]).collect();
            let a = mex(&with_b);
            TypeTriple::new(1, a, b)
        };
        let mut otype: Vec<TypeTriple> = opt_triples;
        otype.sort_unstable();
        otype.dedup();
        let mut closure = otype.clone();
        closure.push(triple);
        closure.sort_unstable();
        closure.dedup();
        let node = &mut d.nodes[id];
        node.triple = triple;
        node.otype = otype;
        node.otype_closure = closure;
    }
    d.types_computed = true;
    d
}

/// Nim-value of the full game: achievement and avoidance solved via the
/// structure digraph, with the trivial group answered by direct play (no
/// legal first move in avoidance; the only first move wins achievement).
pub fn game_nim_value(g: &FiniteGroup, game: GameKind) -> Result<u32, StructureError> {
    if g.order() == 1 {
        return Ok(match game {
            GameKind::Dng => 0,
            GameKind::Gen => 1,
        });
    }
    let fam = intersection_family(g)?;
    let d = compute_types(build_digraph(g, &fam, game)?);
    Ok(d.nim_value())
}

/// The digraph node whose class contains position `p`: the minimal family
/// member containing ⟨p⟩, or the sink node (id = family size) when `p`
/// generates — which in the avoidance game is not a position at all.
pub fn classify_position(
    g: &FiniteGroup,
    fam: &IntersectionFamily,
    game: GameKind,
    p: &ElementSet,
) -> Result<usize, StructureError> {
    match minimal_envelope(g, fam, p) {
        Envelope::Member(id) => Ok(id),
        Envelope::WholeGroup => match game {
            GameKind::Gen => Ok(fam.len()),
            GameKind::Dng => Err(StructureError::IllegalPosition),
        },
    }
}

/// Quotient of the digraph identifying nodes with equal `(triple,
/// otype_closure)`. Edges are re-targeted to class representatives,
/// deduplicated, and self-loops dropped; kinds are recomputed on the
/// quotient. Node ids are renumbered 0.. in order of each class's smallest
/// original id; `subject`/`subgroup_order` come from that representative.
pub fn simplify_digraph(d: &StructureDigraph) -> StructureDigraph {
    assert!(d.types_computed, "compute_types before simplify_digraph");
    // Group original nodes by merge key, preserving first-seen (= lowest id)
    // order of classes.
    let mut class_of: Vec<usize> = vec![usize::MAX; d.nodes.len()];
    let mut reps: Vec<usize> = Vec::new();
    let mut keys: Vec<(&TypeTriple, &[TypeTriple])> = Vec::new();
    for node in &d.nodes {
        let key = (&node.triple, node.otype_closure.as_slice());
        match keys.iter().position(|k| *k == key) {
            Some(c) => class_of[node.id] = c,
            None => {
                class_of[node.id] = keys.len();
                keys.push(key);
                reps.push(node.id);
            }
        }
    }

    let mut nodes: Vec<StructureNode> = Vec::with_capacity(reps.len());
    for (new_id, &rep) in reps.iter().enumerate() {
        let mut opts: BTreeSet<usize> = BTreeSet::new();
        for old in &d.nodes {
            if class_of[old.id] != new_id {
                continue;
            }
            for &t in &old.options {
                let target = class_of[t];
                if target != new_id {
                    opts.insert(target);
                }
            }
        }
        let options: Vec<usize> = opts.into_iter().collect();
        let rep_node = &d.nodes[rep];
        let whole_class = d.whole_id.map(|w| class_of[w]);
        let kind = match d.game {
            GameKind::Dng if options.is_empty() => NodeKind::Terminal,
            GameKind::Dng => NodeKind::NonTerminal,
            GameKind::Gen if Some(new_id) == whole_class => NodeKind::Terminal,
            GameKind::Gen if whole_class.is_some_and(|w| options.contains(&w)) => {
                NodeKind::SemiTerminal
            }
            GameKind::Gen => NodeKind::NonTerminal,
        };
        // otype on the quotient: types of the merged option classes.
        let mut otype: Vec<TypeTriple> =
            options.iter().map(|&c| d.nodes[reps[c]].triple).collect();
        otype.sort_unstable();
        otype.dedup();
        let mut closure = otype.clone();
        closure.push(rep_node.triple);
        closure.sort_unstable();
        closure.dedup();
        nodes.push(StructureNode {
            id: new_id,
            subject: rep_node.subject,
            subgroup_order: rep_node.subgroup_order,
            parity: rep_node.parity,
            kind,
            options,
            triple: rep_node.triple,
            otype,
            otype_closure: closure,
        });
    }

    StructureDigraph {
        game: d.game,
        parent_order: d.parent_order,
        nodes,
        start_id: class_of[d.start_id],
        whole_id: d.whole_id.map(|w| class_of[w]),
        types_computed: true,
    }
}

/// Counts of each node kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KindCensus {
    pub terminal: usize,
    pub semi_terminal: usize,
    pub non_terminal: usize,
}

/// Tallies node kinds of an achievement digraph. The trichotomy is defined
/// for the achievement game only, so an avoidance digraph is refused.
pub fn node_kind_census(d: &StructureDigraph) -> Result<KindCensus, StructureError> {
    if d.game != GameKind::Gen {
        return Err(StructureError::WrongGame);
    }
    let mut census = KindCensus {
        terminal: 0,
        semi_terminal: 0,
        non_terminal: 0,
    };
    for n in &d.nodes {
        match n.kind {
            NodeKind::Terminal => census.terminal += 1,
            NodeKind::SemiTerminal => census.semi_terminal += 1,
            NodeKind::NonTerminal => census.non_terminal += 1,
        }
    }
    Ok(census)
}
