//! Brute-force Sprague–Grundy oracle: plays the games over explicit element
//! subsets with a memoized mex recursion. Exponential in the worst case, and
//! deliberately independent of the structure-digraph machinery so the two can
//! cross-validate each other. Also drives the interactive play engine.

use crate::group::{subgroup_generated, ElementSet, FiniteGroup};
use crate::lattice::{envelope_of_subgroup, Envelope, IntersectionFamily, LatticeError};
use crate::mex;
use crate::structure::GameKind;
use std::collections::HashMap;
use thiserror::Error;

/// Default ceiling on the position-space bound before the oracle refuses.
pub const DEFAULT_MAX_STATES: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The loose state bound Σ_M 2^|M| over maximal subgroups M exceeds the
    /// configured cap; the group is structure-method-only at this cap.
    #[error("position-space bound {bound} exceeds the state cap {max_states}")]
    StateCapExceeded { bound: u128, max_states: u64 },
    #[error("position generates the whole group and is not a legal avoidance-game position")]
    IllegalPosition,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug)]
struct MemoEntry {
    grundy: u32,
    /// Id (into the cached subgroup list) of ⟨P⟩ for this position.
    span: u32,
}

/// Oracle working state: the cap, the grundy memo, and derived caches (the
/// subgroup list and a join table) that let the recursion track ⟨P⟩ by table
/// lookup instead of recomputing closures.
///
/// A config may be reused across calls; it detects a change of group or game
/// by fingerprint and resets itself, so stale entries can never leak between
/// analyses.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    max_states: u64,
    /// Optional element iteration order for the recursion (a permutation of
    /// `0..n`). Grundy values are mex-based and therefore order-independent;
    /// the knob exists so tests can prove that.
    move_order: Option<Vec<usize>>,
    memo: HashMap<ElementSet, MemoEntry>,
    subgroups: Vec<ElementSet>,
    sub_ids: HashMap<ElementSet, u32>,
    join: HashMap<(u32, usize), u32>,
    state_bound: u128,
    group_stamp: Option<u64>,
    game_stamp: Option<GameKind>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self::new()
    }
}

impl OracleConfig {
    pub fn new() -> Self {
        OracleConfig {
            max_states: DEFAULT_MAX_STATES,
            move_order: None,
            memo: HashMap::new(),
            subgroups: Vec::new(),
            sub_ids: HashMap::new(),
            join: HashMap::new(),
            state_bound: 0,
            group_stamp: None,
            game_stamp: None,
        }
    }

    pub fn with_max_states(max_states: u64) -> Self {
        let mut cfg = Self::new();
        cfg.max_states = max_states;
        cfg
    }

    pub fn max_states(&self) -> u64 {
        self.max_states
    }

    pub fn set_max_states(&mut self, max_states: u64) {
        self.max_states = max_states;
    }

    /// Overrides the element iteration order of the recursion; `order` must
    /// be a permutation of `0..n` for the group in use.
    pub fn set_move_order(&mut self, order: Option<Vec<usize>>) {
        self.move_order = order;
    }

    /// Number of distinct positions currently memoized.
    pub fn states_explored(&self) -> usize {
        self.memo.len()
    }

    /// The precomputed loose bound Σ_M 2^|M| for the current group.
    pub fn state_bound(&self) -> u128 {
        self.state_bound
    }

    /// (Re)binds the caches to `(g, game)`, rebuilding or clearing whatever a
    /// fingerprint mismatch invalidates.
    fn ensure(&mut self, g: &FiniteGroup, game: GameKind) -> Result<(), OracleError> {
        let stamp = g.fingerprint();
        if self.group_stamp != Some(stamp) {
            let subs = crate::lattice::all_subgroups(g)?;
            self.subgroups = subs.members().to_vec();
            self.sub_ids = self
                .subgroups
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i as u32))
                .collect();
            self.join.clear();
            self.memo.clear();
            self.state_bound = state_bound(g.order(), &self.subgroups);
            self.group_stamp = Some(stamp);
            self.game_stamp = Some(game);
        } else if self.game_stamp != Some(game) {
            self.memo.clear();
            self.game_stamp = Some(game);
        }
        Ok(())
    }

    fn check_cap(&self) -> Result<(), OracleError> {
        if self.state_bound > self.max_states as u128 {
            return Err(OracleError::StateCapExceeded {
                bound: self.state_bound,
                max_states: self.max_states,
            });
        }
        Ok(())
    }

    fn span_id_of(&self, span: &ElementSet) -> u32 {
        *self
            .sub_ids
            .get(span)
            .expect("closure of a subset is a subgroup of the enumerated lattice")
    }
}

/// Σ over maximal subgroups M of 2^|M| (saturating): every position of either
/// game is a subset of some maximal subgroup, so this bounds the reachable
/// state space from above.
fn state_bound(order: usize, subgroups: &[ElementSet]) -> u128 {
    let proper: Vec<&ElementSet> = subgroups.iter().filter(|s| s.len() < order).collect();
    let mut bound: u128 = 0;
    for m in &proper {
        let maximal = !proper
            .iter()
            .any(|t| m.len() < t.len() && m.is_subset(t));
        if maximal {
            let term = if m.len() >= 127 {
                u128::MAX
            } else {
                1u128 << m.len()
            };
            bound = bound.saturating_add(term);
        }
    }
    bound
}

struct Session<'a> {
    g: &'a FiniteGroup,
    game: GameKind,
    /// Candidate elements in iteration order.
    order: Vec<usize>,
    memo: &'a mut HashMap<ElementSet, MemoEntry>,
    subgroups: &'a [ElementSet],
    sub_ids: &'a HashMap<ElementSet, u32>,
    join: &'a mut HashMap<(u32, usize), u32>,
}

impl Session<'_> {
    /// Id of ⟨subgroups[span] ∪ {x}⟩, via the lazy join table.
    fn join_span(&mut self, span: u32, x: usize) -> u32 {
        if self.subgroups[span as usize].contains(x) {
            return span;
        }
        if let Some(&j) = self.join.get(&(span, x)) {
            return j;
        }
        let mut seed = self.subgroups[span as usize].clone();
        seed.insert(x);
        let joined = subgroup_generated(self.g, &seed);
        let id = *self
            .sub_ids
            .get(&joined)
            .expect("join of subgroups is in the enumerated lattice");
        self.join.insert((span, x), id);
        id
    }

    /// Memoized grundy of `pos` (which must not generate), with ⟨pos⟩ given
    /// as subgroup id `span`. `pos` is mutated in place during recursion and
    /// restored before returning.
    fn grundy(&mut self, pos: &mut ElementSet, span: u32) -> u32 {
        if let Some(entry) = self.memo.get(pos) {
            return entry.grundy;
        }
        let n = self.g.order();
        let mut child_values: Vec<u32> = Vec::new();
        for i in 0..self.order.len() {
            let x = self.order[i];
            if pos.contains(x) {
                continue;
            }
            let next_span = self.join_span(span, x);
            if self.subgroups[next_span as usize].len() == n {
                match self.game {
                    // Illegal in avoidance; instantly winning in achievement:
                    // the move ends the game, a terminal of value 0.
                    GameKind::Dng => continue,
                    GameKind::Gen => child_values.push(0),
                }
            } else {
                pos.insert(x);
                let v = self.grundy(pos, next_span);
                pos.remove(x);
                child_values.push(v);
            }
        }
        let value = mex(&child_values);
        self.memo.insert(
            pos.clone(),
            MemoEntry {
                grundy: value,
                span,
            },
        );
        value
    }
}

fn open_session<'a>(
    g: &'a FiniteGroup,
    game: GameKind,
    cfg: &'a mut OracleConfig,
) -> Session<'a> {
    let n = g.order();
    let order: Vec<usize> = match &cfg.move_order {
        Some(ord) => {
            let mut seen = vec![false; n];
            assert_eq!(ord.len(), n, "move order must be a permutation of 0..n");
            for &x in ord {
                assert!(x < n && !seen[x], "move order must be a permutation of 0..n");
                seen[x] = true;
            }
            ord.clone()
        }
        None => (0..n).collect(),
    };
    Session {
        g,
        game,
        order,
        memo: &mut cfg.memo,
        subgroups: &cfg.subgroups,
        sub_ids: &cfg.sub_ids,
        join: &mut cfg.join,
    }
}

/// Grundy value of position `p` by direct memoized recursion.
///
/// Avoidance: options are `P ∪ {x}` that still do not generate; a generating
/// `p` itself is [`OracleError::IllegalPosition`]. Achievement: every unchosen
/// element is an option, and a move that generates ends the game, acting as a
/// value-0 terminal — so a generating `p` has grundy 0 and the recursion only
/// ever expands non-generating positions.
pub fn grundy(
    g: &FiniteGroup,
    game: GameKind,
    p: &ElementSet,
    cfg: &mut OracleConfig,
) -> Result<u32, OracleError> {
    assert_eq!(p.universe(), g.order(), "position set from a different group");
    cfg.ensure(g, game)?;
    cfg.check_cap()?;
    // Trivial group: ⟨∅⟩ is already the whole group, so the generating-span
    // test below cannot tell "nothing chosen yet" from "game over". Play it
    // out directly: avoidance has no legal move from ∅ (grundy 0; a nonempty
    // avoidance position is illegal), achievement's one move generates at
    // once (mex{0} = 1 from ∅, 0 once the game is over).
    if g.order() == 1 {
        return match (game, p.is_empty()) {
            (GameKind::Dng, true) => Ok(0),
            (GameKind::Dng, false) => Err(OracleError::IllegalPosition),
            (GameKind::Gen, true) => Ok(1),
            (GameKind::Gen, false) => Ok(0),
        };
    }
    let span = subgroup_generated(g, p);
    if span.len() == g.order() {
        return match game {
            GameKind::Dng => Err(OracleError::IllegalPosition),
            GameKind::Gen => Ok(0),
        };
    }
    let span_id = cfg.span_id_of(&span);
    let mut pos = p.clone();
    let mut session = open_session(g, game, cfg);
    Ok(session.grundy(&mut pos, span_id))
}

/// Nim-value of the game from the empty position. For the trivial group this
/// degenerates to direct play: no legal avoidance move (value 0); the single
/// achievement move generates at once (value 1).
pub fn bruteforce_nim(
    g: &FiniteGroup,
    game: GameKind,
    cfg: &mut OracleConfig,
) -> Result<u32, OracleError> {
    grundy(g, game, &ElementSet::empty(g.order()), cfg)
}

/// Every position reachable in play from ∅ (the memoized set), with its
/// grundy value, in canonical set order (size, then bit pattern).
pub fn enumerate_labeled_positions(
    g: &FiniteGroup,
    game: GameKind,
    cfg: &mut OracleConfig,
) -> Result<Vec<(ElementSet, u32)>, OracleError> {
    let nim = bruteforce_nim(g, game, cfg)?;
    if g.order() == 1 {
        // Direct-play shortcut in `grundy` bypasses the memo.
        return Ok(vec![(ElementSet::empty(1), nim)]);
    }
    let mut rows: Vec<(ElementSet, u32)> = cfg
        .memo
        .iter()
        .map(|(pos, entry)| (pos.clone(), entry.grundy))
        .collect();
    rows.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(rows)
}

/// An engine move recommendation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BestMove {
    Element(usize),
    /// No legal move exists: the avoidance player to move has lost (or the
    /// achievement game is already over).
    NoMove,
}

/// The engine's move from position `p`: the lowest-index element whose
/// option has grundy 0 (a winning move) if any exists, otherwise the legal
/// element minimizing the option's grundy (lowest index on ties).
pub fn best_move(
    g: &FiniteGroup,
    game: GameKind,
    p: &ElementSet,
    cfg: &mut OracleConfig,
) -> Result<BestMove, OracleError> {
    assert_eq!(p.universe(), g.order(), "position set from a different group");
    cfg.ensure(g, game)?;
    cfg.check_cap()?;
    let n = g.order();
    if n == 1 {
        // Mirrors the direct-play shortcut in `grundy`.
        return match (game, p.is_empty()) {
            (GameKind::Dng, true) => Ok(BestMove::NoMove),
            (GameKind::Dng, false) => Err(OracleError::IllegalPosition),
            (GameKind::Gen, true) => Ok(BestMove::Element(0)),
            (GameKind::Gen, false) => Ok(BestMove::NoMove),
        };
    }
    let span = subgroup_generated(g, p);
    if span.len() == n {
        return match game {
            GameKind::Dng => Err(OracleError::IllegalPosition),
            GameKind::Gen => Ok(BestMove::NoMove), // game already over
        };
    }
    let span_id = cfg.span_id_of(&span);
    let mut pos = p.clone();
    let mut session = open_session(g, game, cfg);
    session.order = (0..n).collect(); // tie-break contract: ascending index
    let mut best: Option<(u32, usize)> = None;
    for x in 0..n {
        if pos.contains(x) {
            continue;
        }
        let next_span = session.join_span(span_id, x);
        let value = if session.subgroups[next_span as usize].len() == n {
            match game {
                GameKind::Dng => continue,
                GameKind::Gen => 0,
            }
        } else {
            pos.insert(x);
            let v = session.grundy(&mut pos, next_span);
            pos.remove(x);
            v
        };
        if value == 0 {
            return Ok(BestMove::Element(x)); // ascending scan ⇒ lowest index
        }
        if best.map_or(true, |(bv, _)| value < bv) {
            best = Some((value, x));
        }
    }
    Ok(match best {
        Some((_, x)) => BestMove::Element(x),
        None => BestMove::NoMove,
    })
}

/// A bucket where the class/parity invariant broke: two same-parity positions
/// of one structure class with different grundy values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityViolation {
    pub node_id: usize,
    pub parity: u8,
    pub first: (ElementSet, u32),
    pub second: (ElementSet, u32),
}

/// Outcome of [`verify_parity_invariant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityCheck {
    Consistent,
    Violation(ParityViolation),
}

impl ParityCheck {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ParityCheck::Consistent)
    }
}

/// Checks, by exhaustive play, that any two positions of the same structure
/// class and the same size parity have equal grundy values — the principle
/// the structure method's type triples rely on. Returns the first violating
/// pair (in canonical position order) if one exists.
pub fn verify_parity_invariant(
    g: &FiniteGroup,
    game: GameKind,
    fam: &IntersectionFamily,
    cfg: &mut OracleConfig,
) -> Result<ParityCheck, OracleError> {
    assert_eq!(fam.parent_order(), g.order(), "family from a different group");
    bruteforce_nim(g, game, cfg)?;
    let mut rows: Vec<(ElementSet, MemoEntry)> = cfg
        .memo
        .iter()
        .map(|(pos, entry)| (pos.clone(), *entry))
        .collect();
    rows.sort_by(|x, y| x.0.cmp(&y.0));

    // The class of P is the envelope of ⟨P⟩, which the memo already tracked
    // as a subgroup id; resolve each distinct span to its class node once.
    let mut env_cache: HashMap<u32, usize> = HashMap::new();
    let mut buckets: HashMap<(usize, u8), (ElementSet, u32)> = HashMap::new();
    for (pos, entry) in rows {
        let node_id = *env_cache.entry(entry.span).or_insert_with(|| {
            match envelope_of_subgroup(g, fam, &cfg.subgroups[entry.span as usize]) {
                Envelope::Member(id) => id,
                Envelope::WholeGroup => {
                    unreachable!("memoized positions never generate the whole group")
                }
            }
        });
        let parity = (pos.len() % 2) as u8;
        match buckets.get(&(node_id, parity)) {
            None => {
                buckets.insert((node_id, parity), (pos, entry.grundy));
            }
            Some((first_pos, first_val)) => {
                if *first_val != entry.grundy {
                    return Ok(ParityCheck::Violation(ParityViolation {
                        node_id,
                        parity,
                        first: (first_pos.clone(), *first_val),
                        second: (pos, entry.grundy),
                    }));
                }
            }
        }
    }
    Ok(ParityCheck::Consistent)
}
