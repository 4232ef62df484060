//! The interactive game loop: two seats (human or engine), strict legality
//! checking with re-prompts, win announcements under the normal play
//! convention, and a printed transcript.

use crate::error::CliError;
use gengame_core::{
    best_move, bruteforce_nim, subgroup_generated, BestMove, ElementSet, FiniteGroup, GameKind,
    OracleConfig,
};
use std::io::{BufRead, Write};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Opponent {
    Engine,
    Human,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayOutcome {
    pub winner: String,
    pub moves: Vec<String>,
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Validation(format!("terminal i/o failed: {e}"))
}

fn render_set(g: &FiniteGroup, s: &ElementSet) -> String {
    let labels: Vec<&str> = s.iter().map(|x| g.label(x)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn legal_moves(g: &FiniteGroup, game: GameKind, chosen: &ElementSet) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .filter(|&x| !chosen.contains(x))
        .filter(|&x| match game {
            GameKind::Gen => true,
            GameKind::Dng => {
                let mut next = chosen.clone();
                next.insert(x);
                (subgroup_generated(g, &next).len() as usize) < n
            }
        })
        .collect()
}

fn labels_of(g: &FiniteGroup, xs: &[usize]) -> String {
    xs.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(" ")
}

/// Ask one human for a move until a legal one arrives.
fn prompt_move<R: BufRead, W: Write>(
    g: &FiniteGroup,
    game: GameKind,
    chosen: &ElementSet,
    legal: &[usize],
    name: &str,
    input: &mut R,
    out: &mut W,
) -> Result<usize, CliError> {
    loop {
        write!(out, "{name}> ").map_err(io_err)?;
        out.flush().map_err(io_err)?;
        let mut line = String::new();
        if input.read_line(&mut line).map_err(io_err)? == 0 {
            return Err(CliError::Usage("input ended before the game finished".into()));
        }
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        let Some(x) = g.element_by_label(token) else {
            writeln!(out, "no element is labeled {token:?}; legal moves: {}", labels_of(g, legal))
                .map_err(io_err)?;
            continue;
        };
        if legal.contains(&x) {
            return Ok(x);
        }
        let reason = if chosen.contains(x) {
            "it was already chosen".to_string()
        } else if game == GameKind::Dng {
            "it would make the chosen set generate the whole group".to_string()
        } else {
            "it is not available".to_string()
        };
        writeln!(
            out,
            "illegal move {token}: {reason}; legal moves: {}",
            labels_of(g, legal)
        )
        .map_err(io_err)?;
    }
}

/// Run one complete game. With an engine seat, the game is solved up front:
/// the state-cap guard then refuses oversized groups before any interaction,
/// and every later engine move is a memo lookup.
pub fn run_play<R: BufRead, W: Write>(
    g: &FiniteGroup,
    game: GameKind,
    vs: Opponent,
    engine_first: bool,
    max_states: u64,
    input: &mut R,
    out: &mut W,
) -> Result<PlayOutcome, CliError> {
    let n = g.order();
    let seats: [(bool, &str); 2] = match vs {
        Opponent::Engine if engine_first => [(true, "Engine"), (false, "You")],
        Opponent::Engine => [(false, "You"), (true, "Engine")],
        Opponent::Human => [(false, "Player 1"), (false, "Player 2")],
    };
    let mut cfg = OracleConfig::with_max_states(max_states);
    if seats.iter().any(|&(is_engine, _)| is_engine) {
        bruteforce_nim(g, game, &mut cfg)?;
    }
    let rules = match game {
        GameKind::Dng => {
            "the chosen set must never generate the whole group; a player with no legal move loses"
        }
        GameKind::Gen => "whoever first makes the chosen set generate the whole group wins",
    };
    writeln!(out, "{} on {} — {}.", game, g.name(), rules).map_err(io_err)?;
    writeln!(out, "{} moves first.", seats[0].1).map_err(io_err)?;

    let mut chosen = ElementSet::empty(n);
    let mut moves: Vec<String> = Vec::new();
    let mut turn = 0usize;
    let winner;
    loop {
        let (is_engine, name) = seats[turn % 2];
        let legal = legal_moves(g, game, &chosen);
        if legal.is_empty() {
            // Only the avoidance game can strand a player: in the achievement
            // game the full set generates, so the game ends on a move below.
            writeln!(out, "Position: {}", render_set(g, &chosen)).map_err(io_err)?;
            writeln!(out, "{name} has no legal move.").map_err(io_err)?;
            winner = seats[(turn + 1) % 2].1;
            break;
        }
        writeln!(
            out,
            "Position: {}  (legal for {name}: {})",
            render_set(g, &chosen),
            labels_of(g, &legal)
        )
        .map_err(io_err)?;
        let x = if is_engine {
            match best_move(g, game, &chosen, &mut cfg)? {
                BestMove::Element(x) => x,
                BestMove::NoMove => {
                    return Err(CliError::Validation(
                        "engine found no move in a live position".into(),
                    ))
                }
            }
        } else {
            prompt_move(g, game, &chosen, &legal, name, input, out)?
        };
        writeln!(out, "{name} plays {}.", g.label(x)).map_err(io_err)?;
        chosen.insert(x);
        moves.push(g.label(x).to_string());
        if game == GameKind::Gen && (subgroup_generated(g, &chosen).len() as usize) == n {
            writeln!(out, "{} generates the whole group.", render_set(g, &chosen))
                .map_err(io_err)?;
            winner = name;
            break;
        }
        turn += 1;
    }
    writeln!(out, "{winner} wins.").map_err(io_err)?;
    let transcript = if moves.is_empty() { "(none)".to_string() } else { moves.join(" ") };
    writeln!(out, "Moves played: {transcript}").map_err(io_err)?;
    Ok(PlayOutcome { winner: winner.to_string(), moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gengame_core::{build_group, GroupSpec, DEFAULT_MAX_STATES};
    use std::io::Cursor;

    fn play(
        spec: GroupSpec,
        game: GameKind,
        vs: Opponent,
        engine_first: bool,
        script: &str,
    ) -> (Result<PlayOutcome, CliError>, String) {
        let g = build_group(&spec).unwrap();
        let mut input = Cursor::new(script.as_bytes().to_vec());
        let mut out: Vec<u8> = Vec::new();
        let res = run_play(&g, game, vs, engine_first, DEFAULT_MAX_STATES, &mut input, &mut out);
        (res, String::from_utf8(out).unwrap())
    }

    #[test]
    fn engine_wins_achievement_on_z5_in_one_move() {
        let (res, text) = play(GroupSpec::Cyclic(5), GameKind::Gen, Opponent::Engine, true, "");
        let outcome = res.unwrap();
        assert_eq!(outcome.winner, "Engine");
        assert_eq!(outcome.moves, vec!["1"]);
        assert!(text.contains("generates the whole group"), "{text}");
    }

    #[test]
    fn engine_strands_the_human_in_avoidance_on_z7() {
        let (res, text) = play(GroupSpec::Cyclic(7), GameKind::Dng, Opponent::Engine, true, "");
        let outcome = res.unwrap();
        assert_eq!(outcome.winner, "Engine");
        assert_eq!(outcome.moves, vec!["0"]);
        assert!(text.contains("You has no legal move."), "{text}");
    }

    #[test]
    fn hotseat_avoidance_on_z6_plays_to_the_scripted_end() {
        let (res, text) =
            play(GroupSpec::Cyclic(6), GameKind::Dng, Opponent::Human, false, "3\n0\n");
        let outcome = res.unwrap();
        assert_eq!(outcome.winner, "Player 2");
        assert_eq!(outcome.moves, vec!["3", "0"]);
        assert!(text.contains("Player 1 has no legal move."), "{text}");
    }

    #[test]
    fn illegal_and_unknown_moves_are_reprompted() {
        // 1 would generate Z6 at once (illegal), "bogus" is no label; then a
        // legal game: human 2, engine answers 0, human 4 strands the engine.
        let (res, text) =
            play(GroupSpec::Cyclic(6), GameKind::Dng, Opponent::Engine, false, "1\nbogus\n2\n4\n");
        let outcome = res.unwrap();
        assert_eq!(outcome.winner, "You");
        assert_eq!(outcome.moves, vec!["2", "0", "4"]);
        assert!(text.contains("illegal move 1"), "{text}");
        assert!(text.contains("no element is labeled \"bogus\""), "{text}");
    }

    #[test]
    fn losing_engine_resists_with_minimal_values() {
        // From {2} every engine reply loses; it must still pick the
        // lowest-index minimal-value move, 0.
        let (res, _) =
            play(GroupSpec::Cyclic(6), GameKind::Dng, Opponent::Engine, false, "2\n4\n");
        assert_eq!(res.unwrap().moves, vec!["2", "0", "4"]);
    }

    #[test]
    fn trivial_group_avoidance_strands_the_first_player() {
        let (res, _) = play(GroupSpec::Cyclic(1), GameKind::Dng, Opponent::Human, false, "");
        let outcome = res.unwrap();
        assert_eq!(outcome.winner, "Player 2");
        assert!(outcome.moves.is_empty());
    }

    #[test]
    fn trivial_group_achievement_is_won_by_the_first_move() {
        let (res, _) = play(GroupSpec::Cyclic(1), GameKind::Gen, Opponent::Engine, true, "");
        let outcome = res.unwrap();
        assert_eq!(outcome.winner, "Engine");
        assert_eq!(outcome.moves, vec!["0"]);
    }

    #[test]
    fn oversized_group_is_refused_before_any_interaction() {
        let (res, text) = play(
            GroupSpec::Frobenius { p: 13, r: None },
            GameKind::Dng,
            Opponent::Engine,
            true,
            "",
        );
        match res {
            Err(CliError::Resource(_)) => {}
            other => panic!("expected a resource refusal, got {other:?}"),
        }
        assert!(text.is_empty(), "refusal must precede any output: {text}");
    }

    #[test]
    fn input_ending_mid_game_is_a_clean_error() {
        let (res, _) = play(GroupSpec::Cyclic(6), GameKind::Dng, Opponent::Human, false, "3\n");
        match res {
            Err(CliError::Usage(msg)) => assert!(msg.contains("input ended"), "{msg}"),
            other => panic!("expected a usage error, got {other:?}"),
        }
    }
}
