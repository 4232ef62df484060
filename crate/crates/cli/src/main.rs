//! `gengame` — nim-values of the generating games on finite groups.

use clap::{Parser, Subcommand};
use gengame_cli::commands::{cmd_analyze, cmd_batch, cmd_compare, cmd_play, GameChoice};
use gengame_cli::play::Opponent;
use gengame_cli::textspec::{family_note, parse_group_spec};
use gengame_cli::CliError;
use gengame_core::GameKind;
use std::path::PathBuf;
use std::process::ExitCode;

const LONG_ABOUT: &str = "\
Computes nim-values of two impartial games played on a finite group, where the
players alternately pick previously unchosen elements: in the achievement game
(gen) the player whose pick first makes the chosen set generate the whole group
wins; in the avoidance game (dng) picks that would make the set generate are
forbidden, and the player left without a legal move loses.

Two engines are available: a structure method that works on classes of
positions indexed by intersections of maximal subgroups, and a brute-force
oracle that walks every labeled position. The oracle refuses groups whose
state-space bound exceeds a cap; override the default with --max-states where
the flag exists, or with the GENGAME_MAX_STATES environment variable.

Spelling note: the avoidance game is spelled 'dng' here. The transposed
spelling 'dgn' also circulates for the same game; it is deliberately not
accepted, so that invocations stay unambiguous.

Group specs: cyclic:N dihedral:N q8 heisenberg:P frobenius:P[:R]
semidirect:M:K:A product:<spec>,<spec> file:PATH";

fn parse_game_choice(s: &str) -> Result<GameChoice, String> {
    match s {
        "dng" => Ok(GameChoice::Dng),
        "gen" => Ok(GameChoice::Gen),
        "both" => Ok(GameChoice::Both),
        "dgn" => Err("the avoidance game is spelled 'dng' (the transposed 'dgn' names the \
                      same game and is deliberately not accepted)"
            .into()),
        other => Err(format!("unknown game {other:?} (expected dng, gen, or both)")),
    }
}

fn parse_single_game(s: &str) -> Result<GameKind, String> {
    match parse_game_choice(s)? {
        GameChoice::Dng => Ok(GameKind::Dng),
        GameChoice::Gen => Ok(GameKind::Gen),
        GameChoice::Both => Err("play needs a single game: pass dng or gen".into()),
    }
}

fn parse_vs(s: &str) -> Result<Opponent, String> {
    match s {
        "engine" => Ok(Opponent::Engine),
        "human" => Ok(Opponent::Human),
        other => Err(format!("unknown opponent {other:?} (expected engine or human)")),
    }
}

#[derive(Parser)]
#[command(name = "gengame", version, about = "Nim-values of the generating games on finite groups", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the game(s) with the structure method and print the class digraph
    Analyze {
        /// Group spec, e.g. cyclic:6, q8, frobenius:13, product:cyclic:2,cyclic:4
        spec: String,
        /// Which game: dng, gen, or both
        #[arg(long, value_parser = parse_game_choice, default_value = "both")]
        game: GameChoice,
        /// Write the structure digraph in DOT format (needs a single --game)
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Write the analysis report(s) as JSON
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Also list the simplified digraph's classes; --dot then exports it
        #[arg(long)]
        simplified: bool,
    },
    /// Run the structure method and the brute-force oracle, and compare
    Compare {
        /// Group spec, e.g. cyclic:6, q8, frobenius:13
        spec: String,
        /// Which game: dng, gen, or both
        #[arg(long, value_parser = parse_game_choice, default_value = "both")]
        game: GameChoice,
        /// Oracle state cap (default: GENGAME_MAX_STATES or the built-in cap)
        #[arg(long, value_name = "N")]
        max_states: Option<u64>,
    },
    /// Tabulate nim-values over a family of groups
    Batch {
        /// Family: 'frobenius' (with --p-list) or 'corpus:small'
        family: String,
        /// Comma-separated primes for the frobenius family, e.g. 5,7,11
        #[arg(long, value_name = "LIST")]
        p_list: Option<String>,
        /// Which game: dng, gen, or both
        #[arg(long, value_parser = parse_game_choice, default_value = "both")]
        game: GameChoice,
        /// Write the table as a JSON array
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Play a game interactively against the engine or another person
    Play {
        /// Group spec, e.g. cyclic:6, dihedral:4
        spec: String,
        /// Which game: dng or gen
        #[arg(long, value_parser = parse_single_game)]
        game: GameKind,
        /// Opponent: engine (default) or human hot-seat
        #[arg(long, value_parser = parse_vs, default_value = "engine")]
        vs: Opponent,
        /// Let the engine move first (engine mode only)
        #[arg(long)]
        engine_first: bool,
        /// Oracle state cap for the engine (default: GENGAME_MAX_STATES or the built-in cap)
        #[arg(long, value_name = "N")]
        max_states: Option<u64>,
    },
}

/// Prints any advisory note about the requested family to standard error, so
/// standard output stays byte-identical across runs.
fn print_family_note(spec_text: &str) {
    if let Ok(spec) = parse_group_spec(spec_text) {
        if let Some(note) = family_note(&spec) {
            eprintln!("{note}");
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze { spec, game, dot, json, simplified } => {
            print_family_note(&spec);
            let out = cmd_analyze(&spec, game, dot.as_deref(), json.as_deref(), simplified)?;
            print!("{}", out.text);
            Ok(0)
        }
        Command::Compare { spec, game, max_states } => {
            print_family_note(&spec);
            let out = cmd_compare(&spec, game, max_states)?;
            print!("{}", out.text);
            Ok(out.exit as u8)
        }
        Command::Batch { family, p_list, game, json } => {
            let out = cmd_batch(&family, p_list.as_deref(), game, json.as_deref())?;
            print!("{}", out.text);
            Ok(0)
        }
        Command::Play { spec, game, vs, engine_first, max_states } => {
            print_family_note(&spec);
            let stdin = std::io::stdin();
            let stdout = std::io::stdout();
            let mut input = stdin.lock();
            let mut out = stdout.lock();
            cmd_play(&spec, game, vs, engine_first, max_states, &mut input, &mut out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
