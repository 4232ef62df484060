//! Command-line surface for the generating-game solvers.
//!
//! Everything the `gengame` binary does lives here as ordinary library
//! functions that return their stdout text, so integration tests can assert
//! on byte-identical output without spawning processes:
//!
//! - [`textspec`] — the `cyclic:6` / `frobenius:13` group-spec mini-language;
//! - [`report`] — serializable analysis reports with a stable field order;
//! - [`dot`] — DOT export of structure digraphs;
//! - [`commands`] — the `analyze`, `compare`, `batch` subcommands;
//! - [`play`] — the interactive game loop behind `play`.

pub mod commands;
pub mod dot;
pub mod error;
pub mod play;
pub mod report;
pub mod textspec;

pub use error::CliError;
