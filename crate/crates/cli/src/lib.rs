//! Command-line front end for the `nullcone` engine.
//!
//! Every command produces one [`OutputRecord`]; `--json` prints it
//! as-is and the default output renders a table from it.

pub mod commands;
pub mod record;
pub mod render;

pub use commands::{run, Cli, CliError, Command};
pub use record::OutputRecord;
pub use render::{render_human, render_json};
