//! Command-line front end: flag and config-file handling, and the
//! subcommands that write CSV tables or JSON reports.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{execute, run};
pub use config::{Cli, RunConfig};
