//! Command-line front end for `pigeon-core`: JSON, DIMACS and LP formats,
//! fixture generators and the `pigeon` subcommands.

pub mod commands;
pub mod formats;
pub mod gen;

pub use commands::{run, Cli};
