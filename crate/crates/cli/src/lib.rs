//! Command-line front end for `cpt-core`: JSON matrix documents, the
//! subcommands, and CSV parameter scans.

pub mod args;
pub mod commands;
pub mod document;
pub mod error;
pub mod inputs;
pub mod scan;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;
