//! Command-line front end for the `geoball` eigenvalue bounds.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod literal;
pub mod render;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use error::CliError;
