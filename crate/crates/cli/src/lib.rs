//! Command-line front end: JSON system configurations and the `crclist` commands.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::{run, Cli};
pub use config::{SystemConfig, PRESETS, SCHEMA};
pub use error::CliError;
