//! Standard-library companion to `padicwave-core`: JSON and CSV formats, seeded
//! verification campaigns and the `padicwave` command-line tool.

pub mod campaign;
pub mod cli;
pub mod config;
pub mod dto;
pub mod error;
pub mod report;

pub use error::{exit, CliError};
pub use padicwave_core as core;
