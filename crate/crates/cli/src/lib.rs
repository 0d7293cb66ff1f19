//! Command-line front end: JSON inputs, reports, and the golden-example replay.

pub mod commands;
pub mod error;
pub mod golden;

pub use commands::{read_input, Output};
pub use error::CliError;
