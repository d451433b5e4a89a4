//! Command-line front end and file formats for `jtable-core`.
//!
//! [`schema`] holds the serde documents behind every JSON output, [`render`]
//! turns core values into pretty, TSV or JSON text and [`cli`] parses
//! arguments and maps results to exit codes.

pub mod cli;
pub mod render;
pub mod schema;

pub use cli::{run, Cli, Outcome};
pub use render::Format;
