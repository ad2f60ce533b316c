//! Command-line front end: the structure-spec language and the subcommands
//! built on top of the `multitori` library.

pub mod commands;
pub mod dsl;

pub use commands::{run, CliError};
pub use dsl::{parse, ParseError, ParseErrorKind, StructureSpec};
