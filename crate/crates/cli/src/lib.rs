//! Library side of the `orbigerbe` command-line tool: the workspace document,
//! the built-in fixtures and one function per subcommand.

pub mod commands;
pub mod error;
pub mod standard;
pub mod workspace;

pub use commands::Report;
pub use error::{CliError, CliResult};
pub use standard::standard_workspace;
pub use workspace::Workspace;
