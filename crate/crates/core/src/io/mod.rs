//! Configuration, file formats, figures and the subcommand drivers.

pub mod commands;
pub mod config;
pub mod svg;
pub mod table;

pub use commands::{run, Outcome};
pub use config::{Command, Format, RunConfig};
pub use svg::{Layer, PlotKind, PlotSpec};
