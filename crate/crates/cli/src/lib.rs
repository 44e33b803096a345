//! Command-line front end for `awin-core`: JSON document formats, the `awin`
//! subcommands and SVG rendering.

pub mod app;
pub mod format;
pub mod render;

pub use app::run;
