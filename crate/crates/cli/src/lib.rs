//! Sweep runner and Monte Carlo validation front end for `rfvlc-core`.

pub mod config;
pub mod error;
pub mod explain;
pub mod presets;
pub mod sweep;
pub mod validate;

pub use config::{Layers, Params};
pub use error::CliError;
pub use sweep::{Outputs, SweepSpec, SweepVar, Table};
