//! Configuration files, result tables and the `omm` command line.

pub mod app;
pub mod config;
pub mod presets;
pub mod table;

pub use config::{parse_config, serialize_config, ConfigDocument, ConfigError};
pub use table::{Format, Table};
