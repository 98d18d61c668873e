//! Command-line front end and definition-file format for `braidkit-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod load;
