//! File formats, reports and the command line for `twkit-core`.
//!
//! * [`json`]: value conventions (exact rationals as strings, floats with
//!   17 significant digits).
//! * [`formats`]: model, hydrodynamic model and system documents, CSV.
//! * [`reports`]: the JSON documents written by each command.
//! * [`cli`]: argument parsing and dispatch.

pub mod cli;
pub mod formats;
pub mod json;
pub mod reports;

pub use cli::run;
