//! File formats, parameter sweeps and the command-line front end for
//! `hypernoise-core`.

pub mod cli;
pub mod format;
pub mod sweep;

pub use cli::run;
