//! Std companion to `spaceform-core`: JSON formats, a parallel trial runner
//! and the `spaceform` command-line tool.

#![deny(missing_docs)]

pub mod cli;
mod error;
pub mod format;
pub mod runner;

pub use error::{Error, Result};
