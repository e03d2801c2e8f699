//! File formats, parallel execution and the `oscsolve` command line on top of
//! `oscsolve-core`.

pub mod cli;
pub mod error;
pub mod exec;
pub mod formats;
pub mod record;
pub mod trace;

pub use error::{Result, ShellError};
