//! Library side of the `rule150` command-line tool.

pub mod check;
pub mod commands;
pub mod xspec;

pub use check::{run_suite, CheckCase, CheckReport, Status};

/// Exit code for a failing check suite.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code for usage, parse, domain and resource errors.
pub const EXIT_USAGE: i32 = 2;
