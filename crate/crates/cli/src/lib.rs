//! The `qfmin` command-line tool: JSON problem files in, JSON results out.
//!
//! Problem files hold `t`, `a`, `b` as nested arrays (entries are numbers or
//! `[re, im]` pairs) and an optional `tol` object.

pub mod commands;
pub mod document;
pub mod num;
pub mod problem;

pub use commands::{run, Cli, Command};

use qfmin_core::Error;

/// Exit status for a failed command. Infeasible constraints give 2, a form
/// of the wrong definiteness gives 3, anything else 1.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Infeasible { .. } | Error::InfeasibleOnComplement { .. }) => 2,
        Some(
            Error::NotPositive { .. }
            | Error::NotPsd { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::NotSingular,
        ) => 3,
        _ => 1,
    }
}
