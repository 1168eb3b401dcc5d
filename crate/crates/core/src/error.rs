//! Error taxonomy shared by the library and the command-line tool.
//!
//! The variants are grouped by who is at fault:
//! * [`Error::Input`], [`Error::Parse`] — the caller handed us something
//!   malformed or out of contract (bad graph file, invalid partition shape).
//! * [`Error::Budget`] — the instance is valid but too large for the exact
//!   search budgets; nothing was computed.
//! * [`Error::Contract`] — an internal structural guarantee the algorithms
//!   rely on was violated mid-run. This indicates either input outside the
//!   documented hypotheses or a bug, and the message says which check failed.
//! * [`Error::Internal`], [`Error::Certification`] — a result was produced
//!   but failed its own re-verification, or a search that must succeed under
//!   the stated hypotheses came back empty.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input: {0}")]
    Input(String),

    /// A graph file failed to parse; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Instance exceeds an exact-search budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A structural invariant the procedure depends on does not hold.
    #[error("contract violated: {0}")]
    Contract(String),

    /// An impossible state was reached; always a bug if the input was valid.
    #[error("internal error: {0}")]
    Internal(String),

    /// A computed result failed independent re-verification.
    #[error("certification failed: {0}")]
    Certification(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
