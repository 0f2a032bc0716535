//! Front end for the `jactype` analyses: problem files, JSON reports,
//! the bundled example corpus and parameter sweeps.

pub mod commands;
pub mod corpus;
pub mod problem;
pub mod report;
pub mod run;
pub mod sweep;

use std::fmt;

pub use corpus::{Corpus, CorpusEntry, EntryOutcome, Expectations};
pub use problem::{Check, ProblemSpec};
pub use report::{ReportDocument, SCHEMA_VERSION};
pub use run::{analyze_spec, Analysis};
pub use sweep::{Point, SweepRow};

/// Bad input from the user: malformed files, flags or expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    /// A theorem-backed consistency check failed.
    CheckFailed = 2,
    /// A computation failed or a corpus expectation was not met.
    Failure = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(err: &anyhow::Error) -> Exit {
        if err.downcast_ref::<UsageError>().is_some() {
            return Exit::Usage;
        }
        match err.downcast_ref::<jactype::Error>() {
            Some(jactype::Error::Usage(_) | jactype::Error::Parse(_)) => Exit::Usage,
            _ => Exit::Failure,
        }
    }

    /// The worse of two outcomes.
    pub fn max(self, other: Exit) -> Exit {
        fn rank(e: Exit) -> u8 {
            match e {
                Exit::Success => 0,
                Exit::CheckFailed => 1,
                Exit::Failure => 2,
                Exit::Usage => 3,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}
