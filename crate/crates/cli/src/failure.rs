//! Exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O error |
//! | 2 | parse or usage error |
//! | 3 | invalid figure or realization |
//! | 4 | verification failure |
//! | 5 | sentence cannot be emitted |
//! | 6 | solver failure |

use std::path::Path;

use convcode_core::Error;

pub const IO: u8 = 1;
pub const PARSE: u8 = 2;
pub const INVALID_FIGURE: u8 = 3;
pub const VERIFICATION: u8 = 4;
pub const EMIT: u8 = 5;
pub const SOLVER: u8 = 6;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn io(path: &Path, e: std::io::Error) -> Failure {
        Failure {
            code: IO,
            message: format!("{}: {e}", path.display()),
        }
    }

    pub fn usage(message: &str) -> Failure {
        Failure {
            code: PARSE,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Io(_) => IO,
            Error::Parse(_) | Error::InvalidArgument(_) => PARSE,
            Error::InvalidFigure(_)
            | Error::InvalidRealization(_)
            | Error::Oversize { .. }
            | Error::DegenerateSet { .. } => INVALID_FIGURE,
            Error::MissingEmptyWord | Error::InvalidHalfplaneCount(_) => EMIT,
            Error::Solver(_) => SOLVER,
            Error::Verification(_)
            | Error::DisconnectedArc { .. }
            | Error::Boundary(_)
            | Error::Neighborhood(_)
            | Error::InvalidPull(_)
            | Error::PullFailed { .. } => VERIFICATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}
