//! Process exit codes and the error type that carries them.
//!
//! The contract is stable: 0 success, 1 usage, 2 I/O, 3 parse,
//! 4 verification failure.

use std::fmt;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { code: EXIT_IO, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    pub fn verify(message: impl Into<String>) -> Self {
        CliError { code: EXIT_VERIFY, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<cfml_core::Error> for CliError {
    fn from(e: cfml_core::Error) -> Self {
        match e {
            // bad flag values surface from the library as argument errors
            cfml_core::Error::Argument(_) | cfml_core::Error::Overflow => {
                CliError::usage(e.to_string())
            }
            cfml_core::Error::Data(_) => CliError::parse(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}
