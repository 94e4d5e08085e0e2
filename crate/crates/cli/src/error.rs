use std::fmt;

use infoeval_core::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Bad paths, malformed matrices, invalid flag values.
    Input,
    /// A result that should hold by construction did not.
    Invariant,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { kind: Kind::Input, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Self { kind: Kind::Invariant, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            Kind::Input => 1,
            Kind::Invariant => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. } | Error::MultipleCrossings { .. } | Error::NoSignChange { .. } => {
                CliError::invariant(e.to_string())
            }
            _ => CliError::input(e.to_string()),
        }
    }
}
