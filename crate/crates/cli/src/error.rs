use std::fmt;

/// Exit code for rejected input: bad density matrix, circuit, figure or flags.
pub const EXIT_INVALID: i32 = 2;
/// Exit code for filesystem failures.
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<mixstate::Error> for CliError {
    fn from(e: mixstate::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}
