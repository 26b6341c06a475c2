use std::fmt;

/// Exit status classes: verdict failures exit 1, input problems exit 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Usage,
    /// A checked claim did not hold while computing a result.
    Failure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl CliError {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Parse, line: Some(line), column: Some(column), message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Usage, line: None, column: None, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Failure => 1,
            ErrorKind::Parse | ErrorKind::Usage => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "line {l}, column {c}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<tensemv::Error> for CliError {
    fn from(e: tensemv::Error) -> Self {
        use tensemv::Error as E;
        match e {
            E::TermSyntax { column, message } => {
                CliError { kind: ErrorKind::Parse, line: Some(1), column: Some(column), message }
            }
            E::InvariantViolation(m) => CliError { kind: ErrorKind::Failure, line: None, column: None, message: m },
            other => CliError::usage(other.to_string()),
        }
    }
}
