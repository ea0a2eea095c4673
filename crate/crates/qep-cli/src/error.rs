use std::fmt;

use qep::bracket::BracketError;
use qep::derived::DerivedError;
use qep::diagram::DiagramError;
use qep::statesum::StateSumError;

/// A failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Verification failed (exit 1).
    Failed(String),
    /// Unreadable or malformed input (exit 2).
    Input(String),
    /// A size limit was hit (exit 3).
    Limit(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) | CliError::Input(m) | CliError::Limit(m) => write!(f, "{m}"),
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StateSumError> for CliError {
    fn from(e: StateSumError) -> Self {
        match e {
            StateSumError::TooManyCrossings { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DerivedError> for CliError {
    fn from(e: DerivedError) -> Self {
        match e {
            DerivedError::StateSum(s) => s.into(),
            DerivedError::TooManyCrossings { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<BracketError> for CliError {
    fn from(e: BracketError) -> Self {
        match e {
            BracketError::TooLarge(_) => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
