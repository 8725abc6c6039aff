use std::fmt;

/// Failure classes, one per process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Usage(String),
    Io(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vacnoise::Error> for CliError {
    fn from(e: vacnoise::Error) -> Self {
        use vacnoise::Error as E;
        match e {
            E::Quadrature { .. } | E::Resonance { .. } | E::EddingtonPole => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
