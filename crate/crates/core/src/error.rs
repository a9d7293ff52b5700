use thiserror::Error;

/// Errors raised by the workbench. Each variant maps to a stable reason code
/// and a process exit code used by the CLI.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input (bad indices, bad files, lying teachers).
    #[error("input error: {0}")]
    Input(String),

    /// Line-numbered parse failure in a `.hc` or `.pref` file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A search or enumeration would exceed its configured budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An operation was applied outside its mathematical domain
    /// (empty version space, target outside the version space, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A preference function was used with a class it is not bound to.
    #[error("binding error: {0}")]
    Binding(String),

    /// A construction's precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub fn reason_code(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Parse { .. } => "parse",
            Error::Resource(_) => "resource",
            Error::Domain(_) => "domain",
            Error::Binding(_) => "binding",
            Error::Precondition(_) => "precondition",
        }
    }

    /// 2 for anything caused by bad input, 3 for resource exhaustion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
