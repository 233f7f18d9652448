use std::fmt;
use std::path::{Path, PathBuf};

use energy_lab::Category;

/// Failures of a command, each tied to an exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(energy_lab::Error),
    Io {
        path: PathBuf,
        message: String,
    },
    /// A plotted field is absent from a record or unusable.
    Field {
        field: String,
        line: usize,
        problem: &'static str,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e.category() {
                Category::Usage => 2,
                Category::Domain => 3,
                Category::Io => 4,
            },
            CliError::Io { .. } | CliError::Field { .. } => 4,
        }
    }

    pub fn io(path: &Path, e: impl fmt::Display) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            CliError::Field {
                field,
                line,
                problem,
            } => {
                write!(f, "record on line {line}: field {field:?} {problem}")
            }
        }
    }
}

impl From<energy_lab::Error> for CliError {
    fn from(e: energy_lab::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
