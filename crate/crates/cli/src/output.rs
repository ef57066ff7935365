//! Shared output plumbing: error-to-exit-code mapping, float formatting,
//! and report emission.

use std::fmt;
use std::io::Write;
use std::path::Path;

/// Command-level failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad ranges, malformed grids, unwritable paths: exit 2.
    Usage(String),
    /// A verification check failed: exit 1.
    CheckFailed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::CheckFailed(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::CheckFailed(_) => 1,
        }
    }
}

impl From<ppsim_core::Error> for CliError {
    fn from(err: ppsim_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// 17 significant digits: enough to round-trip any f64 through text.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Print to stdout or write to the given file.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
    }
}

/// Render a serializable report as pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
