//! File formats, egg-box DOT output, verification suites and the command-line
//! front end for `diagmon-core`.

pub mod cli;
pub mod dot;
pub mod format;
pub mod suite;

use std::io::Write;
use std::path::Path;

pub use diagmon_core as core;

/// Environment variable holding the worker count; unset means one thread.
pub const WORKERS_ENV: &str = "DIAGMON_WORKERS";

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] diagmon_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Failed(String),
}

impl Error {
    /// 1 for failures, 2 for usage errors, 3 when a size cap is hit.
    pub fn exit_code(&self) -> i32 {
        use diagmon_core::Error as C;
        match self {
            Error::Core(C::CapExceeded { .. } | C::DegreeTooLarge { .. }) => 3,
            Error::Core(C::UnknownName(_) | C::InvalidSemilattice(_)) | Error::Usage(_) | Error::Format(_) => 2,
            Error::Core(_) | Error::Io { .. } | Error::Failed(_) => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.display().to_string(), source }
}

/// Writes through a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(contents).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

pub fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(io_err(path))
}

/// Worker count from [`WORKERS_ENV`], defaulting to 1.
pub fn worker_count() -> Result<usize, Error> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::Usage(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}
