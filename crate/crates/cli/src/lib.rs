//! Command implementations behind the `fea2vr` binary.
//!
//! Every failure is a [`Failure`]: an exit status plus a one-line message.
//! Status 2 means an input could not be read or decoded, status 1 means the
//! input was read but the conversion or check failed.

use std::fmt;
use std::fs;
use std::path::Path;

use fea2vr_core::{read_vrmesh_lenient, read_vrmesh_slice, LoadedMesh};

pub mod convert;
pub mod output;
pub mod serve;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn unreadable(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn cannot_read(what: &str, path: &Path, err: impl fmt::Display) -> Self {
        Failure::unreadable(format!("cannot read {what} '{}': {err}", path.display()))
    }
}

impl From<fea2vr_core::Error> for Failure {
    fn from(err: fea2vr_core::Error) -> Self {
        Failure::failed(err.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = self.message.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "error: {line}")
    }
}

impl std::error::Error for Failure {}

/// Read a vrmesh file. `lenient` defers index and coordinate checks to
/// `validate`.
pub fn load_document(path: &Path, lenient: bool) -> Result<LoadedMesh, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::cannot_read("mesh", path, e))?;
    let read = if lenient { read_vrmesh_lenient } else { read_vrmesh_slice };
    read(&bytes).map_err(|e| Failure::cannot_read("mesh", path, e))
}
