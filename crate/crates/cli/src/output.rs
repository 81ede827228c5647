//! Atomic file output.
//!
//! Every file is first written to a temporary sibling and renamed over the
//! target only once all files of a command have been written, so a failed
//! run never leaves a partial or half-updated output behind.

use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::Failure;

#[derive(Default)]
pub struct OutputSet {
    staged: Vec<(NamedTempFile, PathBuf)>,
}

impl OutputSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stage(&mut self, path: &Path, bytes: &[u8]) -> Result<(), Failure> {
        let cannot = |e: std::io::Error| {
            Failure::failed(format!("cannot write '{}': {e}", path.display()))
        };
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut builder = tempfile::Builder::new();
        builder.prefix(".fea2vr-").suffix(".tmp");
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            builder.permissions(std::fs::Permissions::from_mode(0o644));
        }
        let mut file = builder.tempfile_in(dir).map_err(cannot)?;
        file.write_all(bytes).map_err(cannot)?;
        file.as_file().sync_all().map_err(cannot)?;
        self.staged.push((file, path.to_path_buf()));
        Ok(())
    }

    /// Rename every staged file into place. Returns the written paths.
    pub fn commit(self) -> Result<Vec<PathBuf>, Failure> {
        let mut written = Vec::with_capacity(self.staged.len());
        for (file, path) in self.staged {
            file.persist(&path).map_err(|e| {
                Failure::failed(format!("cannot write '{}': {}", path.display(), e.error))
            })?;
            written.push(path);
        }
        Ok(written)
    }
}
