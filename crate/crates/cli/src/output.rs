//! Atomic file output: write beside the target, then rename.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::Failure;

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn temp_sibling(path: &Path) -> PathBuf {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!(".{name}.partial"))
}

pub fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::io(format!("{}: {e}", path.display()))
}

/// Files staged under temporary names until `commit`. Dropping without a
/// commit removes them.
#[derive(Default)]
pub struct Staged {
    pending: Vec<(PathBuf, PathBuf)>,
}

impl Staged {
    pub fn stage(&mut self, path: &Path, bytes: &[u8]) -> Result<(), Failure> {
        let tmp = temp_sibling(path);
        self.pending.push((tmp.clone(), path.to_path_buf()));
        fs::write(&tmp, bytes).map_err(|e| io_failure(&tmp, e))
    }

    pub fn commit(mut self) -> Result<(), Failure> {
        for (tmp, dst) in std::mem::take(&mut self.pending) {
            fs::rename(&tmp, &dst).map_err(|e| io_failure(&dst, e))?;
        }
        Ok(())
    }
}

impl Drop for Staged {
    fn drop(&mut self) {
        for (tmp, _) in &self.pending {
            let _ = fs::remove_file(tmp);
        }
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let mut s = Staged::default();
    s.stage(path, bytes)?;
    s.commit()
}

/// Fills a fresh temporary directory, then swaps it in for `dst`.
pub fn write_dir_atomic<F>(dst: &Path, fill: F) -> Result<(), Failure>
where
    F: FnOnce(&Path) -> Result<(), Failure>,
{
    let tmp = temp_sibling(dst);
    if tmp.exists() {
        fs::remove_dir_all(&tmp).map_err(|e| io_failure(&tmp, e))?;
    }
    fs::create_dir_all(&tmp).map_err(|e| io_failure(&tmp, e))?;
    if let Err(e) = fill(&tmp) {
        let _ = fs::remove_dir_all(&tmp);
        return Err(e);
    }
    if dst.exists() {
        fs::remove_dir_all(dst).map_err(|e| io_failure(dst, e))?;
    }
    fs::rename(&tmp, dst).map_err(|e| io_failure(dst, e))
}
