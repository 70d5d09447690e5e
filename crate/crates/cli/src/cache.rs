//! On-disk result cache. An entry stores the exit code and the exact output
//! bytes behind a header carrying the version stamp and a SHA-256 checksum of
//! the payload; anything that fails to verify is treated as a miss.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use log::{debug, warn};
use sha2::{Digest, Sha256};

/// Bumped whenever a formula change can alter cached output.
pub const FORMULA_REVISION: u32 = 1;

pub fn version_stamp() -> String {
    format!("{}+r{}", env!("CARGO_PKG_VERSION"), FORMULA_REVISION)
}

const MAGIC: &str = "brieskorn-cache";

/// Canonical description of a run; its digest names the entry.
#[derive(Debug, Default, Clone)]
pub struct CacheKey {
    parts: Vec<(String, Vec<u8>)>,
}

impl CacheKey {
    pub fn new(command: &str) -> Self {
        let mut key = Self::default();
        key.push("version", version_stamp());
        key.push("command", command);
        key
    }

    pub fn push(&mut self, name: &str, value: impl AsRef<[u8]>) -> &mut Self {
        self.parts.push((name.to_string(), value.as_ref().to_vec()));
        self
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (name, value) in &self.parts {
            // length-prefixed so no two part lists collide
            h.update((name.len() as u64).to_le_bytes());
            h.update(name.as_bytes());
            h.update((value.len() as u64).to_le_bytes());
            h.update(value);
        }
        hex::encode(h.finalize())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CachedRun {
    pub exit_code: i32,
    pub output: Vec<u8>,
}

pub struct Cache {
    dir: PathBuf,
}

fn checksum(payload: &[u8]) -> String {
    hex::encode(Sha256::digest(payload))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn entry_path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.entry", key.digest()))
    }

    pub fn load(&self, key: &CacheKey) -> Option<CachedRun> {
        let path = self.entry_path(key);
        let bytes = fs::read(&path).ok()?;
        match decode(&bytes) {
            Some(run) => {
                debug!("cache hit {}", path.display());
                Some(run)
            }
            None => {
                warn!("ignoring invalid cache entry {}", path.display());
                None
            }
        }
    }

    /// Writes under an exclusive lock file; gives up quietly if another writer
    /// holds it. Entries are renamed into place so readers never see a torn file.
    pub fn store(&self, key: &CacheKey, run: &CachedRun) {
        if let Err(e) = self.try_store(key, run) {
            warn!("cache write failed: {e}");
        }
    }

    fn try_store(&self, key: &CacheKey, run: &CachedRun) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let digest = key.digest();
        let lock = self.dir.join(format!("{digest}.lock"));
        let _guard = match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(_) => LockGuard(lock),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                debug!("cache entry {digest} locked by another writer");
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        let tmp = self.dir.join(format!("{digest}.tmp"));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(run))?;
        f.sync_all()?;
        fs::rename(&tmp, self.entry_path(key))
    }
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn encode(run: &CachedRun) -> Vec<u8> {
    let mut out = format!(
        "{MAGIC}\nversion {}\nexit {}\nsha256 {}\n\n",
        version_stamp(),
        run.exit_code,
        checksum(&run.output)
    )
    .into_bytes();
    out.extend_from_slice(&run.output);
    out
}

fn decode(bytes: &[u8]) -> Option<CachedRun> {
    let split = bytes.windows(2).position(|w| w == b"\n\n")?;
    let header = std::str::from_utf8(&bytes[..split]).ok()?;
    let payload = &bytes[split + 2..];
    let mut lines = header.lines();
    if lines.next()? != MAGIC {
        return None;
    }
    if lines.next()?.strip_prefix("version ")? != version_stamp() {
        return None;
    }
    let exit_code = lines.next()?.strip_prefix("exit ")?.parse().ok()?;
    if lines.next()?.strip_prefix("sha256 ")? != checksum(payload) {
        return None;
    }
    Some(CachedRun {
        exit_code,
        output: payload.to_vec(),
    })
}

pub fn default_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(crate::CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}
