//! Downloading and checksum validation of benchmark instance files.
//!
//! A manifest lists one instance per line as `name url sha256`; blank lines
//! and lines starting with `#` are ignored. Files that already verify are
//! never touched. A file whose checksum does not match is moved to
//! `<dest>/quarantine/` and the fetch reports failure.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::HarnessError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub url: String,
    pub sha256: [u8; 32],
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| HarnessError::Manifest { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [name, url, digest] = fields[..] else {
                return Err(bad(format!("expected `name url sha256`, found {} fields", fields.len())));
            };
            if name.contains(['/', '\\']) || name == "." || name == ".." {
                return Err(bad(format!("instance name {name:?} must be a plain file name")));
            }
            let mut sha256 = [0u8; 32];
            hex::decode_to_slice(digest, &mut sha256).map_err(|e| bad(format!("checksum {digest:?}: {e}")))?;
            if entries.iter().any(|e: &ManifestEntry| e.name == name) {
                return Err(bad(format!("duplicate instance {name}")));
            }
            entries.push(ManifestEntry { name: name.to_owned(), url: url.to_owned(), sha256 });
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = fs::read_to_string(path).map_err(|e| HarnessError::Fetch(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FetchMode {
    Online,
    /// Validate files already present; never touch the network.
    Offline,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryStatus {
    /// Already present with the expected checksum.
    Verified,
    Downloaded,
    /// Absent, and offline mode was requested.
    Missing,
    Quarantined { path: PathBuf, actual: String },
    DownloadFailed(String),
}

impl EntryStatus {
    pub fn is_failure(&self) -> bool {
        matches!(self, Self::Quarantined { .. } | Self::DownloadFailed(_))
    }
}

impl fmt::Display for EntryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Verified => f.write_str("verified"),
            Self::Downloaded => f.write_str("downloaded"),
            Self::Missing => f.write_str("missing (offline)"),
            Self::Quarantined { path, actual } => {
                write!(f, "checksum mismatch (sha256 {actual}), moved to {}", path.display())
            }
            Self::DownloadFailed(e) => write!(f, "download failed: {e}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FetchReport {
    pub entries: Vec<(String, EntryStatus)>,
}

impl FetchReport {
    pub fn is_success(&self) -> bool {
        !self.entries.iter().any(|(_, s)| s.is_failure())
    }

    pub fn count(&self, pred: impl Fn(&EntryStatus) -> bool) -> usize {
        self.entries.iter().filter(|(_, s)| pred(s)).count()
    }
}

fn sha256_of(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(bytes).into()
}

fn quarantine(dest: &Path, name: &str, from: &Path) -> Result<PathBuf, HarnessError> {
    let dir = dest.join("quarantine");
    fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
    let to = dir.join(name);
    fs::rename(from, &to).map_err(|e| HarnessError::io(from, e))?;
    Ok(to)
}

fn download(url: &str) -> Result<Vec<u8>, String> {
    let mut response = ureq::get(url).call().map_err(|e| e.to_string())?;
    let mut bytes = Vec::new();
    response.body_mut().as_reader().read_to_end(&mut bytes).map_err(|e| e.to_string())?;
    Ok(bytes)
}

pub fn fetch_instances(manifest: &Manifest, dest: &Path, mode: FetchMode) -> Result<FetchReport, HarnessError> {
    fs::create_dir_all(dest).map_err(|e| HarnessError::io(dest, e))?;
    let mut report = FetchReport::default();
    for entry in &manifest.entries {
        let target = dest.join(&entry.name);
        let status = if target.exists() {
            let bytes = fs::read(&target).map_err(|e| HarnessError::io(&target, e))?;
            let actual = sha256_of(&bytes);
            if actual == entry.sha256 {
                EntryStatus::Verified
            } else {
                let path = quarantine(dest, &entry.name, &target)?;
                EntryStatus::Quarantined { path, actual: hex::encode(actual) }
            }
        } else if mode == FetchMode::Offline {
            EntryStatus::Missing
        } else {
            match download(&entry.url) {
                Err(e) => EntryStatus::DownloadFailed(e),
                Ok(bytes) => {
                    let partial = dest.join(format!("{}.part", entry.name));
                    fs::write(&partial, &bytes).map_err(|e| HarnessError::io(&partial, e))?;
                    let actual = sha256_of(&bytes);
                    if actual == entry.sha256 {
                        fs::rename(&partial, &target).map_err(|e| HarnessError::io(&partial, e))?;
                        EntryStatus::Downloaded
                    } else {
                        let path = quarantine(dest, &entry.name, &partial)?;
                        EntryStatus::Quarantined { path, actual: hex::encode(actual) }
                    }
                }
            }
        };
        report.entries.push((entry.name.clone(), status));
    }
    Ok(report)
}
