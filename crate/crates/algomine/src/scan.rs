//! Walks directory trees and collects the source files the pipeline will read.
//!
//! Traversal is deterministic: candidate paths are gathered first, sorted
//! lexicographically, and only then read. Symbolic links are never followed.
//! A file that matches the extension table but cannot be read is skipped and
//! recorded, not fatal; an unreadable root is an error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::language::{detect_language, Language};

/// A source file held in memory, ready for comment extraction.
/// Contents are decoded as UTF-8 lossily so binary-ish files never abort a scan.
#[derive(Debug, Clone)]
pub struct SourceFile {
    pub path: String,
    pub language: Language,
    pub content: String,
    pub content_hash: u64,
}

/// One row of the scan manifest (`files.jsonl`). The hash is the FNV-1a 64
/// digest of the raw bytes, printed as 16 hex digits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FileRecord {
    pub path: String,
    pub language: Language,
    pub content_hash: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkipRecord {
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Default)]
pub struct ScanOutcome {
    pub files: Vec<SourceFile>,
    pub skips: Vec<SkipRecord>,
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Walks `root` and loads every file whose extension maps to a wanted language.
/// `languages = None` means all seven.
pub fn scan_tree(root: &Path, languages: Option<&BTreeSet<Language>>) -> Result<ScanOutcome> {
    let meta = fs::metadata(root).map_err(|e| Error::io(root, e))?;
    if !meta.is_dir() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotADirectory, "scan root is not a directory"),
        ));
    }

    let mut candidates: Vec<(PathBuf, Language)> = Vec::new();
    for entry in WalkDir::new(root).follow_links(false) {
        let entry = entry.map_err(|e| {
            let path = e.path().map(Path::to_path_buf).unwrap_or_else(|| root.to_path_buf());
            let io = e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("directory walk failed"));
            Error::io(path, io)
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let Some(lang) = detect_language(entry.path()) else { continue };
        if let Some(wanted) = languages {
            if !wanted.contains(&lang) {
                continue;
            }
        }
        candidates.push((entry.path().to_path_buf(), lang));
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(load_candidates(&candidates))
}

/// Reads each candidate path; read failures become skip records.
pub fn load_candidates(candidates: &[(PathBuf, Language)]) -> ScanOutcome {
    let mut outcome = ScanOutcome::default();
    for (path, lang) in candidates {
        match fs::read(path) {
            Ok(bytes) => {
                let hash = fnv1a64(&bytes);
                outcome.files.push(SourceFile {
                    path: path.display().to_string(),
                    language: *lang,
                    content: String::from_utf8_lossy(&bytes).into_owned(),
                    content_hash: hash,
                });
            }
            Err(e) => {
                log::warn!("skipping {}: {}", path.display(), e);
                outcome.skips.push(SkipRecord {
                    path: path.display().to_string(),
                    reason: e.to_string(),
                });
            }
        }
    }
    outcome
}

pub fn to_manifest(files: &[SourceFile]) -> Vec<FileRecord> {
    files
        .iter()
        .map(|f| FileRecord {
            path: f.path.clone(),
            language: f.language,
            content_hash: format!("{:016x}", f.content_hash),
        })
        .collect()
}

/// Loads the files named by a manifest back into memory for extraction.
/// A manifest entry whose file has vanished is an error, not a skip: the
/// manifest is a promise that these files were readable.
pub fn load_manifest(records: &[FileRecord]) -> Result<Vec<SourceFile>> {
    records
        .iter()
        .map(|rec| {
            let bytes = fs::read(&rec.path).map_err(|e| Error::io(&rec.path, e))?;
            Ok(SourceFile {
                path: rec.path.clone(),
                language: rec.language,
                content: String::from_utf8_lossy(&bytes).into_owned(),
                content_hash: fnv1a64(&bytes),
            })
        })
        .collect()
}
