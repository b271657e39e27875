//! Pipeline configuration: defaults, TOML config files, and CLI overrides,
//! merged with CLI > file > defaults precedence.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::language::Language;
use crate::pos::FlaggedTag;
use crate::rules::extra_pattern;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Languages to scan for. Defaults to all seven.
    pub languages: BTreeSet<Language>,
    /// Longest n-gram considered, anchor included.
    pub max_n: usize,
    /// Minimum document frequency for a candidate phrase.
    pub min_df: u64,
    /// Whether Python docstrings count as comments.
    pub docstrings: bool,
    /// Labels of extra inclusive POS patterns, normally empty.
    pub extra_inclusive: BTreeSet<String>,
    /// Terms to exclude from reports, one per line.
    pub denylist_path: Option<PathBuf>,
    /// Externally produced POS tags, applied by comment id.
    pub sidecar_path: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            languages: Language::ALL.into_iter().collect(),
            max_n: 6,
            min_df: 2,
            docstrings: true,
            extra_inclusive: BTreeSet::new(),
            denylist_path: None,
            sidecar_path: None,
        }
    }
}

/// The subset of settings a config file may supply. Unknown keys are
/// rejected so typos cannot silently fall back to defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    languages: Option<Vec<String>>,
    max_n: Option<usize>,
    min_df: Option<u64>,
    docstrings: Option<bool>,
    extra_inclusive: Option<Vec<String>>,
    denylist_path: Option<PathBuf>,
    sidecar_path: Option<PathBuf>,
}

/// Settings supplied on the command line; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub languages: Option<Vec<Language>>,
    pub max_n: Option<usize>,
    pub min_df: Option<u64>,
    pub docstrings: Option<bool>,
    pub extra_inclusive: Option<Vec<String>>,
    pub denylist_path: Option<PathBuf>,
    pub sidecar_path: Option<PathBuf>,
}

fn parse_languages(names: &[String]) -> Result<BTreeSet<Language>> {
    names
        .iter()
        .map(|name| name.parse::<Language>().map_err(Error::Config))
        .collect()
}

impl PipelineConfig {
    /// Builds the effective config from an optional TOML file and CLI
    /// overrides, then validates it.
    pub fn load(file: Option<&Path>, overrides: &ConfigOverrides) -> Result<PipelineConfig> {
        let mut config = PipelineConfig::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let parsed: ConfigFile = toml::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?;
            if let Some(names) = parsed.languages {
                config.languages = parse_languages(&names)?;
            }
            if let Some(v) = parsed.max_n {
                config.max_n = v;
            }
            if let Some(v) = parsed.min_df {
                config.min_df = v;
            }
            if let Some(v) = parsed.docstrings {
                config.docstrings = v;
            }
            if let Some(labels) = parsed.extra_inclusive {
                config.extra_inclusive = labels.into_iter().collect();
            }
            if parsed.denylist_path.is_some() {
                config.denylist_path = parsed.denylist_path;
            }
            if parsed.sidecar_path.is_some() {
                config.sidecar_path = parsed.sidecar_path;
            }
        }
        if let Some(langs) = &overrides.languages {
            config.languages = langs.iter().copied().collect();
        }
        if let Some(v) = overrides.max_n {
            config.max_n = v;
        }
        if let Some(v) = overrides.min_df {
            config.min_df = v;
        }
        if let Some(v) = overrides.docstrings {
            config.docstrings = v;
        }
        if let Some(labels) = &overrides.extra_inclusive {
            config.extra_inclusive = labels.iter().cloned().collect();
        }
        if overrides.denylist_path.is_some() {
            config.denylist_path = overrides.denylist_path.clone();
        }
        if overrides.sidecar_path.is_some() {
            config.sidecar_path = overrides.sidecar_path.clone();
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=8).contains(&self.max_n) {
            return Err(Error::Config(format!(
                "max_n must be between 2 and 8, got {}",
                self.max_n
            )));
        }
        if self.min_df < 1 {
            return Err(Error::Config("min_df must be at least 1".into()));
        }
        for label in &self.extra_inclusive {
            if extra_pattern(label).is_none() {
                return Err(Error::Config(format!(
                    "unknown extra-inclusive pattern label: {}",
                    label
                )));
            }
        }
        Ok(())
    }

    /// Resolves the configured extra-inclusive labels to tag sequences.
    pub fn extra_patterns(&self) -> Vec<Vec<FlaggedTag>> {
        self.extra_inclusive
            .iter()
            .filter_map(|label| extra_pattern(label))
            .collect()
    }
}
