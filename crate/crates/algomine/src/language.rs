//! The set of languages the pipeline understands and the extension table
//! used to recognize their source files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    C,
    Cpp,
    Java,
    JavaScript,
    Python,
    Php,
    Ruby,
}

impl Language {
    pub const ALL: [Language; 7] = [
        Language::C,
        Language::Cpp,
        Language::Java,
        Language::JavaScript,
        Language::Python,
        Language::Php,
        Language::Ruby,
    ];

    /// File extensions claimed by this language, lowercase, without the dot.
    /// `.h` headers are attributed to C; C++ keeps its unambiguous set.
    pub fn extensions(&self) -> &'static [&'static str] {
        match self {
            Language::C => &["c", "h"],
            Language::Cpp => &["cc", "cpp", "cxx", "hpp", "hh", "hxx"],
            Language::Java => &["java"],
            Language::JavaScript => &["js", "jsx", "mjs"],
            Language::Python => &["py"],
            Language::Php => &["php"],
            Language::Ruby => &["rb"],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Language::C => "c",
            Language::Cpp => "cpp",
            Language::Java => "java",
            Language::JavaScript => "javascript",
            Language::Python => "python",
            Language::Php => "php",
            Language::Ruby => "ruby",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "c" => Ok(Language::C),
            "cpp" | "c++" | "cxx" => Ok(Language::Cpp),
            "java" => Ok(Language::Java),
            "javascript" | "js" => Ok(Language::JavaScript),
            "python" | "py" => Ok(Language::Python),
            "php" => Ok(Language::Php),
            "ruby" | "rb" => Ok(Language::Ruby),
            other => Err(format!("unknown language: {}", other)),
        }
    }
}

/// Maps a path to a language via its extension, case-insensitively.
/// Files without a recognized extension are not part of the corpus.
pub fn detect_language(path: &Path) -> Option<Language> {
    let ext = path.extension()?.to_str()?.to_ascii_lowercase();
    Language::ALL
        .iter()
        .copied()
        .find(|lang| lang.extensions().contains(&ext.as_str()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_extensions_to_languages() {
        assert_eq!(detect_language(Path::new("md5.cc")), Some(Language::Cpp));
        assert_eq!(detect_language(Path::new("algorithms.rb")), Some(Language::Ruby));
        assert_eq!(detect_language(Path::new("a/b/leaflet.js")), Some(Language::JavaScript));
        assert_eq!(detect_language(Path::new("tcpdf_static.php")), Some(Language::Php));
        assert_eq!(detect_language(Path::new("pool.py")), Some(Language::Python));
        assert_eq!(detect_language(Path::new("Formatter.java")), Some(Language::Java));
    }

    #[test]
    fn headers_count_as_c() {
        assert_eq!(detect_language(Path::new("wifi.h")), Some(Language::C));
        assert_eq!(detect_language(Path::new("sort.hpp")), Some(Language::Cpp));
    }

    #[test]
    fn extension_match_is_case_insensitive() {
        assert_eq!(detect_language(Path::new("MD5.CC")), Some(Language::Cpp));
        assert_eq!(detect_language(Path::new("POOL.PY")), Some(Language::Python));
    }

    #[test]
    fn unknown_extensions_are_skipped() {
        assert_eq!(detect_language(Path::new("README")), None);
        assert_eq!(detect_language(Path::new("notes.md")), None);
        assert_eq!(detect_language(Path::new("Makefile")), None);
    }

    #[test]
    fn every_extension_belongs_to_one_language() {
        let mut seen = std::collections::HashSet::new();
        for lang in Language::ALL {
            for ext in lang.extensions() {
                assert!(seen.insert(*ext), "extension {} claimed twice", ext);
            }
        }
    }

    #[test]
    fn parses_aliases() {
        assert_eq!(Language::from_str("C++").unwrap(), Language::Cpp);
        assert_eq!(Language::from_str("JS").unwrap(), Language::JavaScript);
        assert_eq!(Language::from_str("rb").unwrap(), Language::Ruby);
        assert!(Language::from_str("fortran").is_err());
    }
}
