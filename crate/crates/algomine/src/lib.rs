//! Mining algorithm names from source-code comments.
//!
//! The pipeline scans a directory tree for source files in seven languages,
//! extracts their comments with small per-language lexers, tokenizes and
//! part-of-speech tags the text, mines candidate phrases ending in the word
//! "algorithm" with an n-gram IDF weighting, refines them (head stripping,
//! longest match, majority vote over POS sequences), classifies the majority
//! sequences with a rule cascade, and reports per-language frequency tables
//! with provenance excerpts. A labeled oracle can score the classifications.
//!
//! Each stage is a library function plus a CLI subcommand; stages hand off
//! line-oriented JSON files, so any step can be inspected or replayed.

pub mod config;
pub mod error;
pub mod eval;
pub mod extract;
pub mod jsonl;
pub mod language;
pub mod ngram;
pub mod pipeline;
pub mod pos;
pub mod refine;
pub mod report;
pub mod rules;
pub mod scan;
pub mod text;

pub use error::{Error, Result};
