//! Pulls comments out of source files.
//!
//! Each language family gets a small hand-written lexer that walks the file
//! once, skipping string literals (and their language-specific traps: Python
//! docstring quotes, Ruby heredocs and %q/%Q literals, JavaScript template
//! and regex literals, PHP heredocs and HTML regions) so that comment
//! delimiters inside strings never open a comment.
//!
//! Lexers emit raw per-comment events; a shared merge pass then folds runs of
//! consecutive single-line comments into one `line_run` document when no
//! non-blank code line sits between them. Block comments are one document
//! each. Python docstrings are extracted as block documents unless disabled.

mod clike;
mod php;
mod python;
mod ruby;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::language::Language;
use crate::scan::SourceFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommentKind {
    /// One or more whole-line (`//`, `#`) comments merged into a paragraph.
    LineRun,
    /// A delimited comment (`/* */`, `=begin/=end`) or a docstring.
    Block,
}

/// One extracted comment. `text` has the comment delimiters stripped but is
/// otherwise raw; line numbers are 1-based and inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct CommentDoc {
    pub comment_id: u64,
    pub path: String,
    pub language: Language,
    pub kind: CommentKind,
    pub text: String,
    pub start_line: usize,
    pub end_line: usize,
}

/// The on-disk shape of one comment in the corpus file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub path: String,
    pub language: Language,
    pub comment_id: u64,
    pub text: String,
    pub start_line: usize,
    pub end_line: usize,
}

impl CommentDoc {
    pub fn to_record(&self) -> CorpusRecord {
        CorpusRecord {
            path: self.path.clone(),
            language: self.language,
            comment_id: self.comment_id,
            text: self.text.clone(),
            start_line: self.start_line,
            end_line: self.end_line,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractOptions {
    /// Treat Python docstrings as comments. On by default.
    pub docstrings: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { docstrings: true }
    }
}

#[derive(Debug, Default)]
pub struct ExtractResult {
    pub docs: Vec<CommentDoc>,
    pub warnings: Vec<String>,
}

// ---------------------------------------------------------------------------
// Internal lexer plumbing shared by the per-language lexers.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RawKind {
    Line,
    Block,
}

/// A single comment as the lexer saw it, before run merging.
#[derive(Debug, Clone)]
pub(crate) struct RawComment {
    pub kind: RawKind,
    pub start_line: usize,
    pub end_line: usize,
    pub text: String,
}

#[derive(Debug, Default)]
pub(crate) struct LexOutput {
    pub comments: Vec<RawComment>,
    /// Lines (1-based) holding at least one non-whitespace, non-comment char.
    pub code_lines: BTreeSet<usize>,
    pub warnings: Vec<String>,
}

impl LexOutput {
    pub fn line_comment(&mut self, line: usize, text: &str) {
        self.comments.push(RawComment {
            kind: RawKind::Line,
            start_line: line,
            end_line: line,
            text: text.trim().to_string(),
        });
    }

    pub fn block_comment(&mut self, start_line: usize, end_line: usize, text: &str) {
        self.comments.push(RawComment {
            kind: RawKind::Block,
            start_line,
            end_line,
            text: text.trim().to_string(),
        });
    }
}

/// Character cursor with 1-based line tracking.
pub(crate) struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    pub fn new(content: &str) -> Self {
        Cursor { chars: content.chars().collect(), pos: 0, line: 1, col: 0 }
    }

    pub fn eof(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    pub fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c))
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied();
        if let Some(c) = c {
            self.pos += 1;
            if c == '\n' {
                self.line += 1;
                self.col = 0;
            } else {
                self.col += 1;
            }
        }
        c
    }

    pub fn bump_n(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn at_line_start(&self) -> bool {
        self.col == 0
    }

    /// Consumes the rest of the physical line, excluding the newline itself.
    pub fn take_line(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }
}

// ---------------------------------------------------------------------------

/// Extracts all comments from one file. Documents are numbered 1..n within
/// the file; corpus-wide ids are assigned by `extract_corpus`.
pub fn extract_comments(file: &SourceFile, opts: &ExtractOptions) -> ExtractResult {
    let lex = match file.language {
        Language::C | Language::Cpp | Language::Java | Language::JavaScript => {
            clike::lex(&file.content, file.language)
        }
        Language::Python => python::lex(&file.content, opts.docstrings),
        Language::Ruby => ruby::lex(&file.content),
        Language::Php => php::lex(&file.content),
    };

    let mut result = ExtractResult::default();
    for w in lex.warnings {
        result.warnings.push(format!("{}: {}", file.path, w));
    }

    for raw in &lex.comments {
        let merged = match (raw.kind, result.docs.last_mut()) {
            (RawKind::Line, Some(last)) if last.kind == CommentKind::LineRun => {
                let gap_has_code = lex
                    .code_lines
                    .range(last.end_line + 1..raw.start_line)
                    .next()
                    .is_some();
                if gap_has_code {
                    false
                } else {
                    last.text.push('\n');
                    last.text.push_str(&raw.text);
                    last.end_line = raw.end_line;
                    true
                }
            }
            _ => false,
        };
        if !merged {
            result.docs.push(CommentDoc {
                comment_id: result.docs.len() as u64 + 1,
                path: file.path.clone(),
                language: file.language,
                kind: match raw.kind {
                    RawKind::Line => CommentKind::LineRun,
                    RawKind::Block => CommentKind::Block,
                },
                text: raw.text.clone(),
                start_line: raw.start_line,
                end_line: raw.end_line,
            });
        }
    }
    result
}

/// Extracts comments from every file and numbers them 1..n in file order.
/// Files are processed in the order given (the scanner already sorted them),
/// so ids and output are deterministic.
pub fn extract_corpus(files: &[SourceFile], opts: &ExtractOptions) -> ExtractResult {
    let per_file: Vec<ExtractResult> =
        files.par_iter().map(|f| extract_comments(f, opts)).collect();

    let mut corpus = ExtractResult::default();
    let mut next_id: u64 = 1;
    for mut one in per_file {
        corpus.warnings.append(&mut one.warnings);
        for mut doc in one.docs {
            doc.comment_id = next_id;
            next_id += 1;
            corpus.docs.push(doc);
        }
    }
    corpus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(language: Language, content: &str) -> SourceFile {
        SourceFile {
            path: format!("test.{}", language.extensions()[0]),
            language,
            content: content.to_string(),
            content_hash: 0,
        }
    }

    fn docs(language: Language, content: &str) -> Vec<CommentDoc> {
        extract_comments(&file(language, content), &ExtractOptions::default()).docs
    }

    #[test]
    fn block_comment_text_and_span() {
        let got = docs(
            Language::Cpp,
            "int f();\n/* This is the central step in the MD5 algorithm */\nint g();\n",
        );
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].text, "This is the central step in the MD5 algorithm");
        assert_eq!(got[0].kind, CommentKind::Block);
        assert_eq!((got[0].start_line, got[0].end_line), (2, 2));
    }

    #[test]
    fn consecutive_line_comments_merge_into_one_run() {
        let got = docs(
            Language::JavaScript,
            "// ray casting algorithm\n// next line\nvar x = 1;\n",
        );
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].kind, CommentKind::LineRun);
        assert_eq!(got[0].text, "ray casting algorithm\nnext line");
        assert_eq!((got[0].start_line, got[0].end_line), (1, 2));
    }

    #[test]
    fn code_line_between_comments_breaks_the_run() {
        let got = docs(Language::C, "// first\nint x;\n// second\n");
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].text, "first");
        assert_eq!(got[1].text, "second");
    }

    #[test]
    fn blank_line_does_not_break_a_run() {
        let got = docs(Language::C, "// first\n\n// second\n");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].text, "first\nsecond");
        assert_eq!((got[0].start_line, got[0].end_line), (1, 3));
    }

    #[test]
    fn block_comment_interrupts_a_line_run() {
        let got = docs(Language::C, "// a\n/* b */\n// c\n");
        assert_eq!(got.len(), 3);
        assert_eq!(got[1].kind, CommentKind::Block);
    }

    #[test]
    fn trailing_comment_after_code_still_extracted() {
        let got = docs(Language::C, "int x = 5; // the answer\n");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].text, "the answer");
    }

    #[test]
    fn spans_stay_within_the_file_and_do_not_overlap() {
        let src = "// one\n// two\nint x; /* three\nfour */\n// five\n";
        let got = docs(Language::C, src);
        let total_lines = src.lines().count();
        let mut prev_end = 0;
        for d in &got {
            assert!(d.start_line >= 1 && d.end_line <= total_lines);
            assert!(d.start_line <= d.end_line);
            assert!(d.start_line > prev_end, "doc spans overlap");
            prev_end = d.end_line;
        }
    }

    #[test]
    fn corpus_ids_are_sequential_across_files() {
        let files = vec![
            file(Language::C, "// a\nint x;\n// b\n"),
            file(Language::Python, "# c\n"),
        ];
        let corpus = extract_corpus(&files, &ExtractOptions::default());
        let ids: Vec<u64> = corpus.docs.iter().map(|d| d.comment_id).collect();
        assert_eq!(ids, [1, 2, 3]);
    }

    #[test]
    fn corpus_record_round_trips_as_json() {
        let got = docs(Language::Ruby, "# kex algorithm\n");
        let record = got[0].to_record();
        let json = serde_json::to_string(&record).unwrap();
        let back: CorpusRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
        assert!(json.contains("\"language\":\"ruby\""));
    }
}
