//! N-gram counting, IDF-style weighting and candidate selection.
//!
//! Statistics are corpus-global: df counts the comments containing an n-gram
//! as a contiguous sequence, sdf the comments containing all of its tokens
//! at any positions. weight(g) = ln(n_docs * df / sdf^2); a positive weight
//! means the tokens co-occur as a phrase more often than independence would
//! predict.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::Language;
use crate::pos::{FlaggedTag, TaggedComment};
use crate::text::{excerpt, EXCERPT_WIDTH};

/// Mining knobs.
#[derive(Debug, Clone)]
pub struct MineOptions {
    /// Longest n-gram tracked (window sizes 2..=max_n).
    pub max_n: usize,
    /// Minimum document frequency for a candidate.
    pub min_df: u64,
    /// Also accept windows ending in "algorithms".
    pub match_plural: bool,
}

impl Default for MineOptions {
    fn default() -> Self {
        MineOptions { max_n: 6, min_df: 2, match_plural: false }
    }
}

/// How many context tokens an occurrence keeps on each side of its window.
/// Enough to fill an excerpt after head words move back into the context.
const CONTEXT_TOKENS: usize = 24;

/// One in-comment occurrence of a candidate term. `start..end` is the token
/// span within the comment; `before`/`after` hold nearby surface tokens so
/// provenance excerpts can be rebuilt without the original comment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateOccurrence {
    pub comment_id: u64,
    pub path: String,
    pub language: Language,
    pub start: usize,
    pub end: usize,
    pub tokens: Vec<String>,
    pub pos: Vec<FlaggedTag>,
    pub surfaces: Vec<String>,
    pub before: Vec<String>,
    pub after: Vec<String>,
}

impl CandidateOccurrence {
    /// The matched term as written in the comment.
    pub fn surface_text(&self) -> String {
        self.surfaces.join(" ")
    }

    /// Excerpt of the surrounding comment with the match marked.
    pub fn excerpt(&self) -> String {
        let mut context: Vec<String> = Vec::with_capacity(
            self.before.len() + self.surfaces.len() + self.after.len(),
        );
        context.extend(self.before.iter().cloned());
        let span = (context.len(), context.len() + self.surfaces.len());
        context.extend(self.surfaces.iter().cloned());
        context.extend(self.after.iter().cloned());
        excerpt(&context, span, EXCERPT_WIDTH)
    }
}

/// Mergeable corpus-wide n-gram statistics.
#[derive(Debug, Default, Clone)]
pub struct NgramStats {
    n_docs: u64,
    seq_df: BTreeMap<Vec<String>, u64>,
    token_docs: BTreeMap<String, BTreeSet<u64>>,
}

impl NgramStats {
    pub fn n_docs(&self) -> u64 {
        self.n_docs
    }

    /// Comments containing `gram` contiguously.
    pub fn df(&self, gram: &[String]) -> u64 {
        if gram.len() == 1 {
            return self.token_df(&gram[0]);
        }
        self.seq_df.get(gram).copied().unwrap_or(0)
    }

    /// Comments containing every token of `gram`, in any positions.
    pub fn sdf(&self, gram: &[String]) -> u64 {
        let distinct: BTreeSet<&String> = gram.iter().collect();
        let mut postings: Vec<&BTreeSet<u64>> = Vec::with_capacity(distinct.len());
        for token in distinct {
            match self.token_docs.get(token) {
                Some(docs) => postings.push(docs),
                None => return 0,
            }
        }
        postings.sort_by_key(|docs| docs.len());
        let (smallest, rest) = postings.split_first().expect("gram is non-empty");
        smallest
            .iter()
            .filter(|doc| rest.iter().all(|docs| docs.contains(doc)))
            .count() as u64
    }

    /// Comments containing the single token anywhere.
    pub fn token_df(&self, token: &str) -> u64 {
        self.token_docs.get(token).map_or(0, |docs| docs.len() as u64)
    }

    /// ln(n_docs * df / sdf^2); None when the gram was never seen.
    pub fn weight(&self, gram: &[String]) -> Option<f64> {
        let df = self.df(gram);
        if df == 0 {
            return None;
        }
        Some(weight_from_counts(self.n_docs, df, self.sdf(gram)))
    }

    /// All counted n-grams with their df, in lexicographic token order.
    pub fn iter_ngrams(&self) -> impl Iterator<Item = (&Vec<String>, u64)> {
        self.seq_df.iter().map(|(gram, df)| (gram, *df))
    }

    pub fn ngram_count(&self) -> usize {
        self.seq_df.len()
    }

    /// Combines statistics from disjoint document shards: df counts add,
    /// posting sets union. Merge order does not affect the result.
    pub fn merge(mut self, other: NgramStats) -> NgramStats {
        self.n_docs += other.n_docs;
        for (gram, df) in other.seq_df {
            *self.seq_df.entry(gram).or_insert(0) += df;
        }
        for (token, docs) in other.token_docs {
            self.token_docs.entry(token).or_default().extend(docs);
        }
        self
    }
}

/// The weighting formula on raw counts. For a unigram sdf = df and this
/// reduces to ln(n_docs / df), the plain IDF.
pub fn weight_from_counts(n_docs: u64, df: u64, sdf: u64) -> f64 {
    ((n_docs as f64 * df as f64) / (sdf as f64 * sdf as f64)).ln()
}

/// Counts every contiguous n-gram of length 2..=max_n in every comment,
/// plus per-token posting sets. Each comment contributes at most once to
/// any df count.
pub fn count_ngrams(corpus: &[TaggedComment], max_n: usize) -> NgramStats {
    corpus
        .par_iter()
        .map(|comment| comment_stats(comment, max_n))
        .reduce(NgramStats::default, NgramStats::merge)
}

fn comment_stats(comment: &TaggedComment, max_n: usize) -> NgramStats {
    let norms: Vec<&str> = comment.tokens.iter().map(|t| t.norm.as_str()).collect();
    let mut stats = NgramStats { n_docs: 1, ..NgramStats::default() };
    for norm in &norms {
        stats
            .token_docs
            .entry((*norm).to_string())
            .or_default()
            .insert(comment.comment_id);
    }
    let mut seen: HashSet<&[&str]> = HashSet::new();
    for n in 2..=max_n {
        for window in norms.windows(n) {
            if seen.insert(window) {
                let gram: Vec<String> = window.iter().map(|s| (*s).to_string()).collect();
                stats.seq_df.insert(gram, 1);
            }
        }
    }
    stats
}

fn is_anchor(norm: &str, match_plural: bool) -> bool {
    norm == "algorithm" || (match_plural && norm == "algorithms")
}

/// Emits one CandidateOccurrence per window of 2..=max_n tokens ending in
/// the anchor word, for windows with df >= min_df and weight > 0. Every
/// textual occurrence is emitted, not one per comment.
pub fn select_candidates(
    corpus: &[TaggedComment],
    stats: &NgramStats,
    opts: &MineOptions,
) -> Vec<CandidateOccurrence> {
    let mut out = Vec::new();
    for comment in corpus {
        let norms: Vec<&str> = comment.tokens.iter().map(|t| t.norm.as_str()).collect();
        for (i, norm) in norms.iter().enumerate() {
            if !is_anchor(norm, opts.match_plural) {
                continue;
            }
            let end = i + 1;
            for n in 2..=opts.max_n {
                if n > end {
                    break;
                }
                let start = end - n;
                let gram: Vec<String> =
                    norms[start..end].iter().map(|s| (*s).to_string()).collect();
                if stats.df(&gram) < opts.min_df {
                    continue;
                }
                if stats.weight(&gram).unwrap_or(f64::NEG_INFINITY) <= 0.0 {
                    continue;
                }
                out.push(make_occurrence(comment, start, end, gram));
            }
        }
    }
    out
}

fn make_occurrence(
    comment: &TaggedComment,
    start: usize,
    end: usize,
    tokens: Vec<String>,
) -> CandidateOccurrence {
    let surfaces: Vec<String> =
        comment.tokens[start..end].iter().map(|t| t.surface.clone()).collect();
    let pos: Vec<FlaggedTag> = comment.tokens[start..end].iter().map(|t| t.flagged()).collect();
    let before_from = start.saturating_sub(CONTEXT_TOKENS);
    let before: Vec<String> =
        comment.tokens[before_from..start].iter().map(|t| t.surface.clone()).collect();
    let after_to = (end + CONTEXT_TOKENS).min(comment.tokens.len());
    let after: Vec<String> =
        comment.tokens[end..after_to].iter().map(|t| t.surface.clone()).collect();
    CandidateOccurrence {
        comment_id: comment.comment_id,
        path: comment.path.clone(),
        language: comment.language,
        start,
        end,
        tokens,
        pos,
        surfaces,
        before,
        after,
    }
}

/// Writes the statistics table as CSV with columns ngram, df, sdf, weight,
/// one row per counted n-gram in lexicographic order.
pub fn write_stats_csv(path: &Path, stats: &NgramStats) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| Error::Csv { path: path.to_path_buf(), message: e.to_string() })?;
    writer
        .write_record(["ngram", "df", "sdf", "weight"])
        .map_err(|e| Error::Csv { path: path.to_path_buf(), message: e.to_string() })?;
    for (gram, df) in stats.iter_ngrams() {
        let sdf = stats.sdf(gram);
        let weight = weight_from_counts(stats.n_docs, df, sdf);
        writer
            .write_record([
                gram.join(" "),
                df.to_string(),
                sdf.to_string(),
                weight.to_string(),
            ])
            .map_err(|e| Error::Csv { path: path.to_path_buf(), message: e.to_string() })?;
    }
    writer
        .flush()
        .map_err(|e| Error::Csv { path: path.to_path_buf(), message: e.to_string() })?;
    Ok(())
}
