//! Part-of-speech tagging for comment tokens.
//!
//! Tags are the coarse Universal Dependencies set. A built-in tagger driven
//! by word lists and suffix rules covers the common case; tags produced by
//! an external tool can be swapped in per comment through a sidecar file.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extract::CorpusRecord;
use crate::language::Language;
use crate::text::{clean_text, tokenize};

/// Coarse part-of-speech tag.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Adp,
    Det,
    Num,
    Part,
    Conj,
    Pron,
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 11] = [
        PosTag::Noun,
        PosTag::Verb,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Adp,
        PosTag::Det,
        PosTag::Num,
        PosTag::Part,
        PosTag::Conj,
        PosTag::Pron,
        PosTag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Adp => "ADP",
            PosTag::Det => "DET",
            PosTag::Num => "NUM",
            PosTag::Part => "PART",
            PosTag::Conj => "CONJ",
            PosTag::Pron => "PRON",
            PosTag::Other => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Maps a tag label onto the coarse set. Accepts the coarse labels plus the
/// finer Universal Dependencies labels they absorb; anything else is None.
pub fn coarsen(label: &str) -> Option<PosTag> {
    Some(match label {
        "NOUN" | "PROPN" => PosTag::Noun,
        "VERB" | "AUX" => PosTag::Verb,
        "ADJ" => PosTag::Adj,
        "ADV" => PosTag::Adv,
        "ADP" | "SCONJ" => PosTag::Adp,
        "DET" => PosTag::Det,
        "NUM" => PosTag::Num,
        "PART" => PosTag::Part,
        "CONJ" | "CCONJ" => PosTag::Conj,
        "PRON" => PosTag::Pron,
        "OTHER" | "PUNCT" | "SYM" | "X" | "INTJ" => PosTag::Other,
        _ => return None,
    })
}

/// A tag plus the gerund flag: "using" renders as VERB-ing, "uses" as VERB.
/// The flag is only ever set on verbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlaggedTag {
    pub tag: PosTag,
    pub ing: bool,
}

impl FlaggedTag {
    pub const VERB_ING: FlaggedTag = FlaggedTag { tag: PosTag::Verb, ing: true };

    pub fn plain(tag: PosTag) -> Self {
        FlaggedTag { tag, ing: false }
    }
}

impl fmt::Display for FlaggedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ing {
            write!(f, "{}-ing", self.tag.as_str())
        } else {
            f.write_str(self.tag.as_str())
        }
    }
}

impl FromStr for FlaggedTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "VERB-ing" {
            return Ok(FlaggedTag::VERB_ING);
        }
        coarsen(s)
            .map(FlaggedTag::plain)
            .ok_or_else(|| format!("unknown tag label {:?}", s))
    }
}

impl Serialize for FlaggedTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FlaggedTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One token of a comment with its tag. `norm` is the lowercased surface
/// form; `ing` marks verbs whose normalized form ends in "ing".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub surface: String,
    pub norm: String,
    pub pos: PosTag,
    pub ing: bool,
}

impl TaggedToken {
    pub fn new(surface: String, pos: PosTag) -> Self {
        let norm = surface.to_lowercase();
        let ing = pos == PosTag::Verb && norm.ends_with("ing");
        TaggedToken { surface, norm, pos, ing }
    }

    pub fn flagged(&self) -> FlaggedTag {
        FlaggedTag { tag: self.pos, ing: self.ing }
    }
}

/// A comment after cleaning, tokenization and tagging.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaggedComment {
    pub comment_id: u64,
    pub path: String,
    pub language: Language,
    pub tokens: Vec<TaggedToken>,
}

/// Assigns a tag to a single normalized (lowercased) token. Taggers see one
/// token at a time, without sentence context.
pub trait Tagger {
    fn tag(&self, norm: &str) -> PosTag;
}

const DETERMINERS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "each", "every", "either", "neither",
    "some", "any", "no", "all", "both", "such", "another", "which", "what", "whose",
];

const PREPOSITIONS: &[&str] = &[
    "of", "in", "on", "at", "by", "for", "with", "from", "to", "into", "onto", "upon", "over",
    "under", "above", "below", "between", "among", "amongst", "through", "throughout", "during",
    "before", "after", "against", "about", "across", "along", "around", "behind", "beneath",
    "beside", "besides", "beyond", "despite", "down", "except", "inside", "near", "off", "out",
    "outside", "past", "per", "since", "than", "till", "toward", "towards", "underneath",
    "until", "unto", "up", "via", "within", "without", "like", "versus", "vs", "amid", "atop",
    "as", "if", "because", "while", "whereas", "although", "though", "unless", "whether",
    "when", "whenever", "where", "wherever",
];

const CONJUNCTIONS: &[&str] = &["and", "or", "but", "nor"];

const PARTICLES: &[&str] = &["not"];

const PRONOUNS: &[&str] = &[
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "my", "your",
    "his", "its", "our", "their", "mine", "yours", "hers", "ours", "theirs", "myself",
    "yourself", "himself", "herself", "itself", "ourselves", "yourselves", "themselves", "who",
    "whom", "something", "anything", "nothing", "everything", "someone", "anyone", "everyone",
    "somebody", "anybody", "everybody", "nobody", "none", "it's", "that's", "there's",
];

const NUMBER_WORDS: &[&str] = &[
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
    "hundred", "thousand", "million", "billion", "trillion",
];

/// Word-list driven tagger. Lookup order: noun overrides, closed classes,
/// numbers, verbs, adjectives, adverbs, suffix heuristics, then NOUN as the
/// fallback. The open-class lists live in `src/pos_words/` and hold explicit
/// word forms only; nothing is inflected at runtime.
pub struct BaselineTagger {
    noun_overrides: HashSet<&'static str>,
    verbs: HashSet<&'static str>,
    adjectives: HashSet<&'static str>,
    adverbs: HashSet<&'static str>,
    determiners: HashSet<&'static str>,
    prepositions: HashSet<&'static str>,
    pronouns: HashSet<&'static str>,
    numbers: HashSet<&'static str>,
}

fn word_list(data: &'static str) -> HashSet<&'static str> {
    data.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .collect()
}

impl BaselineTagger {
    pub fn new() -> Self {
        BaselineTagger {
            noun_overrides: word_list(include_str!("pos_words/noun_overrides.txt")),
            verbs: word_list(include_str!("pos_words/verbs.txt")),
            adjectives: word_list(include_str!("pos_words/adjectives.txt")),
            adverbs: word_list(include_str!("pos_words/adverbs.txt")),
            determiners: DETERMINERS.iter().copied().collect(),
            prepositions: PREPOSITIONS.iter().copied().collect(),
            pronouns: PRONOUNS.iter().copied().collect(),
            numbers: NUMBER_WORDS.iter().copied().collect(),
        }
    }
}

impl Default for BaselineTagger {
    fn default() -> Self {
        Self::new()
    }
}

impl Tagger for BaselineTagger {
    fn tag(&self, norm: &str) -> PosTag {
        if self.noun_overrides.contains(norm) {
            return PosTag::Noun;
        }
        if self.determiners.contains(norm) {
            return PosTag::Det;
        }
        if self.prepositions.contains(norm) {
            return PosTag::Adp;
        }
        if CONJUNCTIONS.contains(&norm) {
            return PosTag::Conj;
        }
        if PARTICLES.contains(&norm) {
            return PosTag::Part;
        }
        if self.pronouns.contains(norm) {
            return PosTag::Pron;
        }
        if self.numbers.contains(norm) || is_cardinal(norm) {
            return PosTag::Num;
        }
        if self.verbs.contains(norm) {
            return PosTag::Verb;
        }
        if self.adjectives.contains(norm) {
            return PosTag::Adj;
        }
        if self.adverbs.contains(norm) {
            return PosTag::Adv;
        }
        suffix_tag(norm).unwrap_or(PosTag::Noun)
    }
}

/// Suffix heuristics for words absent from every list. Length guards keep
/// short words like "king", "bed" or "table" from matching.
fn suffix_tag(norm: &str) -> Option<PosTag> {
    let n = norm.len();
    if norm.ends_with("ing") && n >= 5 {
        return Some(PosTag::Verb);
    }
    if norm.ends_with("ed") && n >= 5 {
        return Some(PosTag::Verb);
    }
    if norm.ends_with("ly") && n >= 4 {
        return Some(PosTag::Adv);
    }
    if (norm.ends_with("ous") || norm.ends_with("ive")) && n >= 5 {
        return Some(PosTag::Adj);
    }
    if norm.ends_with("al") && n >= 5 {
        return Some(PosTag::Adj);
    }
    if (norm.ends_with("able") || norm.ends_with("ible")) && n >= 6 {
        return Some(PosTag::Adj);
    }
    None
}

/// True for digit tokens ("42", "3.14", "1,000", "-7") and hex ("0xff").
fn is_cardinal(norm: &str) -> bool {
    let s = norm.strip_prefix('-').unwrap_or(norm);
    if let Some(hex) = s.strip_prefix("0x") {
        return !hex.is_empty() && hex.chars().all(|c| c.is_ascii_hexdigit());
    }
    s.chars().any(|c| c.is_ascii_digit())
        && s.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}

fn forced_tag(norm: &str) -> Option<PosTag> {
    // The anchor word is what every mined phrase ends in; it must stay a
    // noun no matter which tagger runs.
    if norm == "algorithm" || norm == "algorithms" {
        Some(PosTag::Noun)
    } else {
        None
    }
}

/// Cleans, tokenizes and tags one comment body.
pub fn tag_text<T: Tagger + ?Sized>(tagger: &T, text: &str) -> Vec<TaggedToken> {
    let cleaned = clean_text(text);
    tokenize(&cleaned)
        .into_iter()
        .map(|surface| {
            let norm = surface.to_lowercase();
            let pos = forced_tag(&norm).unwrap_or_else(|| tagger.tag(&norm));
            TaggedToken::new(surface, pos)
        })
        .collect()
}

/// Tags supplied by an external tool, keyed by comment id.
///
/// Format: one block per comment, introduced by `#id <comment_id>`, then one
/// `token<TAB>TAG` line per token, blocks separated by blank lines. Labels
/// outside the known set fall back to OTHER and are reported in `warnings`.
#[derive(Debug, Default)]
pub struct Sidecar {
    pub blocks: BTreeMap<u64, Vec<(String, PosTag)>>,
    pub warnings: Vec<String>,
}

pub fn parse_sidecar(text: &str) -> Result<Sidecar> {
    let mut sidecar = Sidecar::default();
    let mut current: Option<u64> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if let Some(rest) = line.strip_prefix("#id") {
            let id: u64 = rest.trim().parse().map_err(|_| {
                Error::Sidecar(format!("line {}: bad comment id {:?}", lineno, rest.trim()))
            })?;
            if sidecar.blocks.contains_key(&id) {
                return Err(Error::Sidecar(format!(
                    "line {}: duplicate block for comment {}",
                    lineno, id
                )));
            }
            sidecar.blocks.insert(id, Vec::new());
            current = Some(id);
            continue;
        }
        if line.trim().is_empty() {
            current = None;
            continue;
        }
        let id = current.ok_or_else(|| {
            Error::Sidecar(format!("line {}: token line before any #id header", lineno))
        })?;
        let (token, label) = line.split_once('\t').ok_or_else(|| {
            Error::Sidecar(format!("line {}: expected token<TAB>TAG", lineno))
        })?;
        let tag = match coarsen(label.trim()) {
            Some(tag) => tag,
            None => {
                sidecar.warnings.push(format!(
                    "sidecar line {}: unknown tag {:?} for token {:?}, using OTHER",
                    lineno,
                    label.trim(),
                    token
                ));
                PosTag::Other
            }
        };
        sidecar
            .blocks
            .get_mut(&id)
            .expect("current block exists")
            .push((token.to_string(), tag));
    }
    Ok(sidecar)
}

/// Tags a batch of comments in parallel. Sidecar blocks, when given, replace
/// the tagger's output for the comments they name; their token counts must
/// match what tokenization produces, and ids that match no comment are an
/// error.
pub fn tag_comments<T: Tagger + Sync>(
    docs: &[CorpusRecord],
    tagger: &T,
    sidecar: Option<&Sidecar>,
) -> Result<Vec<TaggedComment>> {
    if let Some(sc) = sidecar {
        let known: HashSet<u64> = docs.iter().map(|d| d.comment_id).collect();
        for id in sc.blocks.keys() {
            if !known.contains(id) {
                return Err(Error::UnknownCommentId(*id));
            }
        }
    }
    docs.par_iter()
        .map(|doc| tag_comment(doc, tagger, sidecar))
        .collect()
}

fn tag_comment<T: Tagger>(
    doc: &CorpusRecord,
    tagger: &T,
    sidecar: Option<&Sidecar>,
) -> Result<TaggedComment> {
    let tokens = match sidecar.and_then(|sc| sc.blocks.get(&doc.comment_id)) {
        Some(block) => {
            let cleaned = clean_text(&doc.text);
            let surfaces = tokenize(&cleaned);
            if surfaces.len() != block.len() {
                return Err(Error::TokenCountMismatch {
                    comment_id: doc.comment_id,
                    expected: surfaces.len(),
                    got: block.len(),
                });
            }
            surfaces
                .into_iter()
                .zip(block)
                .map(|(surface, (_, tag))| {
                    let norm = surface.to_lowercase();
                    let pos = forced_tag(&norm).unwrap_or(*tag);
                    TaggedToken::new(surface, pos)
                })
                .collect()
        }
        None => tag_text(tagger, &doc.text),
    };
    Ok(TaggedComment {
        comment_id: doc.comment_id,
        path: doc.path.clone(),
        language: doc.language,
        tokens,
    })
}
