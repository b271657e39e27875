//! Validity classification of majority POS sequences.
//!
//! The branch cascade below is order-sensitive and deliberately verbatim:
//! each arm corresponds to one rule of the published rule set, and
//! `matched_branch` records which arm fired so downstream audits can see
//! why a term was accepted or rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::Language;
use crate::pos::{FlaggedTag, PosTag};
use crate::refine::{GroupStatus, RefinedTermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictValue {
    Valid,
    Invalid,
}

/// Classification outcome plus the branch label that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: VerdictValue,
    pub matched_branch: String,
}

impl Verdict {
    fn valid(branch: &str) -> Self {
        Verdict { value: VerdictValue::Valid, matched_branch: branch.to_string() }
    }

    fn invalid(branch: &str) -> Self {
        Verdict { value: VerdictValue::Invalid, matched_branch: branch.to_string() }
    }

    pub fn is_valid(&self) -> bool {
        self.value == VerdictValue::Valid
    }
}

/// Every label `classify_with` can emit.
pub const BRANCH_LABELS: &[&str] = &[
    "extra_inclusive",
    "only_noun",
    "contains_conj",
    "contains_det",
    "verb_ing_noun",
    "noun_verb_noun",
    "verb_adj_noun_noun_noun",
    "contains_verb_other",
    "adj_adj_noun",
    "adj_noun_noun",
    "noun_adj_noun",
    "adj_adj_noun_noun",
    "adj_noun_adj_noun",
    "adj_noun_other",
    "adv_adp_noun",
    "contains_adp_other",
    "adv_noun",
    "adv_part_noun",
    "adv_adj_adj_noun",
    "adv_adj_adj_noun_noun",
    "contains_adv_other",
    "default",
];

/// Named extra patterns accepted by the `--extra-inclusive` switch.
pub const EXTRA_PATTERNS: &[(&str, &[PosTag])] =
    &[("ADJ_NOUN", &[PosTag::Adj, PosTag::Noun])];

/// Resolves an extra-pattern label to its tag sequence.
pub fn extra_pattern(label: &str) -> Option<Vec<FlaggedTag>> {
    EXTRA_PATTERNS
        .iter()
        .find(|(name, _)| *name == label)
        .map(|(_, tags)| tags.iter().copied().map(FlaggedTag::plain).collect())
}

/// Classifies with the default rule set only.
pub fn classify(seq: &[FlaggedTag]) -> Result<Verdict> {
    classify_with(seq, &[])
}

/// Classifies a POS sequence. `extra_valid` patterns, normally empty, are
/// checked first and mark a term valid before the regular cascade runs.
pub fn classify_with(seq: &[FlaggedTag], extra_valid: &[Vec<FlaggedTag>]) -> Result<Verdict> {
    if seq.is_empty() {
        return Err(Error::EmptyPosSequence);
    }
    if extra_valid.iter().any(|p| p.as_slice() == seq) {
        return Ok(Verdict::valid("extra_inclusive"));
    }
    Ok(cascade(seq))
}

fn cascade(seq: &[FlaggedTag]) -> Verdict {
    use PosTag::*;
    let has = |tag: PosTag| seq.iter().any(|t| t.tag == tag);
    let shape: Vec<PosTag> = seq.iter().map(|t| t.tag).collect();

    // 1. Nothing but nouns.
    if seq.iter().all(|t| t.tag == Noun) {
        return Verdict::valid("only_noun");
    }
    // 2. Coordinating conjunction anywhere.
    if has(Conj) {
        return Verdict::invalid("contains_conj");
    }
    // 3. Determiner anywhere. Checked before the verb branch on purpose:
    // a sequence with both DET and VERB must report the DET branch.
    if has(Det) {
        return Verdict::invalid("contains_det");
    }
    // 4. Any verb, flagged or not. Equality patterns distinguish the ing
    // flag; the (VERB-ing, NOUN) arm exists but marks the term invalid.
    if has(Verb) {
        let flagged: Vec<(PosTag, bool)> = seq.iter().map(|t| (t.tag, t.ing)).collect();
        return match flagged.as_slice() {
            [(Verb, true), (Noun, false)] => Verdict::invalid("verb_ing_noun"),
            [(Noun, false), (Verb, false), (Noun, false)] => Verdict::valid("noun_verb_noun"),
            [(Verb, false), (Adj, false), (Noun, false), (Noun, false), (Noun, false)] => {
                Verdict::valid("verb_adj_noun_noun_noun")
            }
            _ => Verdict::invalid("contains_verb_other"),
        };
    }
    // 5. Adjective/noun mixes: five inclusive shapes, everything else out.
    // Note (ADJ, NOUN) itself is absent from the inclusive list.
    if seq.iter().all(|t| matches!(t.tag, Adj | Noun)) {
        return match shape.as_slice() {
            [Adj, Adj, Noun] => Verdict::valid("adj_adj_noun"),
            [Adj, Noun, Noun] => Verdict::valid("adj_noun_noun"),
            [Noun, Adj, Noun] => Verdict::valid("noun_adj_noun"),
            [Adj, Adj, Noun, Noun] => Verdict::valid("adj_adj_noun_noun"),
            [Adj, Noun, Adj, Noun] => Verdict::valid("adj_noun_adj_noun"),
            _ => Verdict::invalid("adj_noun_other"),
        };
    }
    // 6. Adposition anywhere: one inclusive shape.
    if has(Adp) {
        return if shape == [Adv, Adp, Noun] {
            Verdict::valid("adv_adp_noun")
        } else {
            Verdict::invalid("contains_adp_other")
        };
    }
    // 7. Adverb anywhere: four inclusive shapes.
    if has(Adv) {
        return match shape.as_slice() {
            [Adv, Noun] => Verdict::valid("adv_noun"),
            [Adv, Part, Noun] => Verdict::valid("adv_part_noun"),
            [Adv, Adj, Adj, Noun] => Verdict::valid("adv_adj_adj_noun"),
            [Adv, Adj, Adj, Noun, Noun] => Verdict::valid("adv_adj_adj_noun_noun"),
            _ => Verdict::invalid("contains_adv_other"),
        };
    }
    // 8. Leftovers: NUM, PART without ADV, PRON, OTHER.
    Verdict::invalid("default")
}

/// One provenance row: where an accepted occurrence came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceEntry {
    pub path: String,
    pub comment_id: u64,
    pub excerpt: String,
}

/// A term that survived refinement, with its verdict and evidence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgorithmNameRecord {
    pub tokens: Vec<String>,
    pub language: Language,
    pub majority_pos: Vec<FlaggedTag>,
    pub verdict: Verdict,
    pub frequency: u64,
    pub provenance: Vec<ProvenanceEntry>,
}

impl AlgorithmNameRecord {
    pub fn term(&self) -> String {
        self.tokens.join(" ")
    }
}

/// Classifies one refined group. Only groups with a majority POS sequence
/// produce a record; singletons and split votes are excluded.
pub fn classify_group(
    group: &RefinedTermGroup,
    extra_valid: &[Vec<FlaggedTag>],
) -> Result<Option<AlgorithmNameRecord>> {
    if group.status != GroupStatus::HasMajority {
        return Ok(None);
    }
    let majority = group
        .majority_pos
        .clone()
        .expect("a has_majority group carries its majority sequence");
    let verdict = classify_with(&majority, extra_valid)?;
    let provenance: Vec<ProvenanceEntry> = group
        .occurrences
        .iter()
        .map(|occ| ProvenanceEntry {
            path: occ.path.clone(),
            comment_id: occ.comment_id,
            excerpt: occ.excerpt(),
        })
        .collect();
    Ok(Some(AlgorithmNameRecord {
        tokens: group.tokens.clone(),
        language: group.language,
        majority_pos: majority,
        verdict,
        frequency: provenance.len() as u64,
        provenance,
    }))
}

/// Classifies every group, dropping the excluded ones.
pub fn classify_groups(
    groups: &[RefinedTermGroup],
    extra_valid: &[Vec<FlaggedTag>],
) -> Result<Vec<AlgorithmNameRecord>> {
    let mut records = Vec::new();
    for group in groups {
        if let Some(record) = classify_group(group, extra_valid)? {
            records.push(record);
        }
    }
    Ok(records)
}
