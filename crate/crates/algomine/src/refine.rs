//! Candidate refinement: strip unnecessary head words, keep the longest
//! match inside each comment, then group occurrences per term and vote on
//! the majority part-of-speech sequence.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::language::Language;
use crate::ngram::CandidateOccurrence;
use crate::pos::{FlaggedTag, PosTag};

/// How a term group fared in majority voting. Singleton takes precedence:
/// a group with one occurrence is a singleton even though that occurrence
/// is trivially a majority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupStatus {
    HasMajority,
    NoMajority,
    Singleton,
}

/// All surviving occurrences of one term in one language, with the voting
/// outcome over their POS sequences.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefinedTermGroup {
    pub tokens: Vec<String>,
    pub language: Language,
    pub status: GroupStatus,
    pub majority_pos: Option<Vec<FlaggedTag>>,
    pub occurrences: Vec<CandidateOccurrence>,
}

/// Number of leading tags to drop: repeatedly remove a VERB,ADP pair, or a
/// single leading ADP, NUM or DET, until neither rule applies. The pair
/// check ignores the ing flag.
pub fn strip_offset(tags: &[FlaggedTag]) -> usize {
    let mut i = 0;
    loop {
        let rest = &tags[i..];
        if rest.len() >= 2 && rest[0].tag == PosTag::Verb && rest[1].tag == PosTag::Adp {
            i += 2;
            continue;
        }
        if rest
            .first()
            .is_some_and(|t| matches!(t.tag, PosTag::Adp | PosTag::Num | PosTag::Det))
        {
            i += 1;
            continue;
        }
        return i;
    }
}

/// Drops unnecessary head words from an occurrence. Stripped surface tokens
/// move into the context so excerpts still show them. Returns None when
/// fewer than two tokens remain: a bare "algorithm" is not a name.
pub fn strip_head(mut occ: CandidateOccurrence) -> Option<CandidateOccurrence> {
    let k = strip_offset(&occ.pos);
    if occ.tokens.len() - k < 2 {
        return None;
    }
    if k > 0 {
        occ.before.extend(occ.surfaces.drain(..k));
        occ.tokens.drain(..k);
        occ.pos.drain(..k);
        occ.start += k;
    }
    Some(occ)
}

/// Longest-match filtering within one comment: identical spans collapse to
/// one occurrence, and spans strictly contained in another surviving span
/// are dropped.
pub fn keep_longest(mut occs: Vec<CandidateOccurrence>) -> Vec<CandidateOccurrence> {
    debug_assert!(
        occs.windows(2).all(|w| w[0].comment_id == w[1].comment_id),
        "keep_longest operates within a single comment"
    );
    occs.sort_by_key(|o| (o.start, o.end));
    occs.dedup_by_key(|o| (o.start, o.end));
    let spans: Vec<(usize, usize)> = occs.iter().map(|o| (o.start, o.end)).collect();
    occs.retain(|o| {
        !spans.iter().any(|&(s, e)| {
            s <= o.start && o.end <= e && (s < o.start || o.end < e)
        })
    });
    occs
}

/// Groups surviving occurrences by (language, token sequence) and finds the
/// POS sequence carried by strictly more than half of each group, when one
/// exists. The ing flag is part of a sequence's identity.
pub fn group_and_vote(occs: Vec<CandidateOccurrence>) -> Vec<RefinedTermGroup> {
    let mut grouped: BTreeMap<(Language, Vec<String>), Vec<CandidateOccurrence>> =
        BTreeMap::new();
    for occ in occs {
        grouped
            .entry((occ.language, occ.tokens.clone()))
            .or_default()
            .push(occ);
    }
    grouped
        .into_iter()
        .map(|((language, tokens), mut occurrences)| {
            occurrences.sort_by(|a, b| {
                (&a.path, a.comment_id, a.start).cmp(&(&b.path, b.comment_id, b.start))
            });
            let total = occurrences.len();
            let mut votes: HashMap<&[FlaggedTag], usize> = HashMap::new();
            for occ in &occurrences {
                *votes.entry(occ.pos.as_slice()).or_insert(0) += 1;
            }
            let majority_pos = votes
                .iter()
                .find(|(_, &count)| count * 2 > total)
                .map(|(seq, _)| seq.to_vec());
            let status = if total == 1 {
                GroupStatus::Singleton
            } else if majority_pos.is_some() {
                GroupStatus::HasMajority
            } else {
                GroupStatus::NoMajority
            };
            RefinedTermGroup { tokens, language, status, majority_pos, occurrences }
        })
        .collect()
}

/// The whole refinement stage: strip heads, keep longest per comment, group
/// and vote. Output groups are sorted by (language, tokens).
pub fn refine_candidates(occs: Vec<CandidateOccurrence>) -> Vec<RefinedTermGroup> {
    let mut per_comment: BTreeMap<u64, Vec<CandidateOccurrence>> = BTreeMap::new();
    for occ in occs {
        if let Some(stripped) = strip_head(occ) {
            per_comment.entry(stripped.comment_id).or_default().push(stripped);
        }
    }
    let survivors: Vec<CandidateOccurrence> = per_comment
        .into_values()
        .flat_map(keep_longest)
        .collect();
    group_and_vote(survivors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pos::{tag_text, BaselineTagger, TaggedComment};

    fn tagged(id: u64, text: &str) -> TaggedComment {
        TaggedComment {
            comment_id: id,
            path: format!("f{}.c", id),
            language: Language::C,
            tokens: tag_text(&BaselineTagger::new(), text),
        }
    }

    /// Builds an occurrence straight from text, bypassing df/weight gates.
    fn occ_of(id: u64, text: &str, start: usize, end: usize) -> CandidateOccurrence {
        let c = tagged(id, text);
        CandidateOccurrence {
            comment_id: c.comment_id,
            path: c.path.clone(),
            language: c.language,
            start,
            end,
            tokens: c.tokens[start..end].iter().map(|t| t.norm.clone()).collect(),
            pos: c.tokens[start..end].iter().map(|t| t.flagged()).collect(),
            surfaces: c.tokens[start..end].iter().map(|t| t.surface.clone()).collect(),
            before: c.tokens[..start].iter().map(|t| t.surface.clone()).collect(),
            after: c.tokens[end..].iter().map(|t| t.surface.clone()).collect(),
        }
    }

    fn flags(tags: &[PosTag]) -> Vec<FlaggedTag> {
        tags.iter().copied().map(FlaggedTag::plain).collect()
    }

    #[test]
    fn strip_removes_single_head_words() {
        // "of the search algorithm": ADP, DET, NOUN, NOUN.
        let occ = occ_of(1, "of the search algorithm", 0, 4);
        let stripped = strip_head(occ).unwrap();
        assert_eq!(stripped.tokens, ["search", "algorithm"]);
        assert_eq!(stripped.start, 2);
        assert_eq!(stripped.before, ["of", "the"]);
    }

    #[test]
    fn strip_removes_verb_adp_pair() {
        // "based on hash algorithm": VERB, ADP, NOUN, NOUN.
        let occ = occ_of(1, "based on hash algorithm", 0, 4);
        let stripped = strip_head(occ).unwrap();
        assert_eq!(stripped.tokens, ["hash", "algorithm"]);
    }

    #[test]
    fn strip_returns_none_for_short_residue() {
        // "the algorithm": DET, NOUN.
        let occ = occ_of(1, "the algorithm", 0, 2);
        assert!(strip_head(occ).is_none());
    }

    #[test]
    fn strip_leaves_clean_heads_alone() {
        let occ = occ_of(1, "greedy search algorithm", 0, 3);
        let stripped = strip_head(occ.clone()).unwrap();
        assert_eq!(stripped.tokens, occ.tokens);
        assert_eq!(stripped.start, occ.start);
    }

    #[test]
    fn strip_offset_reaches_a_fixpoint() {
        use PosTag::*;
        // VERB ADP, then DET, then NUM all strip away.
        let tags = flags(&[Verb, Adp, Det, Num, Noun, Noun]);
        assert_eq!(strip_offset(&tags), 4);
        // Idempotent: stripping the remainder strips nothing.
        assert_eq!(strip_offset(&tags[4..]), 0);
        // A VERB not followed by ADP stays.
        assert_eq!(strip_offset(&flags(&[Verb, Noun, Noun])), 0);
    }

    #[test]
    fn keep_longest_drops_nested_spans() {
        let long = occ_of(1, "uses the insertion sort algorithm", 2, 5);
        let short = occ_of(1, "uses the insertion sort algorithm", 3, 5);
        let kept = keep_longest(vec![short, long.clone()]);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].tokens, long.tokens);
    }

    #[test]
    fn keep_longest_dedups_identical_spans() {
        let a = occ_of(1, "insertion sort algorithm", 0, 3);
        let kept = keep_longest(vec![a.clone(), a]);
        assert_eq!(kept.len(), 1);
    }

    #[test]
    fn keep_longest_keeps_disjoint_spans() {
        let text = "sort algorithm here and merge algorithm there";
        let a = occ_of(1, text, 0, 2);
        let b = occ_of(1, text, 4, 6);
        let kept = keep_longest(vec![a, b]);
        assert_eq!(kept.len(), 2);
    }

    #[test]
    fn vote_finds_strict_majority() {
        // Three NOUN,NOUN readings and one VERB,NOUN reading.
        let mut occs = vec![
            occ_of(1, "sort algorithm", 0, 2),
            occ_of(2, "sort algorithm", 0, 2),
            occ_of(3, "sort algorithm", 0, 2),
        ];
        let mut odd = occ_of(4, "sort algorithm", 0, 2);
        odd.pos[0] = FlaggedTag::plain(PosTag::Verb);
        occs.push(odd);

        let groups = group_and_vote(occs);
        assert_eq!(groups.len(), 1);
        let g = &groups[0];
        assert_eq!(g.status, GroupStatus::HasMajority);
        assert_eq!(
            g.majority_pos.as_deref().unwrap(),
            flags(&[PosTag::Noun, PosTag::Noun]).as_slice()
        );
        assert_eq!(g.occurrences.len(), 4);
    }

    #[test]
    fn even_split_has_no_majority() {
        let a = occ_of(1, "blur algorithm", 0, 2);
        let mut b = occ_of(2, "blur algorithm", 0, 2);
        b.pos[0] = FlaggedTag::plain(PosTag::Adj);
        let groups = group_and_vote(vec![a, b]);
        assert_eq!(groups[0].status, GroupStatus::NoMajority);
        assert!(groups[0].majority_pos.is_none());
    }

    #[test]
    fn single_occurrence_is_a_singleton() {
        let groups = group_and_vote(vec![occ_of(1, "bogosort algorithm", 0, 2)]);
        assert_eq!(groups[0].status, GroupStatus::Singleton);
    }

    #[test]
    fn ing_flag_distinguishes_votes() {
        // "learning algorithm" with VERB-ing vs NOUN readings of "learning".
        let text = "learning algorithm";
        let mut a = occ_of(1, text, 0, 2);
        a.pos[0] = FlaggedTag::VERB_ING;
        let mut b = occ_of(2, text, 0, 2);
        b.pos[0] = FlaggedTag::VERB_ING;
        let mut c = occ_of(3, text, 0, 2);
        c.pos[0] = FlaggedTag::plain(PosTag::Noun);

        let groups = group_and_vote(vec![a, b, c]);
        let g = &groups[0];
        assert_eq!(g.status, GroupStatus::HasMajority);
        assert_eq!(g.majority_pos.as_ref().unwrap()[0], FlaggedTag::VERB_ING);
    }

    #[test]
    fn groups_split_by_language() {
        let mut a = occ_of(1, "sort algorithm", 0, 2);
        let mut b = occ_of(2, "sort algorithm", 0, 2);
        a.language = Language::C;
        b.language = Language::Ruby;
        let groups = group_and_vote(vec![a, b]);
        assert_eq!(groups.len(), 2);
        assert!(groups.iter().all(|g| g.status == GroupStatus::Singleton));
    }

    #[test]
    fn refine_collapses_stripped_duplicates() {
        // A head-word window and the bare window strip to the same span,
        // so only one occurrence per comment survives.
        let text = "using an insertion sort algorithm";
        let with_head = occ_of(1, text, 1, 5);
        let bare = occ_of(1, text, 2, 5);
        let groups = refine_candidates(vec![with_head, bare]);
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].tokens, ["insertion", "sort", "algorithm"]);
        assert_eq!(groups[0].occurrences.len(), 1);
        assert_eq!(groups[0].status, GroupStatus::Singleton);
    }

    #[test]
    fn refine_discards_bare_anchor_residue() {
        let groups = refine_candidates(vec![occ_of(1, "the algorithm", 0, 2)]);
        assert!(groups.is_empty());
    }

    #[test]
    fn group_order_is_deterministic() {
        let occs = vec![
            occ_of(1, "zeta algorithm", 0, 2),
            occ_of(2, "alpha algorithm", 0, 2),
            occ_of(3, "merge algorithm", 0, 2),
        ];
        let groups = group_and_vote(occs);
        let names: Vec<&str> = groups.iter().map(|g| g.tokens[0].as_str()).collect();
        assert_eq!(names, ["alpha", "merge", "zeta"]);
    }
}
