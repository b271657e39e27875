//! Frequency tables and provenance listings over classified name records.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::Language;
use crate::rules::AlgorithmNameRecord;

/// One ranked line of the frequency table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub rank: u64,
    pub language: Language,
    pub term: String,
    pub frequency: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    Md,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Md),
            other => Err(format!("unknown report format: {}", other)),
        }
    }
}

/// Terms excluded from reports. One term per line, `#` comments allowed;
/// matching is exact on the normalized term.
#[derive(Debug, Clone, Default)]
pub struct Denylist {
    terms: std::collections::BTreeSet<String>,
}

impl Denylist {
    pub fn load(path: &Path) -> Result<Denylist> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let terms = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| line.to_lowercase())
            .collect();
        Ok(Denylist { terms })
    }

    pub fn denies(&self, term: &str) -> bool {
        self.terms.contains(term)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn ranked(mut records: Vec<&AlgorithmNameRecord>, top_k: usize) -> Vec<(u64, &AlgorithmNameRecord)> {
    records.sort_by(|a, b| {
        b.frequency
            .cmp(&a.frequency)
            .then_with(|| a.tokens.cmp(&b.tokens))
            .then_with(|| a.language.cmp(&b.language))
    });
    records
        .into_iter()
        .take(top_k)
        .enumerate()
        .map(|(i, r)| (i as u64 + 1, r))
        .collect()
}

/// Ranks valid records by descending frequency, ties broken by token
/// order. With `by_language` each language gets its own top-k ranking;
/// otherwise the ranking is global.
pub fn build_frequency_table(
    records: &[AlgorithmNameRecord],
    top_k: usize,
    by_language: bool,
    denylist: Option<&Denylist>,
) -> Vec<TableRow> {
    let keep = |r: &&AlgorithmNameRecord| {
        r.verdict.is_valid() && denylist.map_or(true, |d| !d.denies(&r.term()))
    };
    let to_row = |(rank, r): (u64, &AlgorithmNameRecord)| TableRow {
        rank,
        language: r.language,
        term: r.term(),
        frequency: r.frequency,
    };
    if by_language {
        let mut groups: BTreeMap<Language, Vec<&AlgorithmNameRecord>> = BTreeMap::new();
        for record in records.iter().filter(keep) {
            groups.entry(record.language).or_default().push(record);
        }
        groups
            .into_values()
            .flat_map(|group| ranked(group, top_k))
            .map(to_row)
            .collect()
    } else {
        ranked(records.iter().filter(keep).collect(), top_k)
            .into_iter()
            .map(to_row)
            .collect()
    }
}

pub fn format_csv(rows: &[TableRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["rank", "language", "term", "frequency"])
        .and_then(|_| {
            rows.iter().try_for_each(|row| {
                writer.write_record([
                    row.rank.to_string(),
                    row.language.to_string(),
                    row.term.clone(),
                    row.frequency.to_string(),
                ])
            })
        })
        .map_err(|e| Error::Csv {
            path: "<report>".into(),
            message: e.to_string(),
        })?;
    let bytes = writer.into_inner().expect("in-memory csv writer");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn format_json(rows: &[TableRow]) -> Result<String> {
    let mut out = serde_json::to_string_pretty(rows).map_err(|e| Error::Csv {
        path: "<report>".into(),
        message: e.to_string(),
    })?;
    out.push('\n');
    Ok(out)
}

/// Column order of the published ranking table.
const MD_COLUMNS: [Language; 7] = [
    Language::Java,
    Language::Ruby,
    Language::Python,
    Language::Php,
    Language::C,
    Language::Cpp,
    Language::JavaScript,
];

fn md_heading(lang: Language) -> &'static str {
    match lang {
        Language::C => "C",
        Language::Cpp => "Cpp",
        Language::Java => "Java",
        Language::JavaScript => "JavaScript",
        Language::Python => "Python",
        Language::Php => "PHP",
        Language::Ruby => "Ruby",
    }
}

/// Drops the trailing anchor word for display, as the published table
/// abbreviates it.
fn md_term(term: &str) -> &str {
    term.strip_suffix(" algorithms")
        .or_else(|| term.strip_suffix(" algorithm"))
        .unwrap_or(term)
}

/// Renders ranks as rows and languages as columns, each cell holding the
/// abbreviated term with its frequency beneath.
pub fn format_md(rows: &[TableRow]) -> String {
    let columns: Vec<Language> = MD_COLUMNS
        .into_iter()
        .filter(|lang| rows.iter().any(|row| row.language == *lang))
        .collect();
    let max_rank = rows.iter().map(|row| row.rank).max().unwrap_or(0);

    let mut cells: BTreeMap<(u64, Language), &TableRow> = BTreeMap::new();
    for row in rows {
        cells.insert((row.rank, row.language), row);
    }

    let mut out = String::from("| Rank |");
    for lang in &columns {
        out.push_str(&format!(" {} |", md_heading(*lang)));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(columns.len()));
    out.push('\n');
    for rank in 1..=max_rank {
        out.push_str(&format!("| {} |", rank));
        for lang in &columns {
            match cells.get(&(rank, *lang)) {
                Some(row) => {
                    out.push_str(&format!(" {}<br>{} |", md_term(&row.term), row.frequency))
                }
                None => out.push_str("  |"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn render(rows: &[TableRow], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => format_csv(rows),
        ReportFormat::Json => format_json(rows),
        ReportFormat::Md => Ok(format_md(rows)),
    }
}

/// One evidence line of the provenance listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRow {
    pub language: Language,
    pub path: String,
    pub excerpt: String,
}

/// Lists up to `limit` provenance rows per record, in record order.
pub fn export_provenance(records: &[AlgorithmNameRecord], limit: usize) -> Vec<ProvenanceRow> {
    records
        .iter()
        .flat_map(|record| {
            record.provenance.iter().take(limit).map(|entry| ProvenanceRow {
                language: record.language,
                path: entry.path.clone(),
                excerpt: entry.excerpt.clone(),
            })
        })
        .collect()
}

pub fn format_provenance_csv(rows: &[ProvenanceRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["language", "path", "excerpt"])
        .and_then(|_| {
            rows.iter().try_for_each(|row| {
                writer.write_record([row.language.to_string(), row.path.clone(), row.excerpt.clone()])
            })
        })
        .map_err(|e| Error::Csv {
            path: "<provenance>".into(),
            message: e.to_string(),
        })?;
    let bytes = writer.into_inner().expect("in-memory csv writer");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_provenance(rows: &[ProvenanceRow], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => format_provenance_csv(rows),
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(rows).map_err(|e| Error::Csv {
                path: "<provenance>".into(),
                message: e.to_string(),
            })?;
            out.push('\n');
            Ok(out)
        }
        ReportFormat::Md => {
            let mut out = String::from("| Language | Path | Excerpt |\n|---|---|---|\n");
            for row in rows {
                out.push_str(&format!(
                    "| {} | {} | {} |\n",
                    md_heading(row.language),
                    row.path,
                    row.excerpt.replace('|', "\\|")
                ));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pos::{FlaggedTag, PosTag};
    use crate::rules::{ProvenanceEntry, Verdict, VerdictValue};

    fn record(term: &str, language: Language, frequency: u64, valid: bool) -> AlgorithmNameRecord {
        let tokens: Vec<String> = term.split(' ').map(str::to_string).collect();
        let pos = vec![FlaggedTag::plain(PosTag::Noun); tokens.len()];
        let provenance = (0..frequency)
            .map(|i| ProvenanceEntry {
                path: format!("src/file{}.c", i),
                comment_id: i + 1,
                excerpt: format!("uses the **{}** here", term),
            })
            .collect();
        AlgorithmNameRecord {
            tokens,
            language,
            majority_pos: pos,
            verdict: Verdict {
                value: if valid { VerdictValue::Valid } else { VerdictValue::Invalid },
                matched_branch: "only_noun".into(),
            },
            frequency,
            provenance,
        }
    }

    #[test]
    fn table_sorts_by_frequency_then_term() {
        let records = vec![
            record("compression algorithm", Language::C, 2592, true),
            record("hash algorithm", Language::C, 3193, true),
            record("auth algorithm", Language::C, 2592, true),
        ];
        let rows = build_frequency_table(&records, 10, true, None);
        let order: Vec<(&str, u64)> =
            rows.iter().map(|r| (r.term.as_str(), r.rank)).collect();
        assert_eq!(
            order,
            vec![
                ("hash algorithm", 1),
                ("auth algorithm", 2),
                ("compression algorithm", 3),
            ]
        );
    }

    #[test]
    fn invalid_records_never_reach_the_table() {
        let records = vec![
            record("hash algorithm", Language::C, 10, true),
            record("the algorithm", Language::C, 99, false),
        ];
        let rows = build_frequency_table(&records, 10, false, None);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].term, "hash algorithm");
    }

    #[test]
    fn by_language_ranks_restart_per_language() {
        let records = vec![
            record("hash algorithm", Language::C, 5, true),
            record("search algorithm", Language::C, 3, true),
            record("kex algorithm", Language::Ruby, 2, true),
        ];
        let rows = build_frequency_table(&records, 10, true, None);
        let ruby: Vec<&TableRow> =
            rows.iter().filter(|r| r.language == Language::Ruby).collect();
        assert_eq!(ruby.len(), 1);
        assert_eq!(ruby[0].rank, 1);
    }

    #[test]
    fn global_mode_ranks_across_languages() {
        let records = vec![
            record("hash algorithm", Language::C, 5, true),
            record("kex algorithm", Language::Ruby, 7, true),
        ];
        let rows = build_frequency_table(&records, 10, false, None);
        assert_eq!(rows[0].term, "kex algorithm");
        assert_eq!(rows[0].rank, 1);
        assert_eq!(rows[1].term, "hash algorithm");
        assert_eq!(rows[1].rank, 2);
    }

    #[test]
    fn top_k_truncates() {
        let records: Vec<AlgorithmNameRecord> = (0..5)
            .map(|i| record(&format!("name{} algorithm", i), Language::C, 10 - i, true))
            .collect();
        assert_eq!(build_frequency_table(&records, 2, true, None).len(), 2);
    }

    #[test]
    fn denylist_removes_exact_terms() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("deny.txt");
        std::fs::write(&path, "# names to drop\nsfrcacc algorithm\n\n").unwrap();
        let denylist = Denylist::load(&path).unwrap();
        assert_eq!(denylist.len(), 1);
        let records = vec![
            record("sfrcacc algorithm", Language::C, 9, true),
            record("hash algorithm", Language::C, 5, true),
        ];
        let rows = build_frequency_table(&records, 10, true, Some(&denylist));
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].term, "hash algorithm");
    }

    #[test]
    fn csv_has_the_documented_columns() {
        let records = vec![record("hash algorithm", Language::C, 3193, true)];
        let rows = build_frequency_table(&records, 10, true, None);
        let csv = format_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("rank,language,term,frequency"));
        assert_eq!(lines.next(), Some("1,c,hash algorithm,3193"));
    }

    #[test]
    fn markdown_pivots_languages_into_columns() {
        let records = vec![
            record("search algorithm", Language::Java, 3142, true),
            record("encryption algorithm", Language::Ruby, 537, true),
            record("hash algorithm", Language::C, 3193, true),
        ];
        let rows = build_frequency_table(&records, 10, true, None);
        let md = format_md(&rows);
        let mut lines = md.lines();
        assert_eq!(lines.next(), Some("| Rank | Java | Ruby | C |"));
        assert_eq!(lines.next(), Some("|---|---|---|---|"));
        let row = lines.next().unwrap();
        assert!(row.contains("Search") || row.contains("search"), "{}", row);
        // The anchor word is abbreviated away in this format only.
        assert!(!md.contains("search algorithm"), "{}", md);
        assert!(row.contains("search<br>3142"), "{}", row);
    }

    #[test]
    fn json_round_trips() {
        let records = vec![record("hash algorithm", Language::C, 3193, true)];
        let rows = build_frequency_table(&records, 10, true, None);
        let json = format_json(&rows).unwrap();
        let back: Vec<TableRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn provenance_rows_respect_the_per_record_limit() {
        let records = vec![
            record("rc4 algorithm", Language::Php, 5, true),
            record("hash algorithm", Language::C, 3, true),
        ];
        let rows = export_provenance(&records, 2);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].language, Language::Php);
        assert!(rows[0].excerpt.contains("**rc4 algorithm**"));
        let csv = format_provenance_csv(&rows).unwrap();
        assert!(csv.starts_with("language,path,excerpt\n"));
    }

    #[test]
    fn empty_input_yields_empty_outputs() {
        let rows = build_frequency_table(&[], 10, true, None);
        assert!(rows.is_empty());
        assert_eq!(format_csv(&rows).unwrap(), "rank,language,term,frequency\n");
        assert!(export_provenance(&[], 3).is_empty());
    }

    #[test]
    fn table_frequencies_cover_all_valid_records() {
        let records = vec![
            record("hash algorithm", Language::C, 5, true),
            record("search algorithm", Language::C, 3, true),
            record("the algorithm", Language::C, 9, false),
        ];
        let rows = build_frequency_table(&records, 100, true, None);
        let table_sum: u64 = rows.iter().map(|r| r.frequency).sum();
        let record_sum: u64 = records
            .iter()
            .filter(|r| r.verdict.is_valid())
            .map(|r| r.frequency)
            .sum();
        assert_eq!(table_sum, record_sum);
    }
}
