//! One-shot orchestration of the pipeline stages over a directory tree.
//!
//! Every stage writes its intermediate file into the output directory, so a
//! `run` leaves the same artifacts behind as running the subcommands one by
//! one, and any stage's output can be inspected or re-fed manually. All
//! ordering is deterministic, which makes reruns byte-identical.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::extract::{extract_corpus, CorpusRecord, ExtractOptions};
use crate::jsonl::write_jsonl;
use crate::ngram::{count_ngrams, select_candidates, MineOptions};
use crate::pos::{parse_sidecar, tag_comments, BaselineTagger, Sidecar};
use crate::refine::refine_candidates;
use crate::report::{build_frequency_table, export_provenance, format_csv, format_provenance_csv, Denylist};
use crate::rules::classify_groups;
use crate::scan::{scan_tree, to_manifest};

/// Canonical file names for each stage's output inside one out directory.
#[derive(Debug, Clone)]
pub struct StageFiles {
    pub files: PathBuf,
    pub skipped: PathBuf,
    pub comments: PathBuf,
    pub tagged: PathBuf,
    pub candidates: PathBuf,
    pub groups: PathBuf,
    pub names: PathBuf,
    pub report: PathBuf,
    pub provenance: PathBuf,
}

impl StageFiles {
    pub fn new(out_dir: &Path) -> StageFiles {
        StageFiles {
            files: out_dir.join("files.jsonl"),
            skipped: out_dir.join("skipped.jsonl"),
            comments: out_dir.join("comments.jsonl"),
            tagged: out_dir.join("tagged.jsonl"),
            candidates: out_dir.join("candidates.jsonl"),
            groups: out_dir.join("groups.jsonl"),
            names: out_dir.join("names.jsonl"),
            report: out_dir.join("report.csv"),
            provenance: out_dir.join("provenance.csv"),
        }
    }
}

/// Per-stage record counts, reported after a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub files: usize,
    pub skipped: usize,
    pub comments: usize,
    pub candidates: usize,
    pub groups: usize,
    pub records: usize,
    pub valid_records: usize,
    pub report_rows: usize,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let files = StageFiles::new(&self.out_dir);
        writeln!(
            f,
            "scan:     {} files ({} skipped) -> {}",
            self.files,
            self.skipped,
            files.files.display()
        )?;
        writeln!(f, "extract:  {} comments -> {}", self.comments, files.comments.display())?;
        writeln!(f, "tag:      {} comments -> {}", self.comments, files.tagged.display())?;
        writeln!(
            f,
            "mine:     {} candidate occurrences -> {}",
            self.candidates,
            files.candidates.display()
        )?;
        writeln!(f, "refine:   {} term groups -> {}", self.groups, files.groups.display())?;
        writeln!(
            f,
            "classify: {} records ({} valid) -> {}",
            self.records,
            self.valid_records,
            files.names.display()
        )?;
        write!(
            f,
            "report:   {} rows -> {} (provenance in {})",
            self.report_rows,
            files.report.display(),
            files.provenance.display()
        )
    }
}

fn load_sidecar(path: &Path) -> Result<Sidecar> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let sidecar = parse_sidecar(&text)?;
    for warning in &sidecar.warnings {
        log::warn!("{}", warning);
    }
    Ok(sidecar)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// How many provenance rows each record contributes to `provenance.csv`.
const PROVENANCE_LIMIT: usize = 3;

/// How many table rows each language keeps in `report.csv`.
const REPORT_TOP_K: usize = 10;

/// Runs scan, extract, tag, mine, refine, classify and report over `root`,
/// writing each stage's output under `out_dir`.
pub fn run_pipeline(root: &Path, out_dir: &Path, config: &PipelineConfig) -> Result<RunSummary> {
    config.validate()?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let files = StageFiles::new(out_dir);

    // Scan.
    let stage = "scan";
    let outcome = scan_tree(root, Some(&config.languages)).map_err(|e| e.in_stage(stage))?;
    write_jsonl(&files.files, &to_manifest(&outcome.files)).map_err(|e| e.in_stage(stage))?;
    write_jsonl(&files.skipped, &outcome.skips).map_err(|e| e.in_stage(stage))?;
    log::info!("scan: {} files, {} skipped", outcome.files.len(), outcome.skips.len());

    // Extract.
    let stage = "extract";
    let opts = ExtractOptions { docstrings: config.docstrings };
    let extracted = extract_corpus(&outcome.files, &opts);
    for warning in &extracted.warnings {
        log::warn!("{}", warning);
    }
    let corpus: Vec<CorpusRecord> = extracted.docs.iter().map(|d| d.to_record()).collect();
    write_jsonl(&files.comments, &corpus).map_err(|e| e.in_stage(stage))?;
    log::info!("extract: {} comments", corpus.len());

    // Tag.
    let stage = "tag";
    let sidecar = match &config.sidecar_path {
        Some(path) => Some(load_sidecar(path).map_err(|e| e.in_stage(stage))?),
        None => None,
    };
    let tagger = BaselineTagger::new();
    let tagged =
        tag_comments(&corpus, &tagger, sidecar.as_ref()).map_err(|e| e.in_stage(stage))?;
    write_jsonl(&files.tagged, &tagged).map_err(|e| e.in_stage(stage))?;

    // Mine.
    let stage = "mine";
    let mine_opts =
        MineOptions { max_n: config.max_n, min_df: config.min_df, match_plural: false };
    let stats = count_ngrams(&tagged, mine_opts.max_n);
    let candidates = select_candidates(&tagged, &stats, &mine_opts);
    write_jsonl(&files.candidates, &candidates).map_err(|e| e.in_stage(stage))?;
    log::info!("mine: {} candidate occurrences", candidates.len());

    // Refine.
    let stage = "refine";
    let n_candidates = candidates.len();
    let groups = refine_candidates(candidates);
    write_jsonl(&files.groups, &groups).map_err(|e| e.in_stage(stage))?;
    log::info!("refine: {} term groups", groups.len());

    // Classify.
    let stage = "classify";
    let extras = config.extra_patterns();
    let records = classify_groups(&groups, &extras).map_err(|e| e.in_stage(stage))?;
    write_jsonl(&files.names, &records).map_err(|e| e.in_stage(stage))?;
    let valid_records = records.iter().filter(|r| r.verdict.is_valid()).count();
    log::info!("classify: {} records, {} valid", records.len(), valid_records);

    // Report.
    let stage = "report";
    let denylist = match &config.denylist_path {
        Some(path) => Some(Denylist::load(path).map_err(|e| e.in_stage(stage))?),
        None => None,
    };
    let rows = build_frequency_table(&records, REPORT_TOP_K, true, denylist.as_ref());
    let table = format_csv(&rows).map_err(|e| e.in_stage(stage))?;
    write_text(&files.report, &table).map_err(|e| e.in_stage(stage))?;
    let valid: Vec<_> = records
        .iter()
        .filter(|r| {
            r.verdict.is_valid()
                && denylist.as_ref().map_or(true, |d| !d.denies(&r.term()))
        })
        .cloned()
        .collect();
    let provenance_rows = export_provenance(&valid, PROVENANCE_LIMIT);
    let provenance = format_provenance_csv(&provenance_rows).map_err(|e| e.in_stage(stage))?;
    write_text(&files.provenance, &provenance).map_err(|e| e.in_stage(stage))?;

    Ok(RunSummary {
        out_dir: out_dir.to_path_buf(),
        files: outcome.files.len(),
        skipped: outcome.skips.len(),
        comments: corpus.len(),
        candidates: n_candidates,
        groups: groups.len(),
        records: records.len(),
        valid_records,
        report_rows: rows.len(),
    })
}
