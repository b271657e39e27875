//! Command-line front end: one subcommand per pipeline stage plus `run`.
//!
//! Exit codes: 0 on success, 1 for usage problems (bad flags, bad config),
//! 2 when a stage fails on its input. Log verbosity is controlled only by
//! the RUST_LOG environment variable.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use algomine::config::{ConfigOverrides, PipelineConfig};
use algomine::error::{Error, Result};
use algomine::eval::{evaluate, read_oracle_csv};
use algomine::extract::{extract_corpus, CorpusRecord, ExtractOptions};
use algomine::jsonl::{read_jsonl, write_jsonl};
use algomine::language::Language;
use algomine::ngram::{count_ngrams, select_candidates, write_stats_csv, CandidateOccurrence, MineOptions};
use algomine::pipeline::run_pipeline;
use algomine::pos::{parse_sidecar, tag_comments, BaselineTagger, Sidecar, TaggedComment};
use algomine::refine::{refine_candidates, RefinedTermGroup};
use algomine::report::{
    build_frequency_table, export_provenance, render, render_provenance, Denylist, ReportFormat,
};
use algomine::rules::{classify_groups, extra_pattern, AlgorithmNameRecord};
use algomine::scan::{load_manifest, scan_tree, to_manifest, FileRecord};

#[derive(Parser)]
#[command(name = "algomine", version, about = "Mines algorithm names from source-code comments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a directory tree and write the source-file manifest
    Scan {
        /// Directory to walk
        root: PathBuf,
        /// Comma-separated language filter (default: all seven)
        #[arg(long, value_delimiter = ',')]
        lang: Vec<String>,
        /// Manifest output (JSONL)
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract comments from the files named by a manifest
    Extract {
        /// Manifest produced by scan (JSONL)
        #[arg(long = "in")]
        input: PathBuf,
        /// Comment corpus output (JSONL)
        #[arg(long)]
        out: PathBuf,
        /// Do not treat Python docstrings as comments
        #[arg(long)]
        no_docstrings: bool,
    },
    /// Tokenize comments and tag each token with a part of speech
    Tag {
        /// Comment corpus (JSONL)
        #[arg(long = "in")]
        input: PathBuf,
        /// Tagged corpus output (JSONL)
        #[arg(long)]
        out: PathBuf,
        /// Tag file from an external tagger, applied by comment id
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Mine candidate phrases ending in the anchor word
    Mine {
        /// Tagged corpus (JSONL)
        #[arg(long = "in")]
        input: PathBuf,
        /// Candidate occurrences output (JSONL)
        #[arg(long)]
        out: PathBuf,
        /// Longest n-gram considered (2-8)
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Minimum document frequency for a candidate
        #[arg(long, default_value_t = 2)]
        min_df: u64,
        /// Also write the full n-gram statistics table as CSV
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Accept windows ending in "algorithms" as well
        #[arg(long)]
        match_plural: bool,
    },
    /// Strip head words, keep longest matches, and vote on POS sequences
    Refine {
        /// Candidate occurrences (JSONL)
        #[arg(long = "in")]
        input: PathBuf,
        /// Term groups output (JSONL)
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify term groups as valid or invalid algorithm names
    Classify {
        /// Term groups (JSONL)
        #[arg(long = "in")]
        input: PathBuf,
        /// Name records output (JSONL)
        #[arg(long)]
        out: PathBuf,
        /// Extra inclusive pattern labels (e.g. ADJ_NOUN), comma-separated
        #[arg(long, value_delimiter = ',')]
        extra_inclusive: Vec<String>,
    },
    /// Print a ranked frequency table of the valid names
    Report {
        /// Name records (JSONL)
        #[arg(long = "in")]
        input: PathBuf,
        /// Rows kept per ranking
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Rank within each language instead of globally
        #[arg(long)]
        by_language: bool,
        /// Output format: csv, json or md
        #[arg(long, default_value = "csv")]
        format: String,
        /// File of terms to exclude, one per line
        #[arg(long)]
        denylist: Option<PathBuf>,
        /// Print provenance rows (this many per record) instead of the table
        #[arg(long)]
        provenance: Option<usize>,
    },
    /// Score classified names against a labeled oracle
    Eval {
        /// Name records (JSONL)
        #[arg(long = "in")]
        input: PathBuf,
        /// Oracle CSV with term,label rows
        #[arg(long)]
        oracle: PathBuf,
    },
    /// Run every stage over a directory tree
    Run {
        /// Directory to mine
        root: PathBuf,
        /// TOML config file; CLI flags take precedence over it
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for stage outputs
        #[arg(long, default_value = "algomine-out")]
        out: PathBuf,
    },
}

fn parse_languages(names: &[String]) -> Result<Option<BTreeSet<Language>>> {
    if names.is_empty() {
        return Ok(None);
    }
    let set = names
        .iter()
        .map(|name| name.parse::<Language>().map_err(Error::Config))
        .collect::<Result<BTreeSet<Language>>>()?;
    Ok(Some(set))
}

fn load_sidecar(path: &Path) -> Result<Sidecar> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let sidecar = parse_sidecar(&text)?;
    for warning in &sidecar.warnings {
        log::warn!("{}", warning);
    }
    Ok(sidecar)
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Scan { root, lang, out } => {
            let languages = parse_languages(&lang)?;
            let outcome =
                scan_tree(&root, languages.as_ref()).map_err(|e| e.in_stage("scan"))?;
            write_jsonl(&out, &to_manifest(&outcome.files)).map_err(|e| e.in_stage("scan"))?;
            println!("scanned {} files ({} skipped)", outcome.files.len(), outcome.skips.len());
        }
        Command::Extract { input, out, no_docstrings } => {
            let stage = "extract";
            let manifest: Vec<FileRecord> =
                read_jsonl(&input).map_err(|e| e.in_stage(stage))?;
            let files = load_manifest(&manifest).map_err(|e| e.in_stage(stage))?;
            let opts = ExtractOptions { docstrings: !no_docstrings };
            let result = extract_corpus(&files, &opts);
            for warning in &result.warnings {
                log::warn!("{}", warning);
            }
            let records: Vec<CorpusRecord> = result.docs.iter().map(|d| d.to_record()).collect();
            write_jsonl(&out, &records).map_err(|e| e.in_stage(stage))?;
            println!("extracted {} comments from {} files", records.len(), files.len());
        }
        Command::Tag { input, out, sidecar } => {
            let stage = "tag";
            let corpus: Vec<CorpusRecord> =
                read_jsonl(&input).map_err(|e| e.in_stage(stage))?;
            let sidecar = match &sidecar {
                Some(path) => Some(load_sidecar(path).map_err(|e| e.in_stage(stage))?),
                None => None,
            };
            let tagged = tag_comments(&corpus, &BaselineTagger::new(), sidecar.as_ref())
                .map_err(|e| e.in_stage(stage))?;
            write_jsonl(&out, &tagged).map_err(|e| e.in_stage(stage))?;
            println!("tagged {} comments", tagged.len());
        }
        Command::Mine { input, out, max_n, min_df, stats, match_plural } => {
            let stage = "mine";
            if !(2..=8).contains(&max_n) {
                return Err(Error::Config(format!(
                    "max_n must be between 2 and 8, got {}",
                    max_n
                )));
            }
            if min_df < 1 {
                return Err(Error::Config("min_df must be at least 1".into()));
            }
            let corpus: Vec<TaggedComment> =
                read_jsonl(&input).map_err(|e| e.in_stage(stage))?;
            let table = count_ngrams(&corpus, max_n);
            if let Some(path) = stats {
                write_stats_csv(&path, &table).map_err(|e| e.in_stage(stage))?;
            }
            let opts = MineOptions { max_n, min_df, match_plural };
            let candidates = select_candidates(&corpus, &table, &opts);
            write_jsonl(&out, &candidates).map_err(|e| e.in_stage(stage))?;
            println!(
                "mined {} candidate occurrences from {} comments",
                candidates.len(),
                corpus.len()
            );
        }
        Command::Refine { input, out } => {
            let stage = "refine";
            let candidates: Vec<CandidateOccurrence> =
                read_jsonl(&input).map_err(|e| e.in_stage(stage))?;
            let n = candidates.len();
            let groups = refine_candidates(candidates);
            write_jsonl(&out, &groups).map_err(|e| e.in_stage(stage))?;
            println!("refined {} occurrences into {} term groups", n, groups.len());
        }
        Command::Classify { input, out, extra_inclusive } => {
            let stage = "classify";
            let mut extras = Vec::new();
            for label in &extra_inclusive {
                let pattern = extra_pattern(label).ok_or_else(|| {
                    Error::Config(format!("unknown extra-inclusive pattern label: {}", label))
                })?;
                extras.push(pattern);
            }
            let groups: Vec<RefinedTermGroup> =
                read_jsonl(&input).map_err(|e| e.in_stage(stage))?;
            let records = classify_groups(&groups, &extras).map_err(|e| e.in_stage(stage))?;
            let valid = records.iter().filter(|r| r.verdict.is_valid()).count();
            write_jsonl(&out, &records).map_err(|e| e.in_stage(stage))?;
            println!("classified {} records ({} valid)", records.len(), valid);
        }
        Command::Report { input, top, by_language, format, denylist, provenance } => {
            let stage = "report";
            let format: ReportFormat = format.parse().map_err(Error::Config)?;
            let records: Vec<AlgorithmNameRecord> =
                read_jsonl(&input).map_err(|e| e.in_stage(stage))?;
            let denylist = match &denylist {
                Some(path) => Some(Denylist::load(path).map_err(|e| e.in_stage(stage))?),
                None => None,
            };
            let output = match provenance {
                Some(limit) => {
                    let kept: Vec<AlgorithmNameRecord> = records
                        .into_iter()
                        .filter(|r| {
                            r.verdict.is_valid()
                                && denylist.as_ref().map_or(true, |d| !d.denies(&r.term()))
                        })
                        .collect();
                    let rows = export_provenance(&kept, limit);
                    render_provenance(&rows, format).map_err(|e| e.in_stage(stage))?
                }
                None => {
                    // The Markdown layout pivots to one column per language,
                    // so its ranks always restart per language.
                    let by_language = by_language || format == ReportFormat::Md;
                    let rows =
                        build_frequency_table(&records, top, by_language, denylist.as_ref());
                    render(&rows, format).map_err(|e| e.in_stage(stage))?
                }
            };
            print!("{}", output);
        }
        Command::Eval { input, oracle } => {
            let stage = "eval";
            let records: Vec<AlgorithmNameRecord> =
                read_jsonl(&input).map_err(|e| e.in_stage(stage))?;
            let oracle = read_oracle_csv(&oracle).map_err(|e| e.in_stage(stage))?;
            let report = evaluate(&records, &oracle).map_err(|e| e.in_stage(stage))?;
            println!("{}", report);
        }
        Command::Run { root, config, out } => {
            let config = PipelineConfig::load(config.as_deref(), &ConfigOverrides::default())?;
            let summary = run_pipeline(&root, &out, &config)?;
            println!("{}", summary);
        }
    }
    Ok(())
}

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            e.print().expect("failed to write argument error");
            std::process::exit(code);
        }
    };
    if let Err(e) = execute(cli.command) {
        eprintln!("error: {}", e);
        std::process::exit(if e.is_usage() { 1 } else { 2 });
    }
}
