//! Scoring classified records against a hand-labeled oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rules::{AlgorithmNameRecord, VerdictValue};

/// Hand-assigned labels, one per distinct term.
#[derive(Debug, Clone, Default)]
pub struct OracleLabels {
    labels: BTreeMap<String, VerdictValue>,
}

impl OracleLabels {
    pub fn get(&self, term: &str) -> Option<VerdictValue> {
        self.labels.get(term).copied()
    }

    pub fn insert(&mut self, term: String, label: VerdictValue) -> Option<VerdictValue> {
        self.labels.insert(term, label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labeled terms in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, VerdictValue)> {
        self.labels.iter().map(|(term, label)| (term.as_str(), *label))
    }
}

/// Reads a `term,label` CSV. A `term,label` header row is optional,
/// `#` lines are comments, labels are `valid` or `invalid`, and a term
/// may only be labeled once.
pub fn read_oracle_csv(path: &Path) -> Result<OracleLabels> {
    let err = |message: String| Error::Csv { path: path.to_path_buf(), message };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| Error::Csv { path: path.to_path_buf(), message: e.to_string() })?;

    let mut oracle = OracleLabels::default();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| err(e.to_string()))?;
        if row.len() != 2 {
            return Err(err(format!("row {}: expected 2 fields, got {}", i + 1, row.len())));
        }
        let term = row[0].trim().to_lowercase();
        let label = row[1].trim().to_lowercase();
        if i == 0 && term == "term" && label == "label" {
            continue;
        }
        let label = match label.as_str() {
            "valid" => VerdictValue::Valid,
            "invalid" => VerdictValue::Invalid,
            other => return Err(err(format!("row {}: unknown label {:?}", i + 1, other))),
        };
        if oracle.insert(term.clone(), label).is_some() {
            return Err(err(format!("row {}: duplicate term {:?}", i + 1, term)));
        }
    }
    Ok(oracle)
}

/// Confusion counts and derived metrics. Metrics with a zero denominator
/// are `None` and print as "n/a"; they are never coerced to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f_measure: Option<f64>,
}

impl EvalReport {
    pub fn from_counts(tp: u64, fp: u64, fn_: u64, tn: u64) -> EvalReport {
        let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f_measure = match (precision, recall) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            _ => None,
        };
        EvalReport { tp, fp, fn_, tn, precision, recall, f_measure }
    }

    pub fn labeled(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

fn metric(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{:.4}", v),
        None => "n/a".to_string(),
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "labeled predictions: {}", self.labeled())?;
        writeln!(f, "tp: {}  fp: {}  fn: {}  tn: {}", self.tp, self.fp, self.fn_, self.tn)?;
        writeln!(f, "precision: {}", metric(self.precision))?;
        writeln!(f, "recall:    {}", metric(self.recall))?;
        write!(f, "f-measure: {}", metric(self.f_measure))
    }
}

/// Scores predictions against the oracle. Every predicted term must be
/// labeled; unlabeled terms abort with the full list so the labeling
/// session knows what is missing.
pub fn evaluate(predictions: &[AlgorithmNameRecord], oracle: &OracleLabels) -> Result<EvalReport> {
    let mut missing: Vec<String> = predictions
        .iter()
        .map(|r| r.term())
        .filter(|term| oracle.get(term).is_none())
        .collect();
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(Error::MissingOracleLabels(missing));
    }

    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for record in predictions {
        let predicted_valid = record.verdict.is_valid();
        let oracle_valid = oracle.get(&record.term()) == Some(VerdictValue::Valid);
        match (predicted_valid, oracle_valid) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }
    Ok(EvalReport::from_counts(tp, fp, fn_, tn))
}
