//! Scoring prediction files against a gold corpus.
//!
//! Predictions are joined to gold examples by id. Gold examples without a
//! prediction are left out of the denominator and reported in the
//! [`Coverage`], never counted as wrong.

mod percent;
mod render;

use std::collections::HashMap;
use std::io::{self, BufRead};

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::corpus::{id_from_value, label_from_value, Corpus, Example, Label, RecordError};

pub use percent::Percent;
pub use render::{render_tables, ModelEval, Rendered, ReportRecord};

pub const FULL_SUBSET: &str = "full";
pub const NEGATION_SUBSET: &str = "negation";

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no prediction id matches a gold id (check the id scheme, or use positional join)")]
    EmptyJoin,
    #[error("no examples to score in subset {0:?}")]
    NoPairs(String),
    #[error("cannot compare subset {baseline:?} with subset {candidate:?}")]
    SubsetMismatch { baseline: String, candidate: String },
    #[error("prediction line {line}: {source}")]
    Record {
        line: usize,
        #[source]
        source: RecordError,
    },
    #[error("prediction line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One model's predictions keyed by example id, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionSet {
    model_name: String,
    entries: Vec<(String, Label)>,
    index: HashMap<String, usize>,
}

impl PredictionSet {
    pub fn new(
        model_name: impl Into<String>,
        entries: Vec<(String, Label)>,
    ) -> Result<Self, EvalError> {
        let mut index = HashMap::with_capacity(entries.len());
        for (i, (id, _)) in entries.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(EvalError::DuplicateId {
                    line: i + 1,
                    id: id.clone(),
                });
            }
        }
        Ok(Self {
            model_name: model_name.into(),
            entries,
            index,
        })
    }

    /// Binds id-less predictions to the corpus by position. Predictions past
    /// the end of the corpus get ids that match nothing.
    pub fn positional(model_name: impl Into<String>, corpus: &Corpus, labels: &[Label]) -> Self {
        let entries = labels
            .iter()
            .enumerate()
            .map(|(i, &label)| {
                let id = corpus
                    .examples()
                    .get(i)
                    .map_or_else(|| format!("<position {}>", i + 1), |ex| ex.id.clone());
                (id, label)
            })
            .collect();
        Self::new(model_name, entries).expect("corpus ids are unique")
    }

    pub fn model_name(&self) -> &str {
        &self.model_name
    }

    pub fn get(&self, id: &str) -> Option<Label> {
        self.index.get(id).map(|&i| self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(id, _)| id.as_str())
    }
}

#[derive(Deserialize)]
struct RawPrediction {
    #[serde(default)]
    id: Option<Value>,
    prediction: Option<Value>,
}

/// Parses prediction records. Each record carries `id` and `prediction`;
/// with `positional`, ids may be absent and are returned as `None`.
pub fn read_predictions<R: BufRead>(
    reader: R,
    positional: bool,
) -> Result<Vec<(Option<String>, Label)>, EvalError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let record_err = |source| EvalError::Record {
            line: line_no,
            source,
        };
        let raw: RawPrediction = serde_json::from_str(&line)
            .map_err(|e| record_err(RecordError::Malformed(e.to_string())))?;
        let label = match raw.prediction {
            None | Some(Value::Null) => {
                return Err(record_err(RecordError::Malformed(
                    "missing prediction".into(),
                )))
            }
            Some(ref v) => label_from_value(v)
                .map_err(record_err)?
                .ok_or_else(|| record_err(RecordError::UnknownLabel("-1".into())))?,
        };
        let id = match raw.id {
            None | Some(Value::Null) if positional => None,
            None | Some(Value::Null) => {
                return Err(record_err(RecordError::Malformed("missing id".into())))
            }
            Some(ref v) => Some(id_from_value(v).map_err(record_err)?),
        };
        out.push((id, label));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pair {
    /// Position of the gold example in the corpus.
    pub index: usize,
    pub gold: Label,
    pub predicted: Label,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coverage {
    /// Gold ids with no prediction, in corpus order.
    pub missing: Vec<String>,
    /// Prediction ids with no gold example, in file order.
    pub extra: Vec<String>,
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Joined {
    pub pairs: Vec<Pair>,
    pub coverage: Coverage,
}

pub fn join(corpus: &Corpus, preds: &PredictionSet) -> Result<Joined, EvalError> {
    let mut pairs = Vec::new();
    let mut coverage = Coverage::default();
    let mut gold_ids = std::collections::HashSet::with_capacity(corpus.len());
    for (index, ex) in corpus.iter().enumerate() {
        gold_ids.insert(ex.id.as_str());
        match preds.get(&ex.id) {
            Some(predicted) => pairs.push(Pair {
                index,
                gold: ex.label,
                predicted,
            }),
            None => coverage.missing.push(ex.id.clone()),
        }
    }
    coverage.extra = preds
        .ids()
        .filter(|id| !gold_ids.contains(id))
        .map(str::to_string)
        .collect();
    if pairs.is_empty() {
        return Err(EvalError::EmptyJoin);
    }
    Ok(Joined { pairs, coverage })
}

/// Gold-by-predicted counts, indexed by label code.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Confusion {
    pub counts: [[u64; 3]; 3],
}

impl Confusion {
    pub fn from_pairs<I: IntoIterator<Item = (Label, Label)>>(pairs: I) -> Self {
        let mut counts = [[0u64; 3]; 3];
        for (gold, predicted) in pairs {
            counts[gold.index()][predicted.index()] += 1;
        }
        Self { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        (0..3).map(|i| self.counts[i][i]).sum()
    }

    pub fn gold_count(&self, label: Label) -> u64 {
        self.counts[label.index()].iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassAccuracy {
    pub label: Label,
    pub n: u64,
    pub n_correct: u64,
    /// `None` when no gold example has this label.
    pub accuracy: Option<Percent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub model_name: String,
    pub subset_name: String,
    pub n_total: u64,
    pub n_correct: u64,
    pub overall: Percent,
    pub per_class: [ClassAccuracy; 3],
    pub confusion: Confusion,
}

impl EvalReport {
    pub fn from_confusion(
        model_name: &str,
        subset_name: &str,
        confusion: Confusion,
    ) -> Result<Self, EvalError> {
        let n_total = confusion.total();
        if n_total == 0 {
            return Err(EvalError::NoPairs(subset_name.to_string()));
        }
        let n_correct = confusion.correct();
        let per_class = Label::ALL.map(|label| {
            let n = confusion.gold_count(label);
            let n_correct = confusion.counts[label.index()][label.index()];
            ClassAccuracy {
                label,
                n,
                n_correct,
                accuracy: (n > 0).then(|| Percent::ratio(n_correct, n)),
            }
        });
        Ok(Self {
            model_name: model_name.to_string(),
            subset_name: subset_name.to_string(),
            n_total,
            n_correct,
            overall: Percent::ratio(n_correct, n_total),
            per_class,
            confusion,
        })
    }

    pub fn overall_accuracy_pct(&self) -> f64 {
        self.overall.as_f64()
    }

    pub fn class(&self, label: Label) -> &ClassAccuracy {
        &self.per_class[label.index()]
    }
}

/// Overall and per-class accuracy over (gold, predicted) pairs.
pub fn accuracy<I>(model_name: &str, subset_name: &str, pairs: I) -> Result<EvalReport, EvalError>
where
    I: IntoIterator<Item = (Label, Label)>,
{
    EvalReport::from_confusion(model_name, subset_name, Confusion::from_pairs(pairs))
}

/// Accuracy restricted to gold examples accepted by `subset`.
pub fn subset_eval<F>(
    corpus: &Corpus,
    preds: &PredictionSet,
    subset_name: &str,
    subset: F,
) -> Result<(EvalReport, Coverage), EvalError>
where
    F: Fn(&Example) -> bool,
{
    let joined = join(corpus, preds)?;
    let examples = corpus.examples();
    let selected = joined
        .pairs
        .iter()
        .filter(|p| subset(&examples[p.index]))
        .map(|p| (p.gold, p.predicted));
    let report = accuracy(preds.model_name(), subset_name, selected)?;
    let missing = corpus
        .iter()
        .filter(|ex| subset(ex) && preds.get(&ex.id).is_none())
        .map(|ex| ex.id.clone())
        .collect();
    let coverage = Coverage {
        missing,
        extra: joined.coverage.extra,
    };
    Ok((report, coverage))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaReport {
    pub baseline: String,
    pub candidate: String,
    pub subset_name: String,
    pub overall: Percent,
    /// `None` when either side has no gold examples of the class.
    pub per_class: [Option<Percent>; 3],
}

impl DeltaReport {
    pub fn class(&self, label: Label) -> Option<Percent> {
        self.per_class[label.index()]
    }
}

/// Candidate minus baseline, in percentage points.
pub fn compare(baseline: &EvalReport, candidate: &EvalReport) -> Result<DeltaReport, EvalError> {
    if baseline.subset_name != candidate.subset_name {
        return Err(EvalError::SubsetMismatch {
            baseline: baseline.subset_name.clone(),
            candidate: candidate.subset_name.clone(),
        });
    }
    let per_class = Label::ALL
        .map(|label| Some(candidate.class(label).accuracy? - baseline.class(label).accuracy?));
    Ok(DeltaReport {
        baseline: baseline.model_name.clone(),
        candidate: candidate.model_name.clone(),
        subset_name: baseline.subset_name.clone(),
        overall: candidate.overall - baseline.overall,
        per_class,
    })
}
