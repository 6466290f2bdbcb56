//! NLI examples and line-delimited corpus I/O.
//!
//! A corpus file holds one JSON record per line with the keys `id` (optional),
//! `premise`, `hypothesis` and `label`. Labels are either the integer codes
//! `0`/`1`/`2` or the lowercase names; `-1` marks an unlabeled pair. The raw
//! SNLI key names (`pairID`, `sentence1`, `sentence2`, `gold_label`) are
//! accepted as aliases so the distributed files can be read directly.

use std::collections::HashSet;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Three-way inference class with the SNLI integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Entailment,
    Neutral,
    Contradiction,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Entailment, Label::Neutral, Label::Contradiction];

    pub fn code(self) -> u8 {
        match self {
            Label::Entailment => 0,
            Label::Neutral => 1,
            Label::Contradiction => 2,
        }
    }

    pub fn from_code(code: i64) -> Option<Label> {
        match code {
            0 => Some(Label::Entailment),
            1 => Some(Label::Neutral),
            2 => Some(Label::Contradiction),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Entailment => "entailment",
            Label::Neutral => "neutral",
            Label::Contradiction => "contradiction",
        }
    }

    pub fn index(self) -> usize {
        self.code() as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = RecordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "entailment" => Ok(Label::Entailment),
            "neutral" => Ok(Label::Neutral),
            "contradiction" => Ok(Label::Contradiction),
            other => Err(RecordError::UnknownLabel(other.to_string())),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.code())
    }
}

/// Decodes a label value as found in a record. `Ok(None)` is the unlabeled
/// marker (`-1`, or `"-"` in raw SNLI).
pub(crate) fn label_from_value(value: &Value) -> Result<Option<Label>, RecordError> {
    match value {
        Value::Number(n) => match n.as_i64() {
            Some(-1) => Ok(None),
            Some(code) => Label::from_code(code)
                .map(Some)
                .ok_or_else(|| RecordError::UnknownLabel(n.to_string())),
            None => Err(RecordError::UnknownLabel(n.to_string())),
        },
        Value::String(s) if s == "-" => Ok(None),
        Value::String(s) => s.parse().map(Some),
        other => Err(RecordError::UnknownLabel(other.to_string())),
    }
}

pub(crate) fn id_from_value(value: &Value) -> Result<String, RecordError> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(RecordError::Malformed(format!(
            "id must be text, got {other}"
        ))),
    }
}

/// One premise/hypothesis pair with its gold label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example {
    pub id: String,
    pub premise: String,
    pub hypothesis: String,
    pub label: Label,
}

/// An ordered, duplicate-free collection of examples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    name: String,
    examples: Vec<Example>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, examples: Vec<Example>) -> Result<Self, DuplicateId> {
        let mut seen = HashSet::with_capacity(examples.len());
        for ex in &examples {
            if !seen.insert(ex.id.as_str()) {
                return Err(DuplicateId(ex.id.clone()));
            }
        }
        Ok(Self {
            name: name.into(),
            examples,
        })
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            examples: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Example> {
        self.examples.iter()
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn into_examples(self) -> Vec<Example> {
        self.examples
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Example;
    type IntoIter = std::slice::Iter<'a, Example>;

    fn into_iter(self) -> Self::IntoIter {
        self.examples.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("duplicate example id {0:?}")]
pub struct DuplicateId(pub String);

/// Why a single record could not become an [`Example`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("empty {0} field")]
    EmptyField(&'static str),
    #[error("unlabeled example (gold label -1)")]
    Unlabeled,
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("line {line}: {source}")]
    Record {
        line: usize,
        #[source]
        source: RecordError,
    },
    #[error("line {line}: duplicate example id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Deserialize)]
struct RawRecord {
    #[serde(default, alias = "pairID")]
    id: Option<Value>,
    #[serde(alias = "sentence1")]
    premise: Option<String>,
    #[serde(alias = "sentence2")]
    hypothesis: Option<String>,
    #[serde(alias = "gold_label")]
    label: Option<Value>,
}

fn required(field: Option<String>, name: &'static str) -> Result<String, RecordError> {
    let text = field.ok_or_else(|| RecordError::Malformed(format!("missing {name}")))?;
    if text.trim().is_empty() {
        return Err(RecordError::EmptyField(name));
    }
    Ok(text)
}

/// Parses one corpus record. `fallback_id` is used when the record has no id.
pub fn parse_example(line: &str, fallback_id: &str) -> Result<Example, RecordError> {
    let raw: RawRecord =
        serde_json::from_str(line).map_err(|e| RecordError::Malformed(e.to_string()))?;
    let label = match raw.label {
        None | Some(Value::Null) => return Err(RecordError::Malformed("missing label".into())),
        Some(ref v) => label_from_value(v)?.ok_or(RecordError::Unlabeled)?,
    };
    let premise = required(raw.premise, "premise")?;
    let hypothesis = required(raw.hypothesis, "hypothesis")?;
    let id = match raw.id {
        None | Some(Value::Null) => fallback_id.to_string(),
        Some(ref v) => id_from_value(v)?,
    };
    Ok(Example {
        id,
        premise,
        hypothesis,
        label,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReadOptions {
    /// Count and drop records whose gold label is `-1`.
    pub skip_unlabeled: bool,
    /// Count and drop records that fail to parse instead of aborting.
    pub skip_malformed: bool,
}

impl Default for ReadOptions {
    fn default() -> Self {
        Self {
            skip_unlabeled: true,
            skip_malformed: false,
        }
    }
}

/// Line accounting for one ingest. `kept + skipped() + errored == lines`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub lines: usize,
    pub kept: usize,
    pub skipped_unlabeled: usize,
    pub skipped_blank: usize,
    pub errored: usize,
}

impl IngestReport {
    pub fn skipped(&self) -> usize {
        self.skipped_unlabeled + self.skipped_blank
    }
}

impl fmt::Display for IngestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} lines: kept {}, skipped {} unlabeled, {} blank, {} malformed",
            self.lines, self.kept, self.skipped_unlabeled, self.skipped_blank, self.errored
        )
    }
}

/// Reads a corpus, preserving line order. Missing ids become `<name>:<line>`
/// with 1-based line numbers.
pub fn read_corpus<R: BufRead>(
    reader: R,
    name: &str,
    opts: ReadOptions,
) -> Result<(Corpus, IngestReport), ReadError> {
    let mut report = IngestReport::default();
    let mut examples = Vec::new();
    let mut seen = HashSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        report.lines += 1;
        if line.trim().is_empty() {
            report.skipped_blank += 1;
            continue;
        }
        let fallback = format!("{name}:{line_no}");
        match parse_example(&line, &fallback) {
            Ok(ex) => {
                if !seen.insert(ex.id.clone()) {
                    if opts.skip_malformed {
                        report.errored += 1;
                        continue;
                    }
                    return Err(ReadError::DuplicateId {
                        line: line_no,
                        id: ex.id,
                    });
                }
                report.kept += 1;
                examples.push(ex);
            }
            Err(RecordError::Unlabeled) if opts.skip_unlabeled => report.skipped_unlabeled += 1,
            Err(_) if opts.skip_malformed => report.errored += 1,
            Err(source) => {
                return Err(ReadError::Record {
                    line: line_no,
                    source,
                })
            }
        }
    }

    let corpus = Corpus {
        name: name.to_string(),
        examples,
    };
    Ok((corpus, report))
}

/// Writes one record per line in the fixed key order id, premise, hypothesis,
/// label (integer). Returns the number of records written.
pub fn write_corpus<W: Write>(corpus: &Corpus, sink: W) -> io::Result<usize> {
    write_examples(corpus.iter(), sink)
}

pub fn write_examples<'a, W, I>(examples: I, mut sink: W) -> io::Result<usize>
where
    W: Write,
    I: IntoIterator<Item = &'a Example>,
{
    let mut count = 0;
    for ex in examples {
        serde_json::to_writer(&mut sink, ex)?;
        sink.write_all(b"\n")?;
        count += 1;
    }
    sink.flush()?;
    Ok(count)
}
