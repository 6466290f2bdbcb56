//! Explicit negation cue detection and negation-based corpus partitioning.
//!
//! A token is a cue when its case-folded form is exactly `not` or ends in
//! `n't`. The right single quotation mark is folded to an ASCII apostrophe
//! first, so `isn’t` counts. `nothing`, `knot` and `cannot` are not cues.

use serde::Serialize;

use crate::corpus::{Corpus, Example, Label};
use crate::tokenize::{tokenize, Token, TokenSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Premise,
    Hypothesis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CueHit {
    pub field: Field,
    pub token_index: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NegationVerdict {
    pub has_negation: bool,
    pub cue_spans: Vec<CueHit>,
}

impl NegationVerdict {
    fn from_hits(cue_spans: Vec<CueHit>) -> Self {
        Self {
            has_negation: !cue_spans.is_empty(),
            cue_spans,
        }
    }
}

pub fn fold_cue_form(text: &str) -> String {
    text.to_lowercase().replace('\u{2019}', "'")
}

pub fn is_cue(token: &str) -> bool {
    if token.is_ascii() {
        let bytes = token.as_bytes();
        return token.eq_ignore_ascii_case("not")
            || (bytes.len() >= 3 && bytes[bytes.len() - 3..].eq_ignore_ascii_case(b"n't"));
    }
    let folded = fold_cue_form(token);
    folded == "not" || folded.ends_with("n't")
}

pub fn cue_indices(tokens: &TokenSeq) -> impl Iterator<Item = usize> + '_ {
    tokens
        .iter()
        .enumerate()
        .filter(|(_, t): &(usize, &Token)| is_cue(&t.text))
        .map(|(i, _)| i)
}

fn field_hits(text: &str, field: Field) -> Vec<CueHit> {
    cue_indices(&tokenize(text))
        .map(|token_index| CueHit { field, token_index })
        .collect()
}

/// Cue detection over a single text. Hits are reported against the premise
/// field; use [`example_has_negation`] for field-attributed hits.
pub fn contains_negation(text: &str) -> NegationVerdict {
    NegationVerdict::from_hits(field_hits(text, Field::Premise))
}

pub fn text_has_negation(text: &str) -> bool {
    tokenize(text).iter().any(|t| is_cue(&t.text))
}

pub fn example_has_negation(ex: &Example) -> NegationVerdict {
    let mut hits = field_hits(&ex.premise, Field::Premise);
    hits.extend(field_hits(&ex.hypothesis, Field::Hypothesis));
    NegationVerdict::from_hits(hits)
}

pub fn is_negated_example(ex: &Example) -> bool {
    text_has_negation(&ex.premise) || text_has_negation(&ex.hypothesis)
}

/// Splits a corpus into (examples with a cue, examples without). Both halves
/// keep input order.
pub fn split_by_negation(corpus: &Corpus) -> (Corpus, Corpus) {
    let (negated, plain): (Vec<Example>, Vec<Example>) =
        corpus.iter().cloned().partition(is_negated_example);
    let name = corpus.name();
    // ids are unique in the source, hence in any subset
    (
        Corpus::new(format!("{name}.negation"), negated).expect("subset of unique ids"),
        Corpus::new(format!("{name}.complement"), plain).expect("subset of unique ids"),
    )
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PerLabelCounts {
    pub entailment: usize,
    pub neutral: usize,
    pub contradiction: usize,
}

impl PerLabelCounts {
    fn bump(&mut self, label: Label) {
        match label {
            Label::Entailment => self.entailment += 1,
            Label::Neutral => self.neutral += 1,
            Label::Contradiction => self.contradiction += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct NegationStats {
    pub total: usize,
    pub with_negation: usize,
    pub premise_cued: usize,
    pub hypothesis_cued: usize,
    /// `with_negation / total`, or 0 when `ratio_defined` is false.
    pub ratio: f64,
    pub ratio_defined: bool,
    pub per_label: PerLabelCounts,
}

pub fn negation_stats(corpus: &Corpus) -> NegationStats {
    let mut stats = NegationStats {
        total: corpus.len(),
        ..Default::default()
    };
    for ex in corpus {
        let in_premise = text_has_negation(&ex.premise);
        let in_hypothesis = text_has_negation(&ex.hypothesis);
        stats.premise_cued += usize::from(in_premise);
        stats.hypothesis_cued += usize::from(in_hypothesis);
        if in_premise || in_hypothesis {
            stats.with_negation += 1;
            stats.per_label.bump(ex.label);
        }
    }
    if stats.total > 0 {
        stats.ratio = stats.with_negation as f64 / stats.total as f64;
        stats.ratio_defined = true;
    }
    stats
}
