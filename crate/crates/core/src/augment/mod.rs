//! Rule-based negation augmentation.
//!
//! Three transformations are available:
//!
//! * `auto_negate_hypothesis`: insert `not` into the hypothesis and remap the
//!   label through the policy's label map (default: entailment becomes
//!   contradiction).
//! * `contrast_negate_premise`: negate the premise of an entailment pair and
//!   keep the hypothesis, giving a contradiction.
//! * `adversarial_negate_hypothesis`: negate a hypothesis that the premise
//!   supports, giving a contradiction.
//!
//! `not` goes after the first auxiliary verb, or before the first main-verb
//! candidate when the text has no auxiliary. Sources without either are
//! skipped rather than rewritten.

mod insertion;
mod lexicon;

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{Corpus, DuplicateId, Example, Label};
use crate::negation::text_has_negation;
use crate::tokenize::tokenize;

pub use insertion::{find_insertion_point, insert_not, InsertionPoint};
pub use lexicon::{AuxLexicon, LexiconError, VerbList, REQUIRED_AUX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transformation {
    AutoNegateHypothesis,
    ContrastNegatePremise,
    AdversarialNegateHypothesis,
}

impl Transformation {
    /// Emission order within a single source example.
    pub const ALL: [Transformation; 3] = [
        Transformation::AutoNegateHypothesis,
        Transformation::ContrastNegatePremise,
        Transformation::AdversarialNegateHypothesis,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Transformation::AutoNegateHypothesis => "auto_negate_hypothesis",
            Transformation::ContrastNegatePremise => "contrast_negate_premise",
            Transformation::AdversarialNegateHypothesis => "adversarial_negate_hypothesis",
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown transformation {0:?}")]
pub struct UnknownTransformation(pub String);

impl FromStr for Transformation {
    type Err = UnknownTransformation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Transformation::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| UnknownTransformation(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationPolicy {
    /// Eligible gold labels and the label each negated example receives.
    pub label_map: BTreeMap<Label, Label>,
    pub skip_already_negated: bool,
    /// Upper bound on outputs per source example across all transformations.
    pub max_per_source: Option<usize>,
    /// Rewrite bare main verbs with do/does/did instead of a plain `not`.
    pub do_support: bool,
}

impl AugmentationPolicy {
    pub fn maps_contradiction_to_entailment(&self) -> bool {
        self.label_map.get(&Label::Contradiction) == Some(&Label::Entailment)
    }
}

impl Default for AugmentationPolicy {
    fn default() -> Self {
        Self {
            label_map: BTreeMap::from([(Label::Entailment, Label::Contradiction)]),
            skip_already_negated: true,
            max_per_source: None,
            do_support: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    AlreadyNegated,
    LabelIneligible,
    NoInsertionPoint,
    PerSourceCap,
}

/// An example produced by a transformation, with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedExample {
    pub example: Example,
    pub source_id: String,
    pub transformation: Transformation,
    pub original_label: Label,
}

impl AugmentedExample {
    fn new(
        source: &Example,
        transformation: Transformation,
        premise: String,
        hypothesis: String,
        label: Label,
    ) -> Self {
        Self {
            example: Example {
                id: format!("{}:{}", source.id, transformation.tag()),
                premise,
                hypothesis,
                label,
            },
            source_id: source.id.clone(),
            transformation,
            original_label: source.label,
        }
    }
}

#[derive(Serialize)]
struct AugmentedRecord<'a> {
    id: &'a str,
    premise: &'a str,
    hypothesis: &'a str,
    label: Label,
    source_id: &'a str,
    transformation: Transformation,
    original_label: Label,
}

/// Writes augmented examples in corpus format with the provenance keys
/// `source_id`, `transformation` and `original_label` appended.
pub fn write_augmented<'a, W, I>(examples: I, mut sink: W) -> io::Result<usize>
where
    W: Write,
    I: IntoIterator<Item = &'a AugmentedExample>,
{
    let mut count = 0;
    for aug in examples {
        let record = AugmentedRecord {
            id: &aug.example.id,
            premise: &aug.example.premise,
            hypothesis: &aug.example.hypothesis,
            label: aug.example.label,
            source_id: &aug.source_id,
            transformation: aug.transformation,
            original_label: aug.original_label,
        };
        serde_json::to_writer(&mut sink, &record)?;
        sink.write_all(b"\n")?;
        count += 1;
    }
    sink.flush()?;
    Ok(count)
}

/// Per-transformation outcome counts. Every attempted (source, kind) pair
/// lands in exactly one bucket.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AugmentReport {
    pub sources_scanned: usize,
    pub attempts: usize,
    pub produced: usize,
    pub skipped_already_negated: usize,
    pub skipped_no_insertion_point: usize,
    pub skipped_label_ineligible: usize,
    pub skipped_per_source_cap: usize,
}

impl AugmentReport {
    pub fn skipped(&self) -> usize {
        self.skipped_already_negated
            + self.skipped_no_insertion_point
            + self.skipped_label_ineligible
            + self.skipped_per_source_cap
    }

    fn record_skip(&mut self, reason: SkipReason) {
        match reason {
            SkipReason::AlreadyNegated => self.skipped_already_negated += 1,
            SkipReason::LabelIneligible => self.skipped_label_ineligible += 1,
            SkipReason::NoInsertionPoint => self.skipped_no_insertion_point += 1,
            SkipReason::PerSourceCap => self.skipped_per_source_cap += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmented {
    pub examples: Vec<AugmentedExample>,
    pub report: AugmentReport,
}

impl Augmented {
    pub fn to_corpus(&self, name: &str) -> Result<Corpus, DuplicateId> {
        Corpus::new(
            name,
            self.examples.iter().map(|a| a.example.clone()).collect(),
        )
    }
}

/// Case-folded text with edge punctuation and surrounding space removed.
fn clause_key(text: &str) -> String {
    tokenize(text)
        .iter()
        .filter(|t| !t.is_punct())
        .map(|t| t.text.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ")
}

fn is_premise_clause(premise: &str, hypothesis: &str) -> bool {
    let target = clause_key(hypothesis);
    !target.is_empty()
        && premise
            .split(['.', ',', ';', '!', '?'])
            .any(|clause| clause_key(clause) == target)
}

/// Lexicons plus policy; applies the transformations.
#[derive(Debug, Clone, Default)]
pub struct Augmenter {
    pub lexicon: AuxLexicon,
    pub verbs: VerbList,
    pub policy: AugmentationPolicy,
}

impl Augmenter {
    pub fn new(lexicon: AuxLexicon, verbs: VerbList, policy: AugmentationPolicy) -> Self {
        Self {
            lexicon,
            verbs,
            policy,
        }
    }

    fn negate_text(&self, text: &str) -> Result<String, SkipReason> {
        let tokens = tokenize(text);
        let point = find_insertion_point(&tokens, &self.lexicon, &self.verbs);
        let verbs = self.policy.do_support.then_some(&self.verbs);
        insert_not(text, &tokens, point, verbs).ok_or(SkipReason::NoInsertionPoint)
    }

    fn check_negated(&self, text: &str) -> Result<(), SkipReason> {
        if self.policy.skip_already_negated && text_has_negation(text) {
            Err(SkipReason::AlreadyNegated)
        } else {
            Ok(())
        }
    }

    pub fn negate_hypothesis(&self, ex: &Example) -> Result<AugmentedExample, SkipReason> {
        self.check_negated(&ex.hypothesis)?;
        let label = *self
            .policy
            .label_map
            .get(&ex.label)
            .ok_or(SkipReason::LabelIneligible)?;
        let hypothesis = self.negate_text(&ex.hypothesis)?;
        Ok(AugmentedExample::new(
            ex,
            Transformation::AutoNegateHypothesis,
            ex.premise.clone(),
            hypothesis,
            label,
        ))
    }

    /// Negates a hypothesis the premise supports: an entailment pair, or a
    /// hypothesis that repeats one of the premise's clauses.
    pub fn make_adversarial_pair(&self, ex: &Example) -> Result<AugmentedExample, SkipReason> {
        self.check_negated(&ex.hypothesis)?;
        if ex.label != Label::Entailment && !is_premise_clause(&ex.premise, &ex.hypothesis) {
            return Err(SkipReason::LabelIneligible);
        }
        let hypothesis = self.negate_text(&ex.hypothesis)?;
        Ok(AugmentedExample::new(
            ex,
            Transformation::AdversarialNegateHypothesis,
            ex.premise.clone(),
            hypothesis,
            Label::Contradiction,
        ))
    }

    /// Negates the premise of an entailment pair, keeping the hypothesis.
    pub fn make_contrast_pair(&self, ex: &Example) -> Result<AugmentedExample, SkipReason> {
        self.check_negated(&ex.premise)?;
        if ex.label != Label::Entailment {
            return Err(SkipReason::LabelIneligible);
        }
        let premise = self.negate_text(&ex.premise)?;
        Ok(AugmentedExample::new(
            ex,
            Transformation::ContrastNegatePremise,
            premise,
            ex.hypothesis.clone(),
            Label::Contradiction,
        ))
    }

    pub fn apply(
        &self,
        kind: Transformation,
        ex: &Example,
    ) -> Result<AugmentedExample, SkipReason> {
        match kind {
            Transformation::AutoNegateHypothesis => self.negate_hypothesis(ex),
            Transformation::ContrastNegatePremise => self.make_contrast_pair(ex),
            Transformation::AdversarialNegateHypothesis => self.make_adversarial_pair(ex),
        }
    }

    /// Applies the selected transformations to every example. Output follows
    /// source order, then [`Transformation::ALL`] order.
    pub fn augment_corpus(&self, corpus: &Corpus, kinds: &[Transformation]) -> Augmented {
        let mut selected: Vec<Transformation> = kinds.to_vec();
        selected.sort();
        selected.dedup();

        let mut report = AugmentReport::default();
        let mut examples = Vec::new();
        for ex in corpus {
            report.sources_scanned += 1;
            let mut produced_here = 0;
            for &kind in &selected {
                report.attempts += 1;
                if self
                    .policy
                    .max_per_source
                    .is_some_and(|cap| produced_here >= cap)
                {
                    report.record_skip(SkipReason::PerSourceCap);
                    continue;
                }
                match self.apply(kind, ex) {
                    Ok(aug) => {
                        produced_here += 1;
                        report.produced += 1;
                        examples.push(aug);
                    }
                    Err(reason) => report.record_skip(reason),
                }
            }
        }
        Augmented { examples, report }
    }
}
