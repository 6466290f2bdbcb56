//! Negation-artifact tooling for NLI corpora.
//!
//! * [`corpus`]: examples, labels and line-delimited corpus files.
//! * [`tokenize`]: the whitespace/edge-punctuation tokenizer cue matching runs on.
//! * [`negation`]: negation cue detection and negation-only subsets.
//! * [`augment`]: rule-based negation insertion with label adjustment.
//! * [`evaluate`]: prediction joining, accuracy tables and deltas.
//! * [`cli`]: the `negkit` command line.

pub mod augment;
pub mod cli;
pub mod corpus;
pub mod evaluate;
pub mod negation;
pub mod tokenize;

pub use augment::{
    AugmentationPolicy, AugmentedExample, Augmenter, AuxLexicon, Transformation, VerbList,
};
pub use corpus::{read_corpus, write_corpus, Corpus, Example, Label, ReadOptions};
pub use evaluate::{accuracy, compare, join, subset_eval, EvalReport, Percent, PredictionSet};
pub use negation::{contains_negation, example_has_negation, negation_stats, split_by_negation};
pub use tokenize::{tokenize, Token, TokenSeq};
