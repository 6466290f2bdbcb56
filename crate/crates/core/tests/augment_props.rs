mod common;

use std::collections::BTreeMap;

use common::snli_like;
use negkit::augment::{find_insertion_point, AugmentationPolicy, Augmenter, InsertionPoint};
use negkit::corpus::{Corpus, Example, Label};
use negkit::negation::{example_has_negation, is_negated_example};
use negkit::{tokenize, AuxLexicon, Transformation, VerbList};
use proptest::prelude::*;

/// Sentences without auxiliaries and the token index of their main verb,
/// checked by hand.
const MAIN_VERB_CASES: &[(&str, Option<usize>)] = &[
    ("Dogs bark.", Some(1)),
    ("A man rides a horse.", Some(2)),
    ("The children play outside.", Some(2)),
    ("Two women dance together.", Some(2)),
    ("A girl jumps into a pool.", Some(2)),
    ("People walk down the street.", Some(1)),
    ("The chef cooks pasta.", Some(2)),
    ("A boy kicks a ball.", Some(2)),
    ("Birds fly south.", Some(1)),
    ("The crowd cheers.", Some(2)),
    ("A cyclist climbed the hill.", Some(2)),
    ("The old man smiled.", Some(3)),
    ("Kids swim in the lake.", Some(1)),
    ("A woman reads a newspaper.", Some(2)),
    ("The team celebrates a win.", Some(2)),
    ("Three men sit on a bench.", Some(2)),
    ("A dog chases a cat.", Some(2)),
    ("Students study in the library.", Some(1)),
    ("The baby sleeps.", Some(2)),
    ("A worker fixed the roof.", Some(2)),
    ("Musicians perform on stage.", Some(1)),
    ("The girl laughing loudly.", Some(2)),
    ("Friends eat dinner together.", Some(1)),
    ("A skier descends the slope.", Some(2)),
    ("The couple hugged.", Some(2)),
    ("Red ball.", None),
    ("A sunny day.", None),
    ("Blue sky above the city.", None),
    ("Snow.", None),
    ("An empty street at night.", None),
];

#[test]
fn main_verb_heuristic_on_hand_checked_list() {
    assert_eq!(MAIN_VERB_CASES.len(), 30);
    let lex = AuxLexicon::default();
    let verbs = VerbList::default();
    for &(text, expected) in MAIN_VERB_CASES {
        let found = find_insertion_point(&tokenize(text), &lex, &verbs);
        let expected = expected.map_or(InsertionPoint::NotFound, InsertionPoint::BeforeMainVerb);
        assert_eq!(found, expected, "{text:?}");
    }
}

#[test]
fn hundred_auxiliary_entailments_all_produce() {
    let subjects = ["A dog", "The man", "A child", "Someone", "The singer"];
    let predicates = ["running", "eating lunch", "asleep", "outside", "smiling"];
    let examples: Vec<Example> = (0..100)
        .map(|i| Example {
            id: format!("e{i}"),
            premise: "Premise text.".into(),
            hypothesis: format!("{} is {} {}.", subjects[i % 5], predicates[(i / 5) % 5], i),
            label: Label::Entailment,
        })
        .collect();
    let corpus = Corpus::new("hundred", examples).unwrap();
    let out = Augmenter::default().augment_corpus(&corpus, &[Transformation::AutoNegateHypothesis]);
    assert_eq!(out.report.produced, 100);
    assert_eq!(out.report.skipped(), 0);
    assert!(out
        .examples
        .iter()
        .all(|a| a.example.hypothesis.contains(" is not ")));
}

fn without_inserted_not(tokens: &[&str], source: &[&str]) -> bool {
    (0..tokens.len()).any(|i| {
        tokens[i] == "not" && {
            let mut rest = tokens.to_vec();
            rest.remove(i);
            rest == source
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn augmentation_invariants(seed in 0u64..10_000, size in 1usize..80) {
        let corpus = snli_like("src", size, seed);
        let augmenter = Augmenter::default();
        let out = augmenter.augment_corpus(&corpus, &Transformation::ALL);
        let r = out.report;
        prop_assert_eq!(r.produced + r.skipped(), r.attempts);
        prop_assert_eq!(r.attempts, corpus.len() * 3);
        prop_assert_eq!(r.produced, out.examples.len());

        for aug in &out.examples {
            // closure
            prop_assert!(example_has_negation(&aug.example).has_negation);
            // label soundness
            prop_assert_eq!(aug.example.label, Label::Contradiction);
            if aug.transformation != Transformation::AdversarialNegateHypothesis {
                prop_assert_eq!(aug.original_label, Label::Entailment);
            }
            prop_assert_eq!(&aug.example.id, &format!("{}:{}", aug.source_id, aug.transformation));

            // single insertion
            let source = corpus.iter().find(|e| e.id == aug.source_id).unwrap();
            let (before, after) = match aug.transformation {
                Transformation::ContrastNegatePremise => (&source.premise, &aug.example.premise),
                _ => (&source.hypothesis, &aug.example.hypothesis),
            };
            let before_tokens = tokenize(before);
            let after_tokens = tokenize(after);
            prop_assert_eq!(after_tokens.len(), before_tokens.len() + 1);
            prop_assert!(without_inserted_not(&after_tokens.texts(), &before_tokens.texts()));
        }

        // re-augmenting the output yields nothing new
        let again = augmenter.augment_corpus(&out.to_corpus("round2").unwrap(), &Transformation::ALL);
        prop_assert_eq!(again.report.produced, 0);

        // determinism
        prop_assert_eq!(augmenter.augment_corpus(&corpus, &Transformation::ALL), out);
    }

    #[test]
    fn custom_label_map_is_respected(seed in 0u64..1000) {
        let corpus = snli_like("src", 40, seed);
        let policy = AugmentationPolicy {
            label_map: BTreeMap::from([
                (Label::Entailment, Label::Contradiction),
                (Label::Contradiction, Label::Entailment),
            ]),
            ..Default::default()
        };
        let augmenter = Augmenter::new(AuxLexicon::default(), VerbList::default(), policy.clone());
        let out = augmenter.augment_corpus(&corpus, &[Transformation::AutoNegateHypothesis]);
        for aug in &out.examples {
            prop_assert_eq!(aug.example.label, policy.label_map[&aug.original_label]);
        }
        let again = augmenter.augment_corpus(&out.to_corpus("r").unwrap(), &[Transformation::AutoNegateHypothesis]);
        prop_assert_eq!(again.report.produced, 0);
        prop_assert!(out.examples.iter().all(|a| is_negated_example(&a.example)));
    }
}
