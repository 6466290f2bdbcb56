#![allow(dead_code)]

use negkit::{Corpus, Example, Label};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const EDGE: &[char] = &['.', ',', '!', '?', ';', ':', '"', '(', ')', '\''];

/// Character-level negation scan that never tokenizes. A whitespace-delimited
/// chunk holds the cue `not` when it is `not` wrapped only in edge
/// punctuation, and holds an `n't` cue when `n't` is followed only by edge
/// punctuation up to the chunk end. The right single quotation mark counts as
/// an apostrophe inside `n't` but is not edge punctuation.
pub fn oracle_has_negation(text: &str) -> bool {
    let folded: Vec<char> = text.to_lowercase().chars().collect();
    let n = folded.len();
    let only_edge = |from: usize, to: usize| folded[from..to].iter().all(|c| EDGE.contains(c));
    let chunk_start = |i: usize| {
        let mut s = i;
        while s > 0 && !folded[s - 1].is_whitespace() {
            s -= 1;
        }
        s
    };
    let chunk_end = |i: usize| {
        let mut e = i;
        while e < n && !folded[e].is_whitespace() {
            e += 1;
        }
        e
    };
    for i in 0..n {
        if folded[i..].starts_with(&['n', 'o', 't']) {
            let (s, e) = (chunk_start(i), chunk_end(i + 3));
            if e >= i + 3 && only_edge(s, i) && only_edge(i + 3, e) {
                return true;
            }
        }
        let apostrophe = |c: char| c == '\'' || c == '\u{2019}';
        if i + 3 <= n && folded[i] == 'n' && apostrophe(folded[i + 1]) && folded[i + 2] == 't' {
            let e = chunk_end(i + 3);
            if e >= i + 3 && only_edge(i + 3, e) && !only_edge(chunk_start(i), i + 3) {
                return true;
            }
        }
    }
    false
}

pub const CUE_LEXICON: &[&str] = &[
    "not",
    "Not",
    "NOT",
    "nothing",
    "knot",
    "Knots",
    "isn't",
    "ISN'T",
    "isn\u{2019}t",
    "cannot",
    "can't",
    "don't",
    "n't",
    "note",
    "notable",
    "snot",
    "dog",
    "is",
    "a",
    "the",
    "won't",
    "nt",
    "n'",
    "'t",
    "no",
    "none",
    "never",
    "not-so",
    "innit",
    "tonight",
];

pub const DECORATIONS: &[&str] = &[
    "", "", "", ".", ",", "!", "?", "\"", "(", ")", "'", "...", ";",
];

/// A random string assembled from the cue lexicon with punctuation glued to
/// word edges and mixed whitespace between chunks.
pub fn lexicon_string(rng: &mut StdRng) -> String {
    let words = rng.gen_range(0..8);
    let mut out = String::new();
    for i in 0..words {
        if i > 0 {
            out.push_str([" ", "  ", "\t", "\u{00a0}"].choose(rng).unwrap());
        }
        out.push_str(DECORATIONS.choose(rng).unwrap());
        out.push_str(CUE_LEXICON.choose(rng).unwrap());
        out.push_str(DECORATIONS.choose(rng).unwrap());
        if rng.gen_bool(0.1) {
            // glue a second word without whitespace
            out.push_str(CUE_LEXICON.choose(rng).unwrap());
        }
    }
    out
}

const SUBJECTS: &[&str] = &[
    "A man",
    "A woman",
    "Two people",
    "A dog",
    "The children",
    "A young girl",
    "An older man",
    "Three friends",
    "A group of kids",
    "The musician",
    "A cyclist",
    "The chef",
];
const AUX_PREDICATES: &[&str] = &[
    "is playing a guitar",
    "are sitting at a table",
    "is running through a field",
    "is cooking dinner",
    "are walking on the beach",
    "is riding a bike",
    "has finished the race",
    "was painting a wall",
    "are dancing at a party",
    "is reading a book",
];
const BARE_PREDICATES: &[&str] = &[
    "plays a guitar",
    "rides a horse",
    "runs outside",
    "sleeps on a couch",
    "eat lunch together",
    "walks home",
    "swim in a lake",
    "climbs a rock",
];
const NEGATED_PREDICATES: &[&str] = &[
    "is not playing a guitar",
    "isn't sleeping",
    "are not outside",
    "doesn't like the rain",
    "can't see the stage",
    "is not wearing a hat",
];
const FRAGMENTS: &[&str] = &[
    "Red ball",
    "A sunny day",
    "People outdoors",
    "Blue sky above",
];

/// An SNLI-shaped corpus with a known mix of auxiliary, bare-verb, negated and
/// verbless hypotheses. Deterministic for a given seed.
pub fn snli_like(name: &str, size: usize, seed: u64) -> Corpus {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut examples = Vec::with_capacity(size);
    for i in 0..size {
        let subject = SUBJECTS.choose(&mut rng).unwrap();
        let premise_pred = if rng.gen_bool(0.2) {
            NEGATED_PREDICATES.choose(&mut rng).unwrap()
        } else {
            AUX_PREDICATES.choose(&mut rng).unwrap()
        };
        let premise = format!("{subject} {premise_pred}.");
        let hypothesis = match rng.gen_range(0..10) {
            0..=4 => format!("{subject} {}.", AUX_PREDICATES.choose(&mut rng).unwrap()),
            5..=6 => format!("{subject} {}.", BARE_PREDICATES.choose(&mut rng).unwrap()),
            7..=8 => format!(
                "{subject} {}.",
                NEGATED_PREDICATES.choose(&mut rng).unwrap()
            ),
            _ => format!("{}.", FRAGMENTS.choose(&mut rng).unwrap()),
        };
        let label = Label::ALL[rng.gen_range(0..3)];
        examples.push(Example {
            id: format!("{name}:{}", i + 1),
            premise,
            hypothesis,
            label,
        });
    }
    Corpus::new(name, examples).unwrap()
}

pub fn corpus_jsonl(corpus: &Corpus) -> Vec<u8> {
    let mut buf = Vec::new();
    negkit::write_corpus(corpus, &mut buf).unwrap();
    buf
}

/// Per-label (n, n_correct) counted directly from parallel gold/prediction
/// vectors, indexed by label code, plus the overall (n, n_correct).
pub fn recount(gold: &[Label], predicted: &[Label]) -> ([(u64, u64); 3], (u64, u64)) {
    let mut per = [(0u64, 0u64); 3];
    let mut overall = (0u64, 0u64);
    for (g, p) in gold.iter().zip(predicted) {
        let slot = match g {
            Label::Entailment => 0,
            Label::Neutral => 1,
            Label::Contradiction => 2,
        };
        per[slot].0 += 1;
        overall.0 += 1;
        if g == p {
            per[slot].1 += 1;
            overall.1 += 1;
        }
    }
    (per, overall)
}

/// One-decimal rendering of `100 * correct / n` using decimal long division,
/// rounding half up.
pub fn percent_string(correct: u64, n: u64) -> String {
    let scaled = 1000 * correct;
    let mut tenths = scaled / n;
    if 2 * (scaled % n) >= n {
        tenths += 1;
    }
    format!("{}.{}", tenths / 10, tenths % 10)
}

pub fn random_labels(rng: &mut StdRng, len: usize) -> Vec<Label> {
    (0..len).map(|_| Label::ALL[rng.gen_range(0..3)]).collect()
}
