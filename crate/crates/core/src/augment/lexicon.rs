//! Word lists used by the insertion heuristics.
//!
//! Files are UTF-8 with one surface form per line; `#` starts a comment.
//! Forms are case-folded on load.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

const DEFAULT_AUX: &str = include_str!("../../data/aux.txt");
const DEFAULT_VERBS: &str = include_str!("../../data/verbs.txt");

/// Forms every auxiliary lexicon must contain.
pub const REQUIRED_AUX: [&str; 3] = ["is", "are", "have"];

/// Determiners, pronouns, prepositions, conjunctions and numerals. None of
/// these can be a main-verb candidate, and a token directly after a
/// determiner or numeral is treated as part of a noun phrase.
const CLOSED_CLASS: &[&str] = &[
    // determiners and numerals
    "a",
    "an",
    "the",
    "this",
    "that",
    "these",
    "those",
    "some",
    "any",
    "each",
    "every",
    "no",
    "all",
    "both",
    "either",
    "neither",
    "many",
    "much",
    "few",
    "several",
    "another",
    "other",
    "one",
    "two",
    "three",
    "four",
    "five",
    "six",
    "seven",
    "eight",
    "nine",
    "ten",
    "twelve",
    "dozen",
    "hundred",
    // pronouns
    "i",
    "me",
    "my",
    "mine",
    "you",
    "your",
    "yours",
    "he",
    "him",
    "his",
    "she",
    "her",
    "hers",
    "it",
    "its",
    "we",
    "us",
    "our",
    "ours",
    "they",
    "them",
    "their",
    "theirs",
    "someone",
    "somebody",
    "something",
    "anyone",
    "anybody",
    "anything",
    "everyone",
    "everybody",
    "everything",
    "nobody",
    "nothing",
    "who",
    "whom",
    "whose",
    "which",
    "what",
    "himself",
    "herself",
    "itself",
    "themselves",
    "myself",
    "yourself",
    "ourselves",
    // prepositions
    "about",
    "above",
    "across",
    "after",
    "against",
    "along",
    "amid",
    "among",
    "around",
    "as",
    "at",
    "before",
    "behind",
    "below",
    "beneath",
    "beside",
    "besides",
    "between",
    "beyond",
    "by",
    "despite",
    "down",
    "during",
    "except",
    "for",
    "from",
    "in",
    "inside",
    "into",
    "near",
    "of",
    "off",
    "on",
    "onto",
    "out",
    "outside",
    "over",
    "past",
    "per",
    "since",
    "through",
    "throughout",
    "till",
    "to",
    "toward",
    "towards",
    "under",
    "underneath",
    "until",
    "up",
    "upon",
    "via",
    "with",
    "within",
    "without",
    // conjunctions and particles
    "and",
    "or",
    "but",
    "nor",
    "so",
    "yet",
    "if",
    "because",
    "while",
    "when",
    "where",
    "whereas",
    "although",
    "though",
    "than",
    "then",
    "there",
    "here",
    "not",
    "very",
    "too",
    "also",
    "just",
    "only",
    "yes",
];

const NOUN_PHRASE_OPENERS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "each", "every", "no",
    "many", "several", "another", "my", "your", "his", "her", "its", "our", "their", "one", "two",
    "three", "four", "five", "six", "seven", "eight", "nine", "ten", "twelve",
];

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("reading word list {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("word list {0} has no entries")]
    Empty(String),
    #[error("auxiliary lexicon {origin} lacks required form {form:?}")]
    MissingRequired { origin: String, form: &'static str },
}

fn parse_word_list(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

fn read_word_list(path: &Path) -> Result<BTreeSet<String>, LexiconError> {
    let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let words = parse_word_list(&text);
    if words.is_empty() {
        return Err(LexiconError::Empty(path.display().to_string()));
    }
    Ok(words)
}

/// Auxiliary verb forms after which `not` is inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxLexicon {
    forms: BTreeSet<String>,
}

impl AuxLexicon {
    pub fn from_forms<I, S>(forms: I, origin: &str) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let forms: BTreeSet<String> = forms
            .into_iter()
            .map(|f| f.as_ref().to_lowercase())
            .collect();
        if forms.is_empty() {
            return Err(LexiconError::Empty(origin.to_string()));
        }
        for form in REQUIRED_AUX {
            if !forms.contains(form) {
                return Err(LexiconError::MissingRequired {
                    origin: origin.to_string(),
                    form,
                });
            }
        }
        Ok(Self { forms })
    }

    pub fn from_file(path: &Path) -> Result<Self, LexiconError> {
        let forms = read_word_list(path)?;
        Self::from_forms(forms, &path.display().to_string())
    }

    pub fn contains(&self, folded: &str) -> bool {
        self.forms.contains(folded)
    }

    pub fn forms(&self) -> impl Iterator<Item = &str> {
        self.forms.iter().map(String::as_str)
    }
}

impl Default for AuxLexicon {
    fn default() -> Self {
        Self {
            forms: parse_word_list(DEFAULT_AUX),
        }
    }
}

/// Verb lemmas recognised by the main-verb heuristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbList {
    lemmas: BTreeSet<String>,
}

impl VerbList {
    pub fn from_file(path: &Path) -> Result<Self, LexiconError> {
        Ok(Self {
            lemmas: read_word_list(path)?,
        })
    }

    pub fn from_lemmas<I, S>(lemmas: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            lemmas: lemmas
                .into_iter()
                .map(|l| l.as_ref().to_lowercase())
                .collect(),
        }
    }

    pub fn contains(&self, folded: &str) -> bool {
        self.lemmas.contains(folded)
    }

    pub fn len(&self) -> usize {
        self.lemmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lemmas.is_empty()
    }
}

impl Default for VerbList {
    fn default() -> Self {
        Self {
            lemmas: parse_word_list(DEFAULT_VERBS),
        }
    }
}

pub(crate) fn is_closed_class(folded: &str) -> bool {
    CLOSED_CLASS.contains(&folded)
}

pub(crate) fn opens_noun_phrase(folded: &str) -> bool {
    NOUN_PHRASE_OPENERS.contains(&folded) || folded.chars().all(|c| c.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn default_aux_inventory() {
        let lex = AuxLexicon::default();
        assert_eq!(lex.forms().count(), 23);
        for form in ["am", "is", "are", "have", "must", "being"] {
            assert!(lex.contains(form), "{form}");
        }
        assert!(!lex.contains("not"));
    }

    #[test]
    fn default_verbs_loaded() {
        let verbs = VerbList::default();
        assert!(verbs.len() > 1000);
        assert!(verbs.contains("bark"));
        assert!(!verbs.contains("ball"));
    }

    #[test]
    fn file_parsing_comments_and_case() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# header\nIs\n are # trailing comment\n\nHAVE\nget").unwrap();
        let lex = AuxLexicon::from_file(file.path()).unwrap();
        assert_eq!(
            lex.forms().collect::<Vec<_>>(),
            ["are", "get", "have", "is"]
        );
    }

    #[test]
    fn lexicon_invariants_enforced() {
        assert!(matches!(
            AuxLexicon::from_forms(Vec::<&str>::new(), "t"),
            Err(LexiconError::Empty(_))
        ));
        assert!(matches!(
            AuxLexicon::from_forms(["is", "are"], "t"),
            Err(LexiconError::MissingRequired { form: "have", .. })
        ));
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# nothing").unwrap();
        assert!(matches!(
            VerbList::from_file(file.path()),
            Err(LexiconError::Empty(_))
        ));
    }
}
