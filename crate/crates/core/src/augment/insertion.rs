//! Where to put the inserted `not`, and the text splice that puts it there.

use crate::negation::is_cue;
use crate::tokenize::{Token, TokenSeq};

use super::lexicon::{is_closed_class, opens_noun_phrase, AuxLexicon, VerbList};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionPoint {
    /// Insert after the auxiliary at this token index.
    AfterAuxiliary(usize),
    /// Insert before the main-verb candidate at this token index.
    BeforeMainVerb(usize),
    NotFound,
}

const VERB_SUFFIXES: [&str; 3] = ["ing", "ed", "s"];

fn has_verb_suffix(folded: &str) -> bool {
    let len = folded.chars().count();
    VERB_SUFFIXES
        .iter()
        .any(|suffix| folded.ends_with(suffix) && len >= suffix.len() + 2)
}

fn is_word(token: &Token) -> bool {
    !token.is_punct() && token.text.chars().any(char::is_alphabetic)
}

fn is_main_verb_candidate(
    tokens: &[Token],
    index: usize,
    lex: &AuxLexicon,
    verbs: &VerbList,
) -> bool {
    let token = &tokens[index];
    if index == 0 || !is_word(token) {
        return false;
    }
    let folded = token.text.to_lowercase();
    if lex.contains(&folded) || is_closed_class(&folded) || is_cue(&folded) {
        return false;
    }
    if opens_noun_phrase(&tokens[index - 1].text.to_lowercase()) {
        return false;
    }
    has_verb_suffix(&folded) || verbs.contains(&folded)
}

/// The first auxiliary wins; failing that, the first main-verb candidate at
/// index 1 or later.
pub fn find_insertion_point(
    tokens: &TokenSeq,
    lex: &AuxLexicon,
    verbs: &VerbList,
) -> InsertionPoint {
    let toks = tokens.tokens();
    if let Some(i) = toks
        .iter()
        .position(|t| lex.contains(&t.text.to_lowercase()))
    {
        return InsertionPoint::AfterAuxiliary(i);
    }
    (1..toks.len())
        .find(|&i| is_main_verb_candidate(toks, i, lex, verbs))
        .map_or(InsertionPoint::NotFound, InsertionPoint::BeforeMainVerb)
}

/// Lemma and supporting auxiliary for a do-support rewrite of `verb`.
fn do_support(verb: &str, verbs: &VerbList) -> Option<(&'static str, String)> {
    let folded = verb.to_lowercase();
    if folded.ends_with("ing") {
        return None;
    }
    let lemma_of = |candidates: Vec<String>| candidates.into_iter().find(|c| verbs.contains(c));

    if let Some(stem) = folded.strip_suffix("ed") {
        let mut candidates = vec![stem.to_string(), format!("{stem}e")];
        if let Some(base) = stem.strip_suffix('i') {
            candidates.push(format!("{base}y"));
        }
        let mut chars: Vec<char> = stem.chars().collect();
        if chars.len() >= 2 && chars[chars.len() - 1] == chars[chars.len() - 2] {
            chars.pop();
            candidates.push(chars.into_iter().collect());
        }
        return lemma_of(candidates).map(|lemma| ("did", lemma));
    }
    if let Some(stem) = folded.strip_suffix('s') {
        if verbs.contains(&folded) && !verbs.contains(stem) {
            return Some(("do", folded));
        }
        let mut candidates = vec![stem.to_string()];
        if let Some(base) = folded.strip_suffix("ies") {
            candidates.push(format!("{base}y"));
        }
        if let Some(base) = folded.strip_suffix("es") {
            candidates.push(base.to_string());
        }
        return lemma_of(candidates).map(|lemma| ("does", lemma));
    }
    verbs.contains(&folded).then_some(("do", folded))
}

/// Splices `not` into `text` at `point`, leaving every other byte as it was.
/// With `do_support`, a bare main verb gains do/does/did and is reduced to
/// its lemma when the verb list can resolve one.
pub fn insert_not(
    text: &str,
    tokens: &TokenSeq,
    point: InsertionPoint,
    do_support_verbs: Option<&VerbList>,
) -> Option<String> {
    match point {
        InsertionPoint::NotFound => None,
        InsertionPoint::AfterAuxiliary(i) => {
            let at = tokens.get(i)?.end;
            Some(format!("{} not{}", &text[..at], &text[at..]))
        }
        InsertionPoint::BeforeMainVerb(i) => {
            let verb = tokens.get(i)?;
            let rewrite = do_support_verbs.and_then(|verbs| do_support(&verb.text, verbs));
            Some(match rewrite {
                Some((aux, lemma)) => format!(
                    "{}{aux} not {lemma}{}",
                    &text[..verb.start],
                    &text[verb.end..]
                ),
                None => format!("{}not {}", &text[..verb.start], &text[verb.start..]),
            })
        }
    }
}
