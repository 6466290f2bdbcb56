//! Whitespace tokenizer with edge-punctuation splitting.
//!
//! Text is split on Unicode whitespace; each chunk then sheds leading and
//! trailing characters from `.,!?;:"()'` as single-character tokens.
//! Apostrophes inside a word are kept, so `isn't.` yields `isn't` and `.`.

use std::ops::Range;

/// Characters split off the edges of a whitespace chunk.
pub const EDGE_PUNCTUATION: &[char] = &['.', ',', '!', '?', ';', ':', '"', '(', ')', '\''];

pub fn is_edge_punct(c: char) -> bool {
    EDGE_PUNCTUATION.contains(&c)
}

/// A token and its byte span in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn span(&self) -> Range<usize> {
        self.start..self.end
    }

    /// True for single-character edge punctuation tokens.
    pub fn is_punct(&self) -> bool {
        let mut chars = self.text.chars();
        matches!((chars.next(), chars.next()), (Some(c), None) if is_edge_punct(c))
    }
}

/// Tokens in source order. Spans are strictly increasing and non-overlapping;
/// the bytes between them are whitespace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenSeq {
    tokens: Vec<Token>,
}

impl TokenSeq {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Token> {
        self.tokens.get(index)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Token> {
        self.tokens.iter()
    }

    pub fn texts(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.text.as_str()).collect()
    }
}

impl<'a> IntoIterator for &'a TokenSeq {
    type Item = &'a Token;
    type IntoIter = std::slice::Iter<'a, Token>;

    fn into_iter(self) -> Self::IntoIter {
        self.tokens.iter()
    }
}

fn push(tokens: &mut Vec<Token>, text: &str, start: usize, end: usize) {
    tokens.push(Token {
        text: text[start..end].to_string(),
        start,
        end,
    });
}

fn split_chunk(text: &str, start: usize, end: usize, tokens: &mut Vec<Token>) {
    let chunk = &text[start..end];

    let mut core_start = start;
    for (off, c) in chunk.char_indices() {
        if !is_edge_punct(c) {
            break;
        }
        push(tokens, text, start + off, start + off + c.len_utf8());
        core_start = start + off + c.len_utf8();
    }
    if core_start == end {
        return;
    }

    let mut core_end = end;
    for (off, c) in text[core_start..end].char_indices().rev() {
        if !is_edge_punct(c) {
            break;
        }
        core_end = core_start + off;
    }

    push(tokens, text, core_start, core_end);
    for (off, c) in text[core_end..end].char_indices() {
        push(tokens, text, core_end + off, core_end + off + c.len_utf8());
    }
}

pub fn tokenize(text: &str) -> TokenSeq {
    let mut tokens = Vec::new();
    let mut chunk_start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), chunk_start) {
            (true, Some(s)) => {
                split_chunk(text, s, i, &mut tokens);
                chunk_start = None;
            }
            (false, None) => chunk_start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = chunk_start {
        split_chunk(text, s, text.len(), &mut tokens);
    }
    TokenSeq { tokens }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_terminal_punctuation() {
        let seq = tokenize("A man is not playing a guitar.");
        assert_eq!(
            seq.texts(),
            ["A", "man", "is", "not", "playing", "a", "guitar", "."]
        );
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" \t\n ").is_empty());
    }

    #[test]
    fn inner_apostrophe_kept() {
        assert_eq!(tokenize("isn't.").texts(), ["isn't", "."]);
        assert_eq!(tokenize("(don't)").texts(), ["(", "don't", ")"]);
        assert_eq!(tokenize("...").texts(), [".", ".", "."]);
        assert_eq!(tokenize("'quoted'").texts(), ["'", "quoted", "'"]);
    }

    #[test]
    fn spans_index_source() {
        let text = "  Héllo,\u{00a0}wörld!  ";
        let seq = tokenize(text);
        assert_eq!(seq.texts(), ["Héllo", ",", "wörld", "!"]);
        for tok in &seq {
            assert_eq!(&text[tok.span()], tok.text);
        }
    }
}
