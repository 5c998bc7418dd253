use std::ops::Deref;

use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::UnicodeNormalization;

use super::LanguageCode;
use crate::lexicon;

/// Ordered tokens; none empty, none containing whitespace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TokenList(Vec<String>);

impl TokenList {
    pub fn into_inner(self) -> Vec<String> {
        self.0
    }
}

impl Deref for TokenList {
    type Target = [String];
    fn deref(&self) -> &[String] {
        &self.0
    }
}

pub fn is_punct_char(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::ConnectorPunctuation
            | GeneralCategory::DashPunctuation
            | GeneralCategory::OpenPunctuation
            | GeneralCategory::ClosePunctuation
            | GeneralCategory::InitialPunctuation
            | GeneralCategory::FinalPunctuation
            | GeneralCategory::OtherPunctuation
    )
}

/// True for tokens made of a punctuation run.
pub fn is_punct_token(token: &str) -> bool {
    !token.is_empty() && token.chars().all(is_punct_char)
}

/// Splits on Unicode whitespace, then cuts each chunk at every boundary
/// between punctuation and non-punctuation characters. Case is preserved.
pub fn tokenize(text: &str, _lang: LanguageCode) -> TokenList {
    TokenList(token_slices(text).map(str::to_string).collect())
}

pub(crate) fn token_slices(text: &str) -> impl Iterator<Item = &str> {
    text.split_whitespace().flat_map(|chunk| {
        let mut out = Vec::new();
        let mut start = 0;
        let mut prev: Option<bool> = None;
        for (i, c) in chunk.char_indices() {
            let p = is_punct_char(c);
            if prev.is_some_and(|q| q != p) {
                out.push(&chunk[start..i]);
                start = i;
            }
            prev = Some(p);
        }
        if start < chunk.len() {
            out.push(&chunk[start..]);
        }
        out
    })
}

/// Tokens that are not punctuation runs.
pub fn word_tokens(text: &str) -> impl Iterator<Item = &str> {
    token_slices(text).filter(|t| !is_punct_token(t))
}

pub fn normalize_whitespace(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for (i, w) in text.split_whitespace().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(w);
    }
    out
}

pub fn nfc(text: &str) -> String {
    text.nfc().collect()
}

const OPENING_QUOTES: &[char] = &['"', '\'', '“', '‘', '„', '‚', '«', '‹', '¿', '¡', '(', '['];
const CLOSING_MARKS: &[char] = &['"', '\'', '”', '’', '»', '›', ')', ']'];

fn ends_sentence(word: &str) -> bool {
    let core = word.trim_end_matches(CLOSING_MARKS);
    core.ends_with(['.', '?', '!'])
}

fn starts_sentence(word: &str) -> bool {
    word.chars()
        .next()
        .is_some_and(|c| c.is_uppercase() || OPENING_QUOTES.contains(&c))
}

/// Rule-based splitter: a boundary follows a word ending in `.`, `?` or `!`
/// (optionally followed by closing quotes) when the next word begins with an
/// uppercase letter or an opening quote, unless the word is a known
/// abbreviation for `lang`.
pub fn split_sentences(text: &str, lang: LanguageCode) -> Vec<String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    if words.is_empty() {
        return vec![String::new()];
    }
    let mut sentences = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for (i, w) in words.iter().enumerate() {
        current.push(w);
        let boundary = words
            .get(i + 1)
            .is_some_and(|next| ends_sentence(w) && starts_sentence(next))
            && !lexicon::is_abbreviation(lang, w);
        if boundary {
            sentences.push(current.join(" "));
            current.clear();
        }
    }
    if !current.is_empty() {
        sentences.push(current.join(" "));
    }
    sentences
}
