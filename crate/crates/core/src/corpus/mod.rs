//! Direction-labeled parallel corpora: the data model plus the deterministic
//! text processing, dedup, downsampling and splitting built on it.

mod io;
mod ops;
mod text;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{read_corpus, read_corpus_from, write_corpus, write_corpus_to, CORPUS_FORMAT};
pub use ops::{dedup, dedup_key, downsample_to_match, split_train_dev_test, TrainDevTest};
pub(crate) use text::token_slices;
pub use text::{
    is_punct_char, is_punct_token, nfc, normalize_whitespace, split_sentences, tokenize,
    word_tokens, TokenList,
};

/// Two-letter lowercase language identifier such as `de` or `en`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct LanguageCode([u8; 2]);

impl LanguageCode {
    pub const EN: LanguageCode = LanguageCode(*b"en");
    pub const DE: LanguageCode = LanguageCode(*b"de");
    pub const FR: LanguageCode = LanguageCode(*b"fr");
    pub const ES: LanguageCode = LanguageCode(*b"es");

    pub fn new(code: &str) -> Result<Self> {
        match code.as_bytes() {
            [a, b] if a.is_ascii_lowercase() && b.is_ascii_lowercase() => {
                Ok(LanguageCode([*a, *b]))
            }
            _ => Err(Error::InvalidLanguage(code.to_string())),
        }
    }

    pub fn as_str(&self) -> &str {
        // Both bytes are ASCII lowercase by construction.
        std::str::from_utf8(&self.0).expect("ascii language code")
    }
}

impl FromStr for LanguageCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LanguageCode::new(s)
    }
}

impl TryFrom<String> for LanguageCode {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        LanguageCode::new(&s)
    }
}

impl From<LanguageCode> for String {
    fn from(l: LanguageCode) -> String {
        l.as_str().to_string()
    }
}

impl fmt::Display for LanguageCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for LanguageCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

/// Unordered language pair, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "[LanguageCode; 2]", into = "[LanguageCode; 2]")]
pub struct LangPair([LanguageCode; 2]);

impl LangPair {
    pub fn new(a: LanguageCode, b: LanguageCode) -> Result<Self> {
        if a == b {
            return Err(Error::SameLanguageDirection(a.to_string()));
        }
        Ok(if a < b { LangPair([a, b]) } else { LangPair([b, a]) })
    }

    pub fn first(&self) -> LanguageCode {
        self.0[0]
    }

    pub fn second(&self) -> LanguageCode {
        self.0[1]
    }

    pub fn langs(&self) -> [LanguageCode; 2] {
        self.0
    }

    pub fn contains(&self, lang: LanguageCode) -> bool {
        self.0.contains(&lang)
    }

    pub fn other(&self, lang: LanguageCode) -> Option<LanguageCode> {
        match self.0 {
            [a, b] if a == lang => Some(b),
            [a, b] if b == lang => Some(a),
            _ => None,
        }
    }

    /// Parses `"de,en"` or `"de-en"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split([',', '-']).collect();
        match parts.as_slice() {
            [a, b] => LangPair::new(a.trim().parse()?, b.trim().parse()?),
            _ => Err(Error::InvalidArgument(format!(
                "expected a language pair like \"de,en\", got {s:?}"
            ))),
        }
    }
}

impl TryFrom<[LanguageCode; 2]> for LangPair {
    type Error = Error;
    fn try_from(v: [LanguageCode; 2]) -> Result<Self> {
        LangPair::new(v[0], v[1])
    }
}

impl From<LangPair> for [LanguageCode; 2] {
    fn from(p: LangPair) -> Self {
        p.0
    }
}

impl fmt::Display for LangPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0[0], self.0[1])
    }
}

/// Which side of a pair was authored originally. `origin → derived` is the
/// human translation direction; the same type doubles as an MT model
/// direction (source → target).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawDirection", into = "RawDirection")]
pub struct Direction {
    origin: LanguageCode,
    derived: LanguageCode,
}

#[derive(Serialize, Deserialize)]
struct RawDirection {
    origin: LanguageCode,
    derived: LanguageCode,
}

impl TryFrom<RawDirection> for Direction {
    type Error = Error;
    fn try_from(r: RawDirection) -> Result<Self> {
        Direction::new(r.origin, r.derived)
    }
}

impl From<Direction> for RawDirection {
    fn from(d: Direction) -> Self {
        RawDirection {
            origin: d.origin,
            derived: d.derived,
        }
    }
}

impl Direction {
    pub fn new(origin: LanguageCode, derived: LanguageCode) -> Result<Self> {
        if origin == derived {
            return Err(Error::SameLanguageDirection(origin.to_string()));
        }
        Ok(Direction { origin, derived })
    }

    pub fn origin(&self) -> LanguageCode {
        self.origin
    }

    pub fn derived(&self) -> LanguageCode {
        self.derived
    }

    pub fn reversed(&self) -> Direction {
        Direction {
            origin: self.derived,
            derived: self.origin,
        }
    }

    pub fn lang_pair(&self) -> LangPair {
        LangPair::new(self.origin, self.derived).expect("origin differs from derived")
    }

    /// Parses task notation: `"en-de"`, `"en2de"`, or `"en>de"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = if s.contains('2') {
            s.splitn(2, '2').collect()
        } else {
            s.splitn(2, ['-', '>']).collect()
        };
        match parts.as_slice() {
            [a, b] => Direction::new(a.parse()?, b.parse()?),
            _ => Err(Error::InvalidArgument(format!(
                "expected a direction like \"en-de\", got {s:?}"
            ))),
        }
    }

    /// File-name form, e.g. `de2en`.
    pub fn stem(&self) -> String {
        format!("{}2{}", self.origin, self.derived)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.origin, self.derived)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
    #[default]
    Unsplit,
}

impl Split {
    pub fn as_str(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
            Split::Unsplit => "unsplit",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One aligned sentence pair with its human translation direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectedPair {
    pub id: String,
    pub text: BTreeMap<LanguageCode, String>,
    pub direction: Direction,
    pub meta: BTreeMap<String, String>,
}

impl DirectedPair {
    pub fn new(
        id: impl Into<String>,
        direction: Direction,
        origin_text: impl Into<String>,
        derived_text: impl Into<String>,
    ) -> Result<Self> {
        let mut text = BTreeMap::new();
        text.insert(direction.origin(), origin_text.into());
        text.insert(direction.derived(), derived_text.into());
        let pair = DirectedPair {
            id: id.into(),
            text,
            direction,
            meta: BTreeMap::new(),
        };
        pair.validate()?;
        Ok(pair)
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn text(&self, lang: LanguageCode) -> Option<&str> {
        self.text.get(&lang).map(String::as_str)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Error::InvalidPair {
            id: self.id.clone(),
            reason,
        };
        if self.id.is_empty() {
            return Err(invalid("empty id".into()));
        }
        let expected = [self.direction.origin(), self.direction.derived()];
        if self.text.len() != 2 || !expected.iter().all(|l| self.text.contains_key(l)) {
            let found: Vec<String> = self.text.keys().map(|l| l.to_string()).collect();
            return Err(invalid(format!(
                "text languages [{}] do not match direction {}",
                found.join(","),
                self.direction
            )));
        }
        for (lang, t) in &self.text {
            if t.trim().is_empty() {
                return Err(invalid(format!("{lang} text is empty")));
            }
        }
        Ok(())
    }
}

/// A collection of pairs sharing one language pair and one human
/// translation direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectedCorpus {
    pub direction: Direction,
    pub split: Split,
    pub pairs: Vec<DirectedPair>,
}

impl DirectedCorpus {
    pub fn new(direction: Direction, split: Split, pairs: Vec<DirectedPair>) -> Result<Self> {
        let corpus = DirectedCorpus {
            direction,
            split,
            pairs,
        };
        corpus.validate()?;
        Ok(corpus)
    }

    pub fn empty(direction: Direction, split: Split) -> Self {
        DirectedCorpus {
            direction,
            split,
            pairs: Vec::new(),
        }
    }

    pub fn lang_pair(&self) -> LangPair {
        self.direction.lang_pair()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::with_capacity(self.pairs.len());
        for pair in &self.pairs {
            if pair.direction != self.direction {
                return Err(Error::InvalidPair {
                    id: pair.id.clone(),
                    reason: format!(
                        "direction {} differs from corpus direction {}",
                        pair.direction, self.direction
                    ),
                });
            }
            pair.validate()?;
            if !seen.insert(pair.id.as_str()) {
                return Err(Error::InvalidPair {
                    id: pair.id.clone(),
                    reason: "duplicate id in corpus".into(),
                });
            }
        }
        Ok(())
    }

    /// Same header, different pairs. Callers guarantee the pairs are drawn
    /// from a valid corpus with this direction.
    pub(crate) fn with_pairs(&self, pairs: Vec<DirectedPair>) -> Self {
        DirectedCorpus {
            direction: self.direction,
            split: self.split,
            pairs,
        }
    }

    pub fn texts(&self, lang: LanguageCode) -> impl Iterator<Item = &str> {
        self.pairs.iter().filter_map(move |p| p.text(lang))
    }
}
