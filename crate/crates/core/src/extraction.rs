//! Europarl-style transcript parsing and origin labeling.
//!
//! A transcript file is a sequence of tag lines and text lines:
//!
//! ```text
//! <CHAPTER ID="1">
//! <SPEAKER ID="1" LANGUAGE="DE" NAME="Müller">
//! Text line one.
//! <P>
//! Text line two.
//! ```
//!
//! `CHAPTER` lines start a new transcript, `SPEAKER` lines set the speaker
//! (and optional declared language) for the text lines that follow, and any
//! other tag (such as `<P>`) is skipped. Every text line is one utterance;
//! input is expected to be sentence-aligned line by line across languages.

use std::collections::BTreeMap;

use crate::corpus::{DirectedCorpus, DirectedPair, Direction, LanguageCode, Split};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Utterance {
    pub transcript_id: String,
    pub position: usize,
    pub speaker_lang_tag: Option<LanguageCode>,
    pub text: String,
    pub doc_lang: LanguageCode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OriginLabel {
    Original,
    Translated,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct ParsedTranscript {
    pub utterances: Vec<Utterance>,
    pub warnings: Vec<ParseWarning>,
}

struct Tag<'a> {
    name: &'a str,
    attrs: BTreeMap<String, String>,
}

/// Parses `<NAME KEY="v" KEY=v ...>`; `offset` is the byte offset of the `<`.
fn parse_tag(line: &str, offset: usize) -> Result<Tag<'_>> {
    let err = |at: usize, message: String| Error::Markup {
        offset: offset + at,
        message,
    };
    let body = line
        .strip_prefix('<')
        .and_then(|l| l.strip_suffix('>'))
        .ok_or_else(|| err(0, "tag is not closed with '>'".into()))?;
    let name_end = body.find(char::is_whitespace).unwrap_or(body.len());
    let name = &body[..name_end];
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '/') {
        return Err(err(1, format!("invalid tag name {name:?}")));
    }
    let mut attrs = BTreeMap::new();
    let bytes = body.as_bytes();
    let mut i = name_end;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let key_start = i;
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
            i += 1;
        }
        if i == key_start {
            return Err(err(1 + i, "expected attribute name".into()));
        }
        let key = body[key_start..i].to_ascii_uppercase();
        if i >= bytes.len() || bytes[i] != b'=' {
            return Err(err(1 + i, format!("attribute {key} has no value")));
        }
        i += 1;
        let value = if i < bytes.len() && bytes[i] == b'"' {
            let start = i + 1;
            let end = body[start..]
                .find('"')
                .map(|e| start + e)
                .ok_or_else(|| err(1 + i, format!("unterminated value for attribute {key}")))?;
            i = end + 1;
            &body[start..end]
        } else {
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            &body[start..i]
        };
        attrs.insert(key, value.to_string());
    }
    Ok(Tag { name, attrs })
}

/// Parses one transcript file written in `doc_lang`. Utterances from text
/// before any `CHAPTER` line belong to transcript `"0"`.
pub fn parse_transcript(raw: &str, doc_lang: LanguageCode) -> Result<ParsedTranscript> {
    let mut parsed = ParsedTranscript::default();
    let mut transcript_id = String::from("0");
    let mut position = 0usize;
    let mut speaker_tag: Option<LanguageCode> = None;
    let mut offset = 0usize;
    for raw_line in raw.split_inclusive('\n') {
        let line_offset = offset;
        offset += raw_line.len();
        let leading = raw_line.len() - raw_line.trim_start().len();
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('<') {
            let tag = parse_tag(line, line_offset + leading)?;
            match tag.name.to_ascii_uppercase().as_str() {
                "CHAPTER" => {
                    transcript_id = tag
                        .attrs
                        .get("ID")
                        .cloned()
                        .ok_or_else(|| Error::Markup {
                            offset: line_offset + leading,
                            message: "CHAPTER without ID".into(),
                        })?;
                    position = 0;
                    speaker_tag = None;
                }
                "SPEAKER" => {
                    speaker_tag = match tag.attrs.get("LANGUAGE") {
                        None => None,
                        Some(v) if v.trim().is_empty() => None,
                        Some(v) => match LanguageCode::new(&v.trim().to_ascii_lowercase()) {
                            Ok(code) => Some(code),
                            Err(_) => {
                                parsed.warnings.push(ParseWarning {
                                    offset: line_offset + leading,
                                    message: format!(
                                        "unknown LANGUAGE {v:?}; speaker treated as unlabeled"
                                    ),
                                });
                                None
                            }
                        },
                    };
                }
                _ => {}
            }
            continue;
        }
        parsed.utterances.push(Utterance {
            transcript_id: transcript_id.clone(),
            position,
            speaker_lang_tag: speaker_tag,
            text: line.to_string(),
            doc_lang,
        });
        position += 1;
    }
    Ok(parsed)
}

/// Prefixes every transcript id with a document name, so that transcripts
/// from different files stay distinct (`"ep-00-01-17/1"`).
pub fn qualify_transcripts(utterances: &mut [Utterance], document: &str) {
    for u in utterances {
        u.transcript_id = format!("{document}/{}", u.transcript_id);
    }
}

pub fn label_origin(u: &Utterance) -> OriginLabel {
    match u.speaker_lang_tag {
        Some(tag) if tag == u.doc_lang => OriginLabel::Original,
        Some(_) => OriginLabel::Translated,
        None => OriginLabel::Unknown,
    }
}

#[derive(Clone, Debug)]
pub struct Extracted {
    /// X→Y: X side original.
    pub forward: DirectedCorpus,
    /// X←Y: Y side original.
    pub backward: DirectedCorpus,
    pub discarded: usize,
}

fn doc_lang_of(side: &[Utterance]) -> Result<Option<LanguageCode>> {
    let Some(first) = side.first() else {
        return Ok(None);
    };
    if let Some(u) = side.iter().find(|u| u.doc_lang != first.doc_lang) {
        return Err(Error::InvalidArgument(format!(
            "mixed document languages on one side: {} and {}",
            first.doc_lang, u.doc_lang
        )));
    }
    Ok(Some(first.doc_lang))
}

fn make_pair(origin: &Utterance, derived: &Utterance) -> Result<DirectedPair> {
    let direction = Direction::new(origin.doc_lang, derived.doc_lang)?;
    let id = format!("{}:{}", origin.transcript_id, origin.position);
    let tag = origin
        .speaker_lang_tag
        .map(|l| l.to_string())
        .unwrap_or_default();
    Ok(DirectedPair::new(id, direction, origin.text.clone(), derived.text.clone())?
        .with_meta("transcript_id", origin.transcript_id.clone())
        .with_meta("speaker_lang_tag", tag))
}

/// Routes positionally aligned utterances into the two direction-labeled
/// corpora. Pairs with an unknown label, two originals, two translations,
/// or an origin tag naming a third language are discarded.
pub fn build_directed_corpora(
    side_x: &[Utterance],
    side_y: &[Utterance],
    x: LanguageCode,
    y: LanguageCode,
) -> Result<Extracted> {
    if side_x.len() != side_y.len() {
        return Err(Error::LengthMismatch {
            left: side_x.len(),
            right: side_y.len(),
        });
    }
    for (side, lang) in [(side_x, x), (side_y, y)] {
        if let Some(found) = doc_lang_of(side)? {
            if found != lang {
                return Err(Error::InvalidArgument(format!(
                    "expected {lang} utterances, found {found}"
                )));
            }
        }
    }
    let forward_dir = Direction::new(x, y)?;
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    let mut discarded = 0;
    for (ux, uy) in side_x.iter().zip(side_y) {
        let in_pair = |u: &Utterance| u.speaker_lang_tag.is_some_and(|t| t == x || t == y);
        if !in_pair(ux) || !in_pair(uy) {
            discarded += 1;
            continue;
        }
        match (label_origin(ux), label_origin(uy)) {
            (OriginLabel::Original, OriginLabel::Translated) => forward.push(make_pair(ux, uy)?),
            (OriginLabel::Translated, OriginLabel::Original) => backward.push(make_pair(uy, ux)?),
            _ => discarded += 1,
        }
    }
    Ok(Extracted {
        forward: DirectedCorpus::new(forward_dir, Split::Unsplit, forward)?,
        backward: DirectedCorpus::new(forward_dir.reversed(), Split::Unsplit, backward)?,
        discarded,
    })
}
