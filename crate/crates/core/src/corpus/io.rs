//! Corpus JSONL: one header object, then one pair object per line.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::text::nfc;
use super::{DirectedCorpus, DirectedPair, Direction, LangPair, LanguageCode, Split};
use crate::error::{Error, Result};

pub const CORPUS_FORMAT: &str = "causalmt-corpus/1";

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    lang_pair: LangPair,
    direction: Direction,
    split: Split,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Row {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    direction: Option<Direction>,
    text: BTreeMap<LanguageCode, String>,
    #[serde(default)]
    meta: BTreeMap<String, String>,
}

pub fn write_corpus_to<W: Write>(corpus: &DirectedCorpus, mut out: W) -> Result<()> {
    let header = Header {
        format: CORPUS_FORMAT.to_string(),
        lang_pair: corpus.lang_pair(),
        direction: corpus.direction,
        split: corpus.split,
    };
    let io = |e| Error::io("writing corpus", e);
    serde_json::to_writer(&mut out, &header)?;
    out.write_all(b"\n").map_err(io)?;
    for pair in &corpus.pairs {
        let row = Row {
            id: pair.id.clone(),
            direction: None,
            text: pair.text.clone(),
            meta: pair.meta.clone(),
        };
        serde_json::to_writer(&mut out, &row)?;
        out.write_all(b"\n").map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn write_corpus(corpus: &DirectedCorpus, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_corpus_to(corpus, BufWriter::new(file))
}

/// Reads a corpus, NFC-normalizing every text and enforcing the header's
/// direction on every pair.
pub fn read_corpus_from<R: BufRead>(input: R, name: &str) -> Result<DirectedCorpus> {
    let mut lines = input.lines().enumerate();
    let header: Header = match lines.next() {
        Some((_, line)) => {
            let line = line.map_err(|e| Error::io(name, e))?;
            serde_json::from_str(line.trim_start_matches('\u{feff}'))
                .map_err(|e| Error::parse(name, 1, format!("bad header: {e}")))?
        }
        None => return Err(Error::parse(name, 1, "empty file: missing header")),
    };
    if header.format != CORPUS_FORMAT {
        return Err(Error::parse(
            name,
            1,
            format!("unsupported format {:?}, expected {CORPUS_FORMAT:?}", header.format),
        ));
    }
    if header.direction.lang_pair() != header.lang_pair {
        return Err(Error::parse(
            name,
            1,
            format!(
                "direction {} is not within lang_pair {}",
                header.direction, header.lang_pair
            ),
        ));
    }
    let mut pairs = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: Row = serde_json::from_str(&line)
            .map_err(|e| Error::parse(name, lineno, format!("malformed pair: {e}")))?;
        if let Some(d) = row.direction {
            if d != header.direction {
                return Err(Error::parse(
                    name,
                    lineno,
                    format!(
                        "pair {:?} has direction {d}, header says {}",
                        row.id, header.direction
                    ),
                ));
            }
        }
        let pair = DirectedPair {
            id: row.id,
            text: row.text.into_iter().map(|(l, t)| (l, nfc(&t))).collect(),
            direction: header.direction,
            meta: row.meta,
        };
        pair.validate()
            .map_err(|e| Error::parse(name, lineno, e.to_string()))?;
        pairs.push(pair);
    }
    DirectedCorpus::new(header.direction, header.split, pairs)
}

pub fn read_corpus(path: &Path) -> Result<DirectedCorpus> {
    let file = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    read_corpus_from(BufReader::new(file), &path.display().to_string())
}
