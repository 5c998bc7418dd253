//! Qualitative translationese orderings on real Europarl transcripts.
//!
//! Set `CAUSALMT_EUROPARL_DIR` to a directory of `<doc>.<lang>.txt`
//! transcripts (and optionally `CAUSALMT_EUROPARL_LANGS`, default `de,en`).
//! Without it every test returns early.

use std::path::PathBuf;
use std::process::Command;

use causalmt::corpus::{dedup, downsample_to_match, read_corpus, DirectedCorpus, LangPair, LanguageCode};
use causalmt::stats::{expansion_factor, passive_pct, side_stats};

struct Corpora {
    /// `x` original, `y` translated.
    forward: DirectedCorpus,
    /// `y` original, `x` translated.
    reverse: DirectedCorpus,
    x: LanguageCode,
    y: LanguageCode,
}

fn load() -> Option<Vec<Corpora>> {
    let dir = PathBuf::from(std::env::var_os("CAUSALMT_EUROPARL_DIR")?);
    let langs = std::env::var("CAUSALMT_EUROPARL_LANGS").unwrap_or_else(|_| "de,en".into());
    let pair = LangPair::parse(&langs).unwrap();
    let out = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_causalmt"))
        .args(["--out", out.path().to_str().unwrap(), "extract", "--in", dir.to_str().unwrap(), "--langs", &langs])
        .status()
        .unwrap();
    assert!(status.success());
    let [a, b] = pair.langs();
    let read = |x: LanguageCode, y: LanguageCode| {
        dedup(&read_corpus(&out.path().join(format!("{x}2{y}.unsplit.jsonl"))).unwrap())
    };
    let (ab, ba) = downsample_to_match(&read(a, b), &read(b, a), 42).unwrap();
    Some(vec![
        Corpora { forward: ab.clone(), reverse: ba.clone(), x: a, y: b },
        Corpora { forward: ba, reverse: ab, x: b, y: a },
    ])
}

#[test]
fn translated_side_has_smaller_vocabulary() {
    let Some(sets) = load() else { return };
    for c in sets {
        let translated = side_stats(&c.forward, c.y).unwrap().vocab_size;
        let original = side_stats(&c.reverse, c.y).unwrap().vocab_size;
        assert!(translated < original, "{}: {translated} vs {original}", c.y);
    }
}

#[test]
fn translation_expands_into_the_target() {
    let Some(sets) = load() else { return };
    for c in sets {
        let forward = expansion_factor(&c.forward, c.y, c.x).unwrap().value();
        let reverse = expansion_factor(&c.reverse, c.y, c.x).unwrap().value();
        assert!(forward > reverse, "{}:{} {forward:.4} vs {reverse:.4}", c.y, c.x);
    }
}

#[test]
fn translated_english_is_more_passive() {
    let Some(sets) = load() else { return };
    for c in sets.into_iter().filter(|c| c.y == LanguageCode::EN) {
        let translated = passive_pct(&c.forward).unwrap();
        let original = passive_pct(&c.reverse).unwrap();
        assert!(translated > original, "{translated:.4} vs {original:.4}");
    }
}
