#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;

use causalmt::causal::{ScoreRecord, TestHalf, TrainSpec};
use causalmt::corpus::{DirectedCorpus, DirectedPair, Direction, LanguageCode, Split};
use causalmt::rng::SplitMix64;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

/// Writes straight to the process stdout so the line survives libtest's
/// output capture.
pub fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

pub fn verdict(criterion: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    emit(&format!("[{tag}] {criterion}: {detail}"));
}

pub fn dir(s: &str) -> Direction {
    Direction::parse(s).unwrap()
}

pub fn random_text(rng: &mut SplitMix64, len: usize, vocab: u64) -> String {
    (0..len).map(|_| format!("w{}", rng.below(vocab))).collect::<Vec<_>>().join(" ")
}

/// Corpus whose `lang` side carries `texts`; the other side is a filler.
pub fn corpus_with(direction: &str, lang: LanguageCode, texts: Vec<String>) -> DirectedCorpus {
    let d = dir(direction);
    let pairs = texts
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let filler = format!("x{i}");
            let (o, r) = if d.origin() == lang { (t, filler) } else { (filler, t) };
            DirectedPair::new(format!("{}-{i}", d.stem()), d, o, r).unwrap()
        })
        .collect();
    DirectedCorpus::new(d, Split::Train, pairs).unwrap()
}

/// Numbered pairs `{stem}-{i}` with short generated texts.
pub fn numbered(direction: &str, n: usize) -> DirectedCorpus {
    let d = dir(direction);
    let pairs = (0..n)
        .map(|i| DirectedPair::new(format!("{}-{i}", d.stem()), d, format!("o{i}"), format!("t{i}")).unwrap())
        .collect();
    DirectedCorpus::new(d, Split::Train, pairs).unwrap()
}

pub fn record(task: Direction, spec: TrainSpec, half: TestHalf, value: f64) -> ScoreRecord {
    ScoreRecord {
        experiment_id: format!("{task}.{spec}"),
        task,
        train_spec: spec,
        test_half: half,
        metric_name: "BLEU".into(),
        value,
    }
}

/// Four cells: causal-spec and anticausal-spec scores on both halves.
pub fn contrast_cells(task: Direction, causal: TrainSpec, anti: TrainSpec, v: [f64; 4]) -> Vec<ScoreRecord> {
    vec![
        record(task, causal, TestHalf::T1, v[0]),
        record(task, causal, TestHalf::T2, v[1]),
        record(task, anti, TestHalf::T1, v[2]),
        record(task, anti, TestHalf::T2, v[3]),
    ]
}
