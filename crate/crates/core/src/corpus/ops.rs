use std::collections::HashSet;

use super::text::{nfc, normalize_whitespace};
use super::{DirectedCorpus, DirectedPair, Split};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Duplicate key: every side's text, whitespace- and NFC-normalized, in
/// language order. Case-sensitive.
pub fn dedup_key(pair: &DirectedPair) -> Vec<String> {
    pair.text
        .values()
        .map(|t| nfc(&normalize_whitespace(t)))
        .collect()
}

/// Keeps the first occurrence of every duplicate group, in input order.
pub fn dedup(corpus: &DirectedCorpus) -> DirectedCorpus {
    let mut seen = HashSet::with_capacity(corpus.len());
    let pairs = corpus
        .pairs
        .iter()
        .filter(|p| seen.insert(dedup_key(p)))
        .cloned()
        .collect();
    corpus.with_pairs(pairs)
}

fn subsample(corpus: &DirectedCorpus, k: usize, rng: &mut SplitMix64) -> DirectedCorpus {
    let pairs = rng
        .sample_sorted(corpus.len(), k)
        .into_iter()
        .map(|i| corpus.pairs[i].clone())
        .collect();
    corpus.with_pairs(pairs)
}

/// Equalizes two opposite-direction corpora of one language pair by
/// uniformly subsampling the larger one (order preserved).
pub fn downsample_to_match(
    a: &DirectedCorpus,
    b: &DirectedCorpus,
    seed: u64,
) -> Result<(DirectedCorpus, DirectedCorpus)> {
    if a.lang_pair() != b.lang_pair() {
        return Err(Error::InvalidArgument(format!(
            "cannot downsample corpora of different language pairs ({} vs {})",
            a.lang_pair(),
            b.lang_pair()
        )));
    }
    if a.direction != b.direction.reversed() {
        return Err(Error::InvalidArgument(format!(
            "downsampling expects opposite directions, got {} and {}",
            a.direction, b.direction
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let n = a.len().min(b.len());
    Ok(match a.len().cmp(&b.len()) {
        std::cmp::Ordering::Greater => (subsample(a, n, &mut rng), b.clone()),
        std::cmp::Ordering::Less => (a.clone(), subsample(b, n, &mut rng)),
        std::cmp::Ordering::Equal => (a.clone(), b.clone()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainDevTest {
    pub train: DirectedCorpus,
    pub dev: DirectedCorpus,
    pub test: DirectedCorpus,
}

fn labeled(corpus: &DirectedCorpus, idx: &[usize], split: Split) -> DirectedCorpus {
    let pairs = idx
        .iter()
        .map(|&i| {
            let mut p = corpus.pairs[i].clone();
            p.meta.insert("split".into(), split.to_string());
            p
        })
        .collect();
    DirectedCorpus {
        direction: corpus.direction,
        split,
        pairs,
    }
}

/// Draws `dev_n` then `test_n` pairs by seeded sampling without
/// replacement; the rest is train. Each output keeps input order.
pub fn split_train_dev_test(
    corpus: &DirectedCorpus,
    dev_n: usize,
    test_n: usize,
    seed: u64,
) -> Result<TrainDevTest> {
    let held_out = dev_n
        .checked_add(test_n)
        .ok_or_else(|| Error::InvalidArgument("dev + test overflows".into()))?;
    if held_out >= corpus.len() {
        return Err(Error::Insufficient(format!(
            "dev ({dev_n}) + test ({test_n}) must be smaller than the corpus ({})",
            corpus.len()
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let drawn = rng.sample_indices(corpus.len(), held_out);
    let mut dev_idx = drawn[..dev_n].to_vec();
    let mut test_idx = drawn[dev_n..].to_vec();
    dev_idx.sort_unstable();
    test_idx.sort_unstable();
    let mut held = vec![false; corpus.len()];
    for &i in &drawn {
        held[i] = true;
    }
    let train_idx: Vec<usize> = (0..corpus.len()).filter(|&i| !held[i]).collect();
    Ok(TrainDevTest {
        train: labeled(corpus, &train_idx, Split::Train),
        dev: labeled(corpus, &dev_idx, Split::Dev),
        test: labeled(corpus, &test_idx, Split::Test),
    })
}
