//! Covariate matching between a causal and an anticausal corpus: sentence
//! vectors, length-bucketed candidate edges, and one-to-one maximum
//! matching.

mod candidates;
mod embed;
mod flow;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{word_tokens, DirectedCorpus, LangPair, LanguageCode};
use crate::error::{Error, Result};

pub use candidates::{generate_candidates, len_ratio, Candidate, SideItem};
pub use embed::{
    embed_builtin, fnv1a64, fold, load_embeddings, load_embeddings_from, write_sparse_embeddings,
    write_sparse_embeddings_to, Embedding, EmbeddingTable, SparseVector, DENSE_FORMAT, HASH_BITS, HASH_DIM,
    SPARSE_FORMAT,
};
pub use flow::maximum_matching;

const MATCH_PRIORITY: [LanguageCode; 4] = [LanguageCode::EN, LanguageCode::DE, LanguageCode::FR, LanguageCode::ES];

/// Higher-ranked member of the pair under En > De > Fr > Es.
pub fn choose_match_language(pair: LangPair) -> Result<LanguageCode> {
    for lang in pair.langs() {
        if !MATCH_PRIORITY.contains(&lang) {
            return Err(Error::UnsupportedLanguage {
                lang: lang.to_string(),
                supported: "{en, de, fr, es}".into(),
            });
        }
    }
    Ok(*MATCH_PRIORITY
        .iter()
        .find(|l| pair.contains(**l))
        .expect("both members are ranked"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MatchConstraint {
    pub max_len_ratio: f64,
    pub min_cosine: f64,
    pub match_lang: LanguageCode,
    /// `None` keeps every admissible candidate.
    pub candidate_cap: Option<usize>,
}

impl MatchConstraint {
    pub const DEFAULT_MAX_LEN_RATIO: f64 = 1.1;
    pub const DEFAULT_MIN_COSINE: f64 = 0.7;
    pub const DEFAULT_CANDIDATE_CAP: usize = 64;

    pub fn new(match_lang: LanguageCode) -> Self {
        MatchConstraint {
            max_len_ratio: Self::DEFAULT_MAX_LEN_RATIO,
            min_cosine: Self::DEFAULT_MIN_COSINE,
            match_lang,
            candidate_cap: Some(Self::DEFAULT_CANDIDATE_CAP),
        }
    }

    pub fn for_pair(pair: LangPair) -> Result<Self> {
        Ok(Self::new(choose_match_language(pair)?))
    }

    pub fn validate(&self) -> Result<()> {
        if !self.max_len_ratio.is_finite() || self.max_len_ratio < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "max length ratio must be a finite value >= 1, got {}",
                self.max_len_ratio
            )));
        }
        if !(self.min_cosine > -1.0 && self.min_cosine <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "minimum cosine must lie in (-1, 1], got {}",
                self.min_cosine
            )));
        }
        if self.candidate_cap == Some(0) {
            return Err(Error::InvalidArgument("candidate cap must be positive".into()));
        }
        Ok(())
    }

    pub fn admits(&self, cosine: f64, ratio: f64) -> bool {
        cosine > self.min_cosine && ratio <= self.max_len_ratio
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MatchMode {
    /// One-to-one matching of maximum cardinality.
    #[default]
    Maximum,
    /// Each causal item in order takes its most similar still-unused candidate.
    Greedy,
}

/// Where sentence vectors come from.
#[derive(Clone, Copy, Debug)]
pub enum VectorSource<'a> {
    Builtin,
    Table(&'a EmbeddingTable),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchedPair {
    pub causal_id: String,
    pub anticausal_id: String,
    pub cosine: f64,
    pub len_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchSummary {
    pub n_causal: usize,
    pub n_anticausal: usize,
    pub n_candidates: usize,
    pub cardinality: usize,
    pub mean_cosine: Option<f64>,
    pub mean_len_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchResult {
    pub pairs: Vec<MatchedPair>,
    pub matched_causal: DirectedCorpus,
    pub matched_anticausal: DirectedCorpus,
    pub summary: MatchSummary,
}

pub fn match_length(text: &str) -> usize {
    word_tokens(text).count()
}

fn side_vectors(corpus: &DirectedCorpus, lang: LanguageCode, source: VectorSource) -> Result<Vec<Option<Embedding>>> {
    match source {
        VectorSource::Builtin => Ok(corpus
            .pairs
            .par_iter()
            .map(|p| {
                let v = embed_builtin(p.text(lang).unwrap_or_default());
                (!v.is_zero()).then_some(Embedding::Sparse(v))
            })
            .collect()),
        VectorSource::Table(t) => corpus
            .pairs
            .iter()
            .map(|p| {
                t.get(&p.id)
                    .cloned()
                    .map(Some)
                    .ok_or_else(|| Error::InvalidArgument(format!("no embedding for pair {:?}", p.id)))
            })
            .collect(),
    }
}

fn side_items<'a>(corpus: &DirectedCorpus, lang: LanguageCode, vs: &'a [Option<Embedding>]) -> Vec<SideItem<'a>> {
    corpus
        .pairs
        .iter()
        .zip(vs)
        .map(|(p, v)| SideItem {
            len: match_length(p.text(lang).unwrap_or_default()),
            vector: v.as_ref(),
        })
        .collect()
}

fn greedy_matching(cands: &[Candidate], n_right: usize) -> Vec<(usize, usize)> {
    let mut used = vec![false; n_right];
    let mut out = Vec::new();
    let mut i = 0;
    while i < cands.len() {
        let left = cands[i].left;
        let mut taken = false;
        while i < cands.len() && cands[i].left == left {
            if !taken && !used[cands[i].right] {
                used[cands[i].right] = true;
                out.push((left, cands[i].right));
                taken = true;
            }
            i += 1;
        }
    }
    out
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (n, s) = xs.fold((0usize, 0.0), |(n, s), x| (n + 1, s + x));
    (n > 0).then(|| s / n as f64)
}

pub fn match_corpora(
    causal: &DirectedCorpus,
    anticausal: &DirectedCorpus,
    c: &MatchConstraint,
    source: VectorSource,
    mode: MatchMode,
) -> Result<MatchResult> {
    c.validate()?;
    if causal.lang_pair() != anticausal.lang_pair() {
        return Err(Error::InvalidArgument(format!(
            "cannot match {} against {}",
            causal.lang_pair(),
            anticausal.lang_pair()
        )));
    }
    if !causal.lang_pair().contains(c.match_lang) {
        return Err(Error::InvalidArgument(format!(
            "match language {} is not part of {}",
            c.match_lang,
            causal.lang_pair()
        )));
    }
    let lv = side_vectors(causal, c.match_lang, source)?;
    let rv = side_vectors(anticausal, c.match_lang, source)?;
    let left = side_items(causal, c.match_lang, &lv);
    let right = side_items(anticausal, c.match_lang, &rv);

    let cands = generate_candidates(&left, &right, c);
    let chosen = match mode {
        MatchMode::Maximum => {
            let edges: Vec<(usize, usize)> = cands.iter().map(|e| (e.left, e.right)).collect();
            maximum_matching(&edges, left.len(), right.len())
        }
        MatchMode::Greedy => greedy_matching(&cands, right.len()),
    };
    let lookup: BTreeMap<(usize, usize), &Candidate> = cands.iter().map(|e| ((e.left, e.right), e)).collect();
    let pairs: Vec<MatchedPair> = chosen
        .iter()
        .map(|k| {
            let e = lookup[k];
            MatchedPair {
                causal_id: causal.pairs[e.left].id.clone(),
                anticausal_id: anticausal.pairs[e.right].id.clone(),
                cosine: e.cosine,
                len_ratio: e.len_ratio,
            }
        })
        .collect();
    let summary = MatchSummary {
        n_causal: causal.len(),
        n_anticausal: anticausal.len(),
        n_candidates: cands.len(),
        cardinality: pairs.len(),
        mean_cosine: mean(pairs.iter().map(|p| p.cosine)),
        mean_len_ratio: mean(pairs.iter().map(|p| p.len_ratio)),
    };
    Ok(MatchResult {
        matched_causal: causal.with_pairs(chosen.iter().map(|&(l, _)| causal.pairs[l].clone()).collect()),
        matched_anticausal: anticausal.with_pairs(chosen.iter().map(|&(_, r)| anticausal.pairs[r].clone()).collect()),
        pairs,
        summary,
    })
}

pub fn render_match_tsv(result: &MatchResult) -> String {
    let mut out = String::from("causal_id\tanticausal_id\tcosine\tlen_ratio\n");
    for p in &result.pairs {
        let _ = writeln!(out, "{}\t{}\t{:.4}\t{:.4}", p.causal_id, p.anticausal_id, p.cosine, p.len_ratio);
    }
    out
}

pub fn write_match_tsv(result: &MatchResult, path: &Path) -> Result<()> {
    fs::write(path, render_match_tsv(result)).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Counts of match-language lengths in buckets of `width` tokens.
pub fn length_histogram(corpus: &DirectedCorpus, lang: LanguageCode, width: usize) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for t in corpus.texts(lang) {
        *h.entry(match_length(t) / width.max(1)).or_default() += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{DirectedPair, Direction, Split};
    use crate::rng::SplitMix64;

    fn lp(s: &str) -> LangPair {
        LangPair::parse(s).unwrap()
    }

    #[test]
    fn match_language_priority() {
        assert_eq!(choose_match_language(lp("de,en")).unwrap(), LanguageCode::EN);
        assert_eq!(choose_match_language(lp("es,fr")).unwrap(), LanguageCode::FR);
        assert_eq!(choose_match_language(lp("de,es")).unwrap(), LanguageCode::DE);
        assert!(choose_match_language(lp("en,it")).is_err());
        assert!(LangPair::parse("en,en").is_err());
    }

    #[test]
    fn constraint_defaults_and_validation() {
        let c = MatchConstraint::new(LanguageCode::EN);
        assert_eq!((c.max_len_ratio, c.min_cosine, c.candidate_cap), (1.1, 0.7, Some(64)));
        assert!(c.validate().is_ok());
        assert!(MatchConstraint { max_len_ratio: 0.9, ..c }.validate().is_err());
        assert!(MatchConstraint { min_cosine: -1.0, ..c }.validate().is_err());
        assert!(MatchConstraint { min_cosine: 1.0, ..c }.validate().is_ok());
        assert!(c.admits(0.71, 1.1));
        assert!(!c.admits(0.7, 1.0));
    }

    fn random_text(rng: &mut SplitMix64, len: usize, vocab: u64) -> String {
        (0..len).map(|_| format!("w{}", rng.below(vocab))).collect::<Vec<_>>().join(" ")
    }

    fn corpus(direction: &str, texts: Vec<String>) -> DirectedCorpus {
        let d = Direction::parse(direction).unwrap();
        let pairs = texts
            .into_iter()
            .enumerate()
            .map(|(i, en)| {
                let (o, t) = if d.origin() == LanguageCode::EN { (en, format!("x{i}")) } else { (format!("x{i}"), en) };
                DirectedPair::new(format!("{}-{i}", d.stem()), d, o, t).unwrap()
            })
            .collect();
        DirectedCorpus::new(d, Split::Train, pairs).unwrap()
    }

    /// Anticausal texts are perturbed copies of causal ones plus noise.
    fn planted(n: usize, seed: u64) -> (DirectedCorpus, DirectedCorpus) {
        let mut rng = SplitMix64::new(seed);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for _ in 0..n {
            let len = 5 + rng.below(26) as usize;
            let t = random_text(&mut rng, len, 300);
            left.push(t.clone());
            match rng.below(3) {
                0 => right.push(random_text(&mut rng, len, 300)),
                1 => right.push(format!("{t} extra")),
                _ => right.push(t),
            }
        }
        rng.shuffle(&mut right);
        (corpus("en-de", left), corpus("de-en", right))
    }

    fn brute_edges(l: &DirectedCorpus, r: &DirectedCorpus, c: &MatchConstraint) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, p) in l.pairs.iter().enumerate() {
            for (j, q) in r.pairs.iter().enumerate() {
                let (a, b) = (p.text(c.match_lang).unwrap(), q.text(c.match_lang).unwrap());
                let (la, lb) = (match_length(a), match_length(b));
                if la == 0 || lb == 0 {
                    continue;
                }
                let cos = embed_builtin(a).cosine(&embed_builtin(b));
                if c.admits(cos, len_ratio(la, lb)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn candidate_edges(l: &DirectedCorpus, r: &DirectedCorpus, c: &MatchConstraint) -> Vec<(usize, usize)> {
        let lv = side_vectors(l, c.match_lang, VectorSource::Builtin).unwrap();
        let rv = side_vectors(r, c.match_lang, VectorSource::Builtin).unwrap();
        let ls = side_items(l, c.match_lang, &lv);
        let rs = side_items(r, c.match_lang, &rv);
        let mut e: Vec<(usize, usize)> = generate_candidates(&ls, &rs, c).iter().map(|e| (e.left, e.right)).collect();
        e.sort_unstable();
        e
    }

    #[test]
    fn candidates_equal_brute_force() {
        let (l, r) = planted(20, 5);
        let c = MatchConstraint { candidate_cap: None, ..MatchConstraint::new(LanguageCode::EN) };
        let got = candidate_edges(&l, &r, &c);
        assert_eq!(got, brute_edges(&l, &r, &c));
        assert!(!got.is_empty());
        let loose = MatchConstraint { min_cosine: 0.0, max_len_ratio: 1.5, ..c };
        assert_eq!(candidate_edges(&l, &r, &loose), brute_edges(&l, &r, &loose));
    }

    #[test]
    fn no_length_compatible_candidate() {
        let l = corpus("en-de", vec!["a b c d e f g h i j".into()]);
        let r = corpus("de-en", vec!["a b c d e f g h i j k l".into()]);
        let c = MatchConstraint::new(LanguageCode::EN);
        assert!(candidate_edges(&l, &r, &c).is_empty());
    }

    #[test]
    fn self_match_is_complete() {
        let (l, _) = planted(40, 6);
        let c = MatchConstraint::new(LanguageCode::EN);
        let m = match_corpora(&l, &l, &c, VectorSource::Builtin, MatchMode::Maximum).unwrap();
        assert_eq!(m.summary.cardinality, 40);
        for p in &m.pairs {
            assert!(p.cosine > 0.999 && p.len_ratio == 1.0);
        }
    }

    #[test]
    fn planted_matching_is_constrained_and_maximum() {
        let (l, r) = planted(30, 8);
        let c = MatchConstraint::new(LanguageCode::EN);
        let m = match_corpora(&l, &r, &c, VectorSource::Builtin, MatchMode::Maximum).unwrap();
        let mut seen_l = std::collections::HashSet::new();
        let mut seen_r = std::collections::HashSet::new();
        for p in &m.pairs {
            assert!(seen_l.insert(&p.causal_id) && seen_r.insert(&p.anticausal_id));
            assert!(p.len_ratio <= 1.1 && p.cosine > 0.7);
        }
        let edges = brute_edges(&l, &r, &c);
        assert_eq!(m.summary.cardinality, maximum_matching(&edges, 30, 30).len());
        assert!(m.summary.cardinality >= 15);
        assert_eq!(m.matched_causal.len(), m.matched_anticausal.len());
        assert_eq!(m.matched_causal.pairs[0].id, m.pairs[0].causal_id);
    }

    #[test]
    fn greedy_mode_is_one_to_one() {
        let (l, r) = planted(30, 9);
        let c = MatchConstraint::new(LanguageCode::EN);
        let g = match_corpora(&l, &r, &c, VectorSource::Builtin, MatchMode::Greedy).unwrap();
        let m = match_corpora(&l, &r, &c, VectorSource::Builtin, MatchMode::Maximum).unwrap();
        assert!(g.summary.cardinality <= m.summary.cardinality);
        let mut ids: Vec<&str> = g.pairs.iter().map(|p| p.anticausal_id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), g.pairs.len());
    }

    #[test]
    fn matched_length_histograms_balance() {
        let mut rng = SplitMix64::new(10);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for _ in 0..400 {
            let len = 5 + rng.below(30) as usize;
            let t = random_text(&mut rng, len, 500);
            left.push(t.clone());
            right.push(t);
        }
        for _ in 0..100 {
            let len = 5 + rng.below(30) as usize;
            right.push(random_text(&mut rng, len, 500));
        }
        rng.shuffle(&mut right);
        let (l, r) = (corpus("en-de", left), corpus("de-en", right));
        let m = match_corpora(&l, &r, &MatchConstraint::new(LanguageCode::EN), VectorSource::Builtin, MatchMode::Maximum)
            .unwrap();
        let hl = length_histogram(&m.matched_causal, LanguageCode::EN, 5);
        let hr = length_histogram(&m.matched_anticausal, LanguageCode::EN, 5);
        for (b, &nl) in &hl {
            let nr = hr.get(b).copied().unwrap_or(0);
            assert!((nl as f64 - nr as f64).abs() <= 0.05 * nl as f64, "bucket {b}: {nl} vs {nr}");
        }
    }

    #[test]
    fn deterministic() {
        let (l, r) = planted(50, 11);
        let c = MatchConstraint::new(LanguageCode::EN);
        let a = match_corpora(&l, &r, &c, VectorSource::Builtin, MatchMode::Maximum).unwrap();
        let b = match_corpora(&l, &r, &c, VectorSource::Builtin, MatchMode::Maximum).unwrap();
        assert_eq!(a, b);
        assert_eq!(render_match_tsv(&a), render_match_tsv(&b));
    }

    #[test]
    fn table_source_requires_every_id() {
        let l = corpus("en-de", vec!["a b".into()]);
        let t = EmbeddingTable::default();
        let c = MatchConstraint::new(LanguageCode::EN);
        assert!(match_corpora(&l, &l, &c, VectorSource::Table(&t), MatchMode::Maximum).is_err());
    }

    #[test]
    fn tsv_export() {
        let l = corpus("en-de", vec!["a b c".into()]);
        let m = match_corpora(&l, &l, &MatchConstraint::new(LanguageCode::EN), VectorSource::Builtin, MatchMode::Maximum)
            .unwrap();
        assert_eq!(render_match_tsv(&m), "causal_id\tanticausal_id\tcosine\tlen_ratio\nen2de-0\ten2de-0\t1.0000\t1.0000\n");
    }
}
