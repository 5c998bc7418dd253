//! Training-set construction: α%-mixtures of the two human translation
//! directions, half splits for semi-supervised runs, monolingual exports,
//! and pseudo-parallel corpora assembled from external MT output.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{DirectedCorpus, DirectedPair, Direction, LangPair, LanguageCode};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

pub const MIXTURE_FORMAT: &str = "causalmt-mixture/1";
pub const PSEUDO_FORMAT: &str = "causalmt-pseudo/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixtureSpec {
    alpha: u8,
    pub total_size: usize,
    pub seed: u64,
}

impl MixtureSpec {
    pub fn new(alpha: u8, total_size: usize, seed: u64) -> Result<Self> {
        if alpha > 100 {
            return Err(Error::InvalidArgument(format!(
                "alpha must be within 0..=100, got {alpha}"
            )));
        }
        Ok(MixtureSpec {
            alpha,
            total_size,
            seed,
        })
    }

    pub fn alpha(&self) -> u8 {
        self.alpha
    }

    /// `round(alpha / 100 * total)`, halves rounded up.
    pub fn aligned_count(&self) -> usize {
        aligned_count(self.alpha, self.total_size)
    }
}

pub fn aligned_count(alpha: u8, total: usize) -> usize {
    ((u128::from(alpha) * total as u128 + 50) / 100) as usize
}

/// A training set drawn from both directions of one language pair. Each
/// pair keeps its own direction label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCorpus {
    pub aligned_direction: Direction,
    pub spec: MixtureSpec,
    pub pairs: Vec<DirectedPair>,
}

impl MixedCorpus {
    pub fn lang_pair(&self) -> LangPair {
        self.aligned_direction.lang_pair()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn count_direction(&self, direction: Direction) -> usize {
        self.pairs.iter().filter(|p| p.direction == direction).count()
    }
}

fn check_opposite(aligned: &DirectedCorpus, unaligned: &DirectedCorpus) -> Result<()> {
    if aligned.direction.reversed() != unaligned.direction {
        return Err(Error::InvalidArgument(format!(
            "expected opposite directions of one language pair, got {} and {}",
            aligned.direction, unaligned.direction
        )));
    }
    Ok(())
}

pub fn make_mixture(
    aligned: &DirectedCorpus,
    unaligned: &DirectedCorpus,
    spec: MixtureSpec,
) -> Result<MixedCorpus> {
    check_opposite(aligned, unaligned)?;
    let n_aligned = spec.aligned_count();
    let n_unaligned = spec.total_size - n_aligned;
    if aligned.len() < n_aligned || unaligned.len() < n_unaligned {
        return Err(Error::Insufficient(format!(
            "alpha={} total={} needs {n_aligned} {} pairs (have {}) and {n_unaligned} {} pairs (have {})",
            spec.alpha,
            spec.total_size,
            aligned.direction,
            aligned.len(),
            unaligned.direction,
            unaligned.len()
        )));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let mut pairs = Vec::with_capacity(spec.total_size);
    for (source, k) in [(aligned, n_aligned), (unaligned, n_unaligned)] {
        pairs.extend(
            rng.sample_sorted(source.len(), k)
                .into_iter()
                .map(|i| source.pairs[i].clone()),
        );
    }
    rng.shuffle(&mut pairs);
    Ok(MixedCorpus {
        aligned_direction: aligned.direction,
        spec,
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SslHalves {
    pub a_half1: DirectedCorpus,
    pub a_half2: DirectedCorpus,
    pub b_half1: DirectedCorpus,
    pub b_half2: DirectedCorpus,
}

fn halve(corpus: &DirectedCorpus, rng: &mut SplitMix64) -> (DirectedCorpus, DirectedCorpus) {
    let n = corpus.len();
    let first = n.div_ceil(2);
    let perm = rng.sample_indices(n, n);
    let mut in_first = vec![false; n];
    for &i in &perm[..first] {
        in_first[i] = true;
    }
    let (h1, h2): (Vec<_>, Vec<_>) = corpus
        .pairs
        .iter()
        .zip(&in_first)
        .partition(|(_, &f)| f);
    (
        corpus.with_pairs(h1.into_iter().map(|(p, _)| p.clone()).collect()),
        corpus.with_pairs(h2.into_iter().map(|(p, _)| p.clone()).collect()),
    )
}

/// Splits both corpora into seeded halves of sizes `ceil(n/2)` and
/// `floor(n/2)`. Half1s are the supervised sources, Half2s the monolingual
/// sources.
pub fn halve_for_ssl(a: &DirectedCorpus, b: &DirectedCorpus, seed: u64) -> Result<SslHalves> {
    check_opposite(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidCorpus("cannot halve an empty corpus".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let (a_half1, a_half2) = halve(a, &mut rng);
    let (b_half1, b_half2) = halve(b, &mut rng);
    Ok(SslHalves {
        a_half1,
        a_half2,
        b_half1,
        b_half2,
    })
}

/// The α=50 supervised set built from both Half1s.
pub fn supervised_equal_mix(halves: &SslHalves, seed: u64) -> Result<MixedCorpus> {
    let total = 2 * halves.a_half1.len().min(halves.b_half1.len());
    make_mixture(&halves.a_half1, &halves.b_half1, MixtureSpec::new(50, total, seed)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoRecord {
    pub id: String,
    pub text: String,
    /// Human translation direction of the pair the text came from.
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonolingualSet {
    pub lang: LanguageCode,
    pub records: Vec<MonoRecord>,
}

impl MonolingualSet {
    pub fn id_text_pairs(&self) -> Vec<(String, String)> {
        self.records
            .iter()
            .map(|r| (r.id.clone(), r.text.clone()))
            .collect()
    }
}

pub fn extract_monolingual(half: &DirectedCorpus, lang: LanguageCode) -> Result<MonolingualSet> {
    if !half.lang_pair().contains(lang) {
        return Err(Error::InvalidArgument(format!(
            "language {lang} is not part of corpus {}",
            half.lang_pair()
        )));
    }
    let records = half
        .pairs
        .iter()
        .map(|p| MonoRecord {
            id: p.id.clone(),
            text: p.text(lang).expect("validated pair").to_string(),
            direction: p.direction,
        })
        .collect();
    Ok(MonolingualSet { lang, records })
}

/// Writes one text per line plus a sidecar of `id<TAB>origin<TAB>derived`.
pub fn write_monolingual(set: &MonolingualSet, text_path: &Path, ids_path: &Path) -> Result<()> {
    let open = |p: &Path| {
        File::create(p)
            .map(BufWriter::new)
            .map_err(|e| Error::io(p.display().to_string(), e))
    };
    let mut text = open(text_path)?;
    let mut ids = open(ids_path)?;
    let io = |e| Error::io("writing monolingual export", e);
    for r in &set.records {
        if r.text.contains(['\n', '\r']) {
            return Err(Error::InvalidPair {
                id: r.id.clone(),
                reason: "text contains a line break and cannot be exported line by line".into(),
            });
        }
        writeln!(text, "{}", r.text).map_err(io)?;
        writeln!(ids, "{}\t{}\t{}", r.id, r.direction.origin(), r.direction.derived()).map_err(io)?;
    }
    text.flush().map_err(io)?;
    ids.flush().map_err(io)
}

pub fn read_monolingual(lang: LanguageCode, text_path: &Path, ids_path: &Path) -> Result<MonolingualSet> {
    let lines = |p: &Path| -> Result<Vec<String>> {
        let f = File::open(p).map_err(|e| Error::io(p.display().to_string(), e))?;
        BufReader::new(f)
            .lines()
            .collect::<std::io::Result<Vec<_>>>()
            .map_err(|e| Error::io(p.display().to_string(), e))
    };
    let texts = lines(text_path)?;
    let ids = lines(ids_path)?;
    if texts.len() != ids.len() {
        return Err(Error::LengthMismatch {
            left: texts.len(),
            right: ids.len(),
        });
    }
    let name = ids_path.display().to_string();
    let records = ids
        .iter()
        .zip(texts)
        .enumerate()
        .map(|(i, (id_line, text))| {
            let cols: Vec<&str> = id_line.split('\t').collect();
            match cols.as_slice() {
                [id, o, d] => Ok(MonoRecord {
                    id: id.to_string(),
                    text,
                    direction: Direction::new(o.parse()?, d.parse()?)?,
                }),
                _ => Err(Error::parse(&name, i + 1, "expected id<TAB>origin<TAB>derived")),
            }
        })
        .collect::<Result<_>>()?;
    Ok(MonolingualSet { lang, records })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SslMethod {
    SelfTraining,
    BackTranslation,
}

impl SslMethod {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "st" | "self_training" | "self-training" => Ok(SslMethod::SelfTraining),
            "bt" | "back_translation" | "back-translation" => Ok(SslMethod::BackTranslation),
            _ => Err(Error::InvalidArgument(format!(
                "unknown method {s:?}; expected st or bt"
            ))),
        }
    }

    pub fn short(&self) -> &'static str {
        match self {
            SslMethod::SelfTraining => "ST",
            SslMethod::BackTranslation => "BT",
        }
    }
}

impl fmt::Display for SslMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// One human-written side and one machine-translated side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoPair {
    pub id: String,
    pub text: BTreeMap<LanguageCode, String>,
    pub human_side: LanguageCode,
    pub machine_side: LanguageCode,
    pub method: SslMethod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoCorpus {
    pub human_side: LanguageCode,
    pub machine_side: LanguageCode,
    pub method: SslMethod,
    pub pairs: Vec<PseudoPair>,
}

/// Pairs monolingual text with its external MT output. For self-training
/// the monolingual text is the task's source language (the task model
/// produced the translations); for back-translation it is the task's
/// target language (a reverse model produced them). Either way the
/// monolingual side is the human side.
pub fn build_pseudo_parallel(
    mono: &[(String, String)],
    mono_lang: LanguageCode,
    translations: &[(String, String)],
    target_lang: LanguageCode,
    method: SslMethod,
    task: Direction,
) -> Result<PseudoCorpus> {
    if Direction::new(mono_lang, target_lang)?.lang_pair() != task.lang_pair() {
        return Err(Error::InvalidArgument(format!(
            "languages {mono_lang}/{target_lang} do not match task {task}"
        )));
    }
    let expected_mono = match method {
        SslMethod::SelfTraining => task.origin(),
        SslMethod::BackTranslation => task.derived(),
    };
    if mono_lang != expected_mono {
        return Err(Error::InvalidArgument(format!(
            "{method} for task {task} needs monolingual {expected_mono} text, got {mono_lang}"
        )));
    }

    let mut by_id: HashMap<&str, &str> = HashMap::with_capacity(translations.len());
    let mut duplicates = Vec::new();
    for (id, text) in translations {
        if by_id.insert(id, text).is_some() {
            duplicates.push(id.clone());
        }
    }
    if !duplicates.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "duplicate translation ids: {}",
            duplicates.join(", ")
        )));
    }
    let mono_ids: HashSet<&str> = mono.iter().map(|(id, _)| id.as_str()).collect();
    let missing: Vec<&str> = mono
        .iter()
        .map(|(id, _)| id.as_str())
        .filter(|id| by_id.get(id).is_none_or(|t| t.trim().is_empty()))
        .collect();
    if !missing.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "missing translations for ids: {}",
            missing.join(", ")
        )));
    }
    let mut extra: Vec<&str> = by_id.keys().copied().filter(|id| !mono_ids.contains(id)).collect();
    if !extra.is_empty() {
        extra.sort_unstable();
        return Err(Error::InvalidArgument(format!(
            "translations for unknown ids: {}",
            extra.join(", ")
        )));
    }

    let pairs = mono
        .iter()
        .map(|(id, text)| {
            let mut t = BTreeMap::new();
            t.insert(mono_lang, text.clone());
            t.insert(target_lang, by_id[id.as_str()].to_string());
            PseudoPair {
                id: id.clone(),
                text: t,
                human_side: mono_lang,
                machine_side: target_lang,
                method,
            }
        })
        .collect();
    Ok(PseudoCorpus {
        human_side: mono_lang,
        machine_side: target_lang,
        method,
        pairs,
    })
}

#[derive(Serialize, Deserialize)]
struct PseudoHeader {
    format: String,
    human_side: LanguageCode,
    machine_side: LanguageCode,
    method: SslMethod,
}

#[derive(Serialize, Deserialize)]
struct PseudoRow {
    id: String,
    text: BTreeMap<LanguageCode, String>,
}

pub fn write_pseudo_to<W: Write>(corpus: &PseudoCorpus, mut out: W) -> Result<()> {
    let io = |e| Error::io("writing pseudo-parallel corpus", e);
    serde_json::to_writer(
        &mut out,
        &PseudoHeader {
            format: PSEUDO_FORMAT.into(),
            human_side: corpus.human_side,
            machine_side: corpus.machine_side,
            method: corpus.method,
        },
    )?;
    out.write_all(b"\n").map_err(io)?;
    for p in &corpus.pairs {
        serde_json::to_writer(
            &mut out,
            &PseudoRow {
                id: p.id.clone(),
                text: p.text.clone(),
            },
        )?;
        out.write_all(b"\n").map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn read_pseudo_from<R: BufRead>(input: R, name: &str) -> Result<PseudoCorpus> {
    let mut lines = input.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::parse(name, 1, "missing header"))?
        .map_err(|e| Error::io(name, e))?;
    let h: PseudoHeader = serde_json::from_str(&header_line)
        .map_err(|e| Error::parse(name, 1, format!("bad header: {e}")))?;
    if h.format != PSEUDO_FORMAT {
        return Err(Error::parse(name, 1, format!("unsupported format {:?}", h.format)));
    }
    let mut pairs = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: PseudoRow = serde_json::from_str(&line)
            .map_err(|e| Error::parse(name, i + 2, format!("malformed row: {e}")))?;
        if row.text.len() != 2 || !row.text.contains_key(&h.human_side) || !row.text.contains_key(&h.machine_side) {
            return Err(Error::parse(name, i + 2, format!("row {:?} has wrong languages", row.id)));
        }
        pairs.push(PseudoPair {
            id: row.id,
            text: row.text,
            human_side: h.human_side,
            machine_side: h.machine_side,
            method: h.method,
        });
    }
    Ok(PseudoCorpus {
        human_side: h.human_side,
        machine_side: h.machine_side,
        method: h.method,
        pairs,
    })
}

#[derive(Serialize, Deserialize)]
struct MixtureHeader {
    format: String,
    lang_pair: LangPair,
    aligned_direction: Direction,
    alpha: u8,
    total_size: usize,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
struct MixtureRow {
    id: String,
    direction: Direction,
    text: BTreeMap<LanguageCode, String>,
    #[serde(default)]
    meta: BTreeMap<String, String>,
}

pub fn write_mixture_to<W: Write>(mix: &MixedCorpus, mut out: W) -> Result<()> {
    let io = |e| Error::io("writing mixture", e);
    serde_json::to_writer(
        &mut out,
        &MixtureHeader {
            format: MIXTURE_FORMAT.into(),
            lang_pair: mix.lang_pair(),
            aligned_direction: mix.aligned_direction,
            alpha: mix.spec.alpha,
            total_size: mix.spec.total_size,
            seed: mix.spec.seed,
        },
    )?;
    out.write_all(b"\n").map_err(io)?;
    for p in &mix.pairs {
        serde_json::to_writer(
            &mut out,
            &MixtureRow {
                id: p.id.clone(),
                direction: p.direction,
                text: p.text.clone(),
                meta: p.meta.clone(),
            },
        )?;
        out.write_all(b"\n").map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn read_mixture_from<R: BufRead>(input: R, name: &str) -> Result<MixedCorpus> {
    let mut lines = input.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::parse(name, 1, "missing header"))?
        .map_err(|e| Error::io(name, e))?;
    let h: MixtureHeader = serde_json::from_str(&header_line)
        .map_err(|e| Error::parse(name, 1, format!("bad header: {e}")))?;
    if h.format != MIXTURE_FORMAT {
        return Err(Error::parse(name, 1, format!("unsupported format {:?}", h.format)));
    }
    let spec = MixtureSpec::new(h.alpha, h.total_size, h.seed)
        .map_err(|e| Error::parse(name, 1, e.to_string()))?;
    let mut pairs = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: MixtureRow = serde_json::from_str(&line)
            .map_err(|e| Error::parse(name, i + 2, format!("malformed row: {e}")))?;
        if row.direction.lang_pair() != h.lang_pair {
            return Err(Error::parse(name, i + 2, format!("pair {:?} outside {}", row.id, h.lang_pair)));
        }
        let pair = DirectedPair {
            id: row.id,
            text: row.text,
            direction: row.direction,
            meta: row.meta,
        };
        pair.validate().map_err(|e| Error::parse(name, i + 2, e.to_string()))?;
        pairs.push(pair);
    }
    Ok(MixedCorpus {
        aligned_direction: h.aligned_direction,
        spec,
        pairs,
    })
}

pub fn write_mixture(mix: &MixedCorpus, path: &Path) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_mixture_to(mix, BufWriter::new(f))
}

pub fn write_pseudo(corpus: &PseudoCorpus, path: &Path) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_pseudo_to(corpus, BufWriter::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Split;

    fn sized(n: usize, direction: &str) -> DirectedCorpus {
        let d = Direction::parse(direction).unwrap();
        let pairs = (0..n)
            .map(|i| {
                DirectedPair::new(format!("{}-{i}", d.stem()), d, format!("o{i}"), format!("d{i}"))
                    .unwrap()
            })
            .collect();
        DirectedCorpus::new(d, Split::Train, pairs).unwrap()
    }

    fn ids(c: &DirectedCorpus) -> HashSet<String> {
        c.pairs.iter().map(|p| p.id.clone()).collect()
    }

    #[test]
    fn rounding() {
        assert_eq!(aligned_count(0, 248_000), 0);
        assert_eq!(aligned_count(25, 248_000), 62_000);
        assert_eq!(aligned_count(50, 10), 5);
        assert_eq!(aligned_count(50, 3), 2);
        assert_eq!(aligned_count(25, 2), 1);
        assert_eq!(aligned_count(100, 7), 7);
        assert!(MixtureSpec::new(101, 10, 0).is_err());
    }

    #[test]
    fn mixture_counts() {
        let a = sized(20, "en-de");
        let b = sized(20, "de-en");
        let mix = make_mixture(&a, &b, MixtureSpec::new(50, 10, 1).unwrap()).unwrap();
        assert_eq!(mix.len(), 10);
        assert_eq!(mix.count_direction(a.direction), 5);
        assert_eq!(mix.count_direction(b.direction), 5);
        let zero = make_mixture(&a, &b, MixtureSpec::new(0, 20, 1).unwrap()).unwrap();
        assert_eq!(zero.count_direction(a.direction), 0);
        let uniq: HashSet<&str> = mix.pairs.iter().map(|p| p.id.as_str()).collect();
        assert_eq!(uniq.len(), 10);
    }

    #[test]
    fn mixture_is_deterministic_and_interleaved() {
        let a = sized(50, "en-de");
        let b = sized(50, "de-en");
        let spec = MixtureSpec::new(50, 40, 9).unwrap();
        let m1 = make_mixture(&a, &b, spec).unwrap();
        let m2 = make_mixture(&a, &b, spec).unwrap();
        assert_eq!(m1, m2);
        let first_half = m1.pairs[..20].iter().filter(|p| p.direction == a.direction).count();
        assert!(first_half > 0 && first_half < 20, "shuffled output");
    }

    #[test]
    fn mixture_insufficient_source() {
        let err = make_mixture(&sized(3, "en-de"), &sized(30, "de-en"), MixtureSpec::new(50, 10, 0).unwrap())
            .unwrap_err()
            .to_string();
        assert!(err.contains("needs 5"), "{err}");
    }

    #[test]
    fn halves_partition() {
        let a = sized(101, "en-de");
        let b = sized(100, "de-en");
        let h = halve_for_ssl(&a, &b, 3).unwrap();
        assert_eq!((h.a_half1.len(), h.a_half2.len()), (51, 50));
        assert_eq!((h.b_half1.len(), h.b_half2.len()), (50, 50));
        let (h1, h2) = (ids(&h.a_half1), ids(&h.a_half2));
        assert!(h1.is_disjoint(&h2));
        assert_eq!(&h1 | &h2, ids(&a));
    }

    #[test]
    fn supervised_mix_is_equal() {
        let h = halve_for_ssl(&sized(200, "en-de"), &sized(200, "de-en"), 4).unwrap();
        let sup = supervised_equal_mix(&h, 4).unwrap();
        assert_eq!(sup.len(), 200);
        assert_eq!(sup.count_direction(Direction::parse("en-de").unwrap()), 100);
    }

    #[test]
    fn monolingual_projection() {
        let c = sized(4, "de-en");
        let m = extract_monolingual(&c, LanguageCode::EN).unwrap();
        assert_eq!(m.records.len(), 4);
        assert_eq!(m.records[2].id, "de2en-2");
        assert_eq!(m.records[2].text, "d2");
        assert!(extract_monolingual(&c, LanguageCode::FR).is_err());
    }

    fn recs(items: &[(&str, &str)]) -> Vec<(String, String)> {
        items.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn self_training_pairs() {
        let mono = recs(&[("a", "Good morning."), ("b", "Thank you."), ("c", "I agree.")]);
        let mt = recs(&[("c", "Ich stimme zu."), ("a", "Guten Morgen."), ("b", "Danke.")]);
        let task = Direction::parse("en-de").unwrap();
        let p = build_pseudo_parallel(&mono, LanguageCode::EN, &mt, LanguageCode::DE, SslMethod::SelfTraining, task)
            .unwrap();
        assert_eq!(p.human_side, LanguageCode::EN);
        assert_eq!(p.machine_side, LanguageCode::DE);
        assert_eq!(p.pairs.len(), 3);
        for (pair, (id, text)) in p.pairs.iter().zip(&mono) {
            assert_eq!(&pair.id, id);
            assert_eq!(pair.text[&LanguageCode::EN], *text);
        }
        assert_eq!(p.pairs[0].text[&LanguageCode::DE], "Guten Morgen.");
    }

    #[test]
    fn back_translation_needs_target_side_mono() {
        let task = Direction::parse("en-de").unwrap();
        let mono = recs(&[("a", "Guten Morgen.")]);
        let mt = recs(&[("a", "Good morning.")]);
        assert!(build_pseudo_parallel(&mono, LanguageCode::DE, &mt, LanguageCode::EN, SslMethod::BackTranslation, task)
            .is_ok());
        let mono_en = recs(&[("a", "Good morning.")]);
        let mt_de = recs(&[("a", "Guten Morgen.")]);
        assert!(build_pseudo_parallel(&mono_en, LanguageCode::EN, &mt_de, LanguageCode::DE, SslMethod::BackTranslation, task)
            .is_err());
    }

    #[test]
    fn translation_id_errors() {
        let task = Direction::parse("en-de").unwrap();
        let mono = recs(&[("a", "x"), ("b", "y")]);
        let run = |mt: &[(String, String)]| {
            build_pseudo_parallel(&mono, LanguageCode::EN, mt, LanguageCode::DE, SslMethod::SelfTraining, task)
                .unwrap_err()
                .to_string()
        };
        assert!(run(&recs(&[("a", "x")])).contains("missing translations for ids: b"));
        assert!(run(&recs(&[("a", "x"), ("a", "z"), ("b", "y")])).contains("duplicate translation ids: a"));
        assert!(run(&recs(&[("a", "x"), ("b", "y"), ("q", "z")])).contains("unknown ids: q"));
    }

    #[test]
    fn pseudo_jsonl_roundtrip() {
        let task = Direction::parse("en-de").unwrap();
        let p = build_pseudo_parallel(
            &recs(&[("a", "Good morning.")]),
            LanguageCode::EN,
            &recs(&[("a", "Guten Morgen.")]),
            LanguageCode::DE,
            SslMethod::SelfTraining,
            task,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_pseudo_to(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(
            r#"{"format":"causalmt-pseudo/1","human_side":"en","machine_side":"de","method":"self_training"}"#
        ));
        assert_eq!(read_pseudo_from(buf.as_slice(), "buf").unwrap(), p);
    }

    #[test]
    fn mixture_jsonl_roundtrip() {
        let mix = make_mixture(&sized(6, "en-de"), &sized(6, "de-en"), MixtureSpec::new(50, 6, 2).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_mixture_to(&mix, &mut buf).unwrap();
        assert_eq!(read_mixture_from(buf.as_slice(), "buf").unwrap(), mix);
    }
}
