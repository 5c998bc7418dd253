//! Translationese statistics per corpus side: length and vocabulary
//! counts, the expansion factor between the two sides, an English passive
//! heuristic, and readability/diversity profiles.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{
    is_punct_token, split_sentences, token_slices, DirectedCorpus, Direction, LanguageCode,
};
use crate::error::{Error, Result};
use crate::lexicon;

pub const MATTR_WINDOW: usize = 500;
pub const SYLLABLE_LANGUAGES: [LanguageCode; 4] =
    [LanguageCode::EN, LanguageCode::DE, LanguageCode::FR, LanguageCode::ES];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideStats {
    pub lang: LanguageCode,
    pub n_samples: usize,
    pub words_per_sample: f64,
    pub sents_per_sample: f64,
    pub vocab_size: usize,
    pub punct_per_sample: f64,
    /// Only computed for English.
    pub passive_pct: Option<f64>,
    pub total_words: u64,
}

/// `numerator:denominator` ratio of mean words per sample. Both sides of a
/// corpus have the same sample count, so the ratio of word totals is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionFactor {
    pub numerator: LanguageCode,
    pub denominator: LanguageCode,
    pub numerator_words: u64,
    pub denominator_words: u64,
}

impl ExpansionFactor {
    pub fn value(&self) -> f64 {
        self.numerator_words as f64 / self.denominator_words as f64
    }

    pub fn inverse(&self) -> ExpansionFactor {
        ExpansionFactor {
            numerator: self.denominator,
            denominator: self.numerator,
            numerator_words: self.denominator_words,
            denominator_words: self.numerator_words,
        }
    }

    pub fn label(&self) -> String {
        format!("{}:{}={:.4}", self.numerator, self.denominator, self.value())
    }
}

/// Ratio of two per-sample word means.
pub fn expansion_ratio(numerator_mean: f64, denominator_mean: f64) -> Result<f64> {
    if !(numerator_mean.is_finite() && denominator_mean.is_finite())
        || numerator_mean <= 0.0
        || denominator_mean <= 0.0
    {
        return Err(Error::InvalidArgument(format!(
            "expansion factor needs positive finite means, got {numerator_mean} / {denominator_mean}"
        )));
    }
    Ok(numerator_mean / denominator_mean)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusStats {
    pub direction: Direction,
    pub sides: BTreeMap<LanguageCode, SideStats>,
    /// Reported with the alphabetically later language as numerator; use
    /// [`ExpansionFactor::inverse`] for the other orientation.
    pub expansion: ExpansionFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexityProfile {
    pub syllables_per_word: f64,
    pub flesch_reading_ease: f64,
    pub mattr: f64,
    pub lexical_density: f64,
}

#[derive(Default)]
struct Tally {
    samples: u64,
    words: u64,
    sents: u64,
    punct: u64,
    passive: u64,
    vocab: HashSet<String>,
}

impl Tally {
    fn merge(mut self, mut other: Tally) -> Tally {
        self.samples += other.samples;
        self.words += other.words;
        self.sents += other.sents;
        self.punct += other.punct;
        self.passive += other.passive;
        if self.vocab.len() < other.vocab.len() {
            std::mem::swap(&mut self.vocab, &mut other.vocab);
        }
        self.vocab.extend(other.vocab);
        self
    }
}

fn require_lang(corpus: &DirectedCorpus, lang: LanguageCode) -> Result<()> {
    if corpus.lang_pair().contains(lang) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "language {lang} is not part of corpus {}",
            corpus.lang_pair()
        )))
    }
}

fn require_nonempty(corpus: &DirectedCorpus) -> Result<()> {
    if corpus.is_empty() {
        Err(Error::InvalidCorpus("statistics need a non-empty corpus".into()))
    } else {
        Ok(())
    }
}

fn is_participle(word: &str) -> bool {
    if lexicon::IRREGULAR_PARTICIPLES.contains(&word) {
        return true;
    }
    word.chars().count() >= 4
        && (word.ends_with("ed") || word.ends_with("en"))
        && !lexicon::NOT_PARTICIPLES.contains(&word)
        && !lexicon::BE_FORMS.contains(&word)
}

fn sentence_is_passive(sentence: &str) -> bool {
    let words: Vec<String> = token_slices(sentence)
        .filter(|t| !is_punct_token(t))
        .map(str::to_lowercase)
        .collect();
    words.iter().enumerate().any(|(i, w)| {
        lexicon::BE_FORMS.contains(&w.as_str())
            && words[i + 1..].iter().take(2).any(|n| is_participle(n))
    })
}

/// Lexical passive check: a form of *be* followed within two word tokens by
/// a past participle, inside one sentence.
pub fn is_passive(text: &str) -> bool {
    split_sentences(text, LanguageCode::EN)
        .iter()
        .any(|s| sentence_is_passive(s))
}

fn tally_sample(text: &str, lang: LanguageCode) -> Tally {
    let mut t = Tally {
        samples: 1,
        ..Tally::default()
    };
    for tok in token_slices(text) {
        if is_punct_token(tok) {
            t.punct += 1;
        } else {
            t.words += 1;
            t.vocab.insert(tok.to_string());
        }
    }
    t.sents = split_sentences(text, lang).len() as u64;
    if lang == LanguageCode::EN && is_passive(text) {
        t.passive = 1;
    }
    t
}

pub fn side_stats(corpus: &DirectedCorpus, lang: LanguageCode) -> Result<SideStats> {
    require_lang(corpus, lang)?;
    require_nonempty(corpus)?;
    let tally = corpus
        .pairs
        .par_iter()
        .map(|p| tally_sample(p.text(lang).unwrap_or_default(), lang))
        .reduce(Tally::default, Tally::merge);
    let n = tally.samples as f64;
    Ok(SideStats {
        lang,
        n_samples: corpus.len(),
        words_per_sample: tally.words as f64 / n,
        sents_per_sample: tally.sents as f64 / n,
        vocab_size: tally.vocab.len(),
        punct_per_sample: tally.punct as f64 / n,
        passive_pct: (lang == LanguageCode::EN).then(|| tally.passive as f64 / n),
        total_words: tally.words,
    })
}

fn total_words(corpus: &DirectedCorpus, lang: LanguageCode) -> u64 {
    corpus
        .pairs
        .par_iter()
        .map(|p| {
            token_slices(p.text(lang).unwrap_or_default())
                .filter(|t| !is_punct_token(t))
                .count() as u64
        })
        .sum()
}

/// Mean words per sample in `x` over mean words per sample in `y`.
pub fn expansion_factor(
    corpus: &DirectedCorpus,
    x: LanguageCode,
    y: LanguageCode,
) -> Result<ExpansionFactor> {
    require_lang(corpus, x)?;
    require_lang(corpus, y)?;
    require_nonempty(corpus)?;
    let wx = total_words(corpus, x);
    let wy = if x == y { wx } else { total_words(corpus, y) };
    if wx == 0 || wy == 0 {
        return Err(Error::InvalidCorpus(
            "expansion factor undefined: a side has no word tokens".into(),
        ));
    }
    Ok(ExpansionFactor {
        numerator: x,
        denominator: y,
        numerator_words: wx,
        denominator_words: wy,
    })
}

/// Fraction of samples flagged by [`is_passive`] on the English side.
pub fn passive_pct(corpus: &DirectedCorpus) -> Result<f64> {
    if !corpus.lang_pair().contains(LanguageCode::EN) {
        return Err(Error::InvalidArgument(format!(
            "passive voice detection needs an English side; corpus is {}",
            corpus.lang_pair()
        )));
    }
    require_nonempty(corpus)?;
    let passive = corpus
        .pairs
        .par_iter()
        .filter(|p| is_passive(p.text(LanguageCode::EN).unwrap_or_default()))
        .count();
    Ok(passive as f64 / corpus.len() as f64)
}

pub fn corpus_stats(corpus: &DirectedCorpus) -> Result<CorpusStats> {
    let [a, b] = corpus.lang_pair().langs();
    let mut sides = BTreeMap::new();
    for lang in [a, b] {
        sides.insert(lang, side_stats(corpus, lang)?);
    }
    let expansion = ExpansionFactor {
        numerator: b,
        denominator: a,
        numerator_words: sides[&b].total_words,
        denominator_words: sides[&a].total_words,
    };
    if expansion.numerator_words == 0 || expansion.denominator_words == 0 {
        return Err(Error::InvalidCorpus(
            "expansion factor undefined: a side has no word tokens".into(),
        ));
    }
    Ok(CorpusStats {
        direction: corpus.direction,
        sides,
        expansion,
    })
}

fn vowels(lang: LanguageCode) -> Result<&'static str> {
    Ok(match lang.as_str() {
        "en" => "aeiouy",
        "de" => "aeiouyäöü",
        "fr" => "aeiouyàâæèéêëîïôœùûüÿ",
        "es" => "aeiouáéíóúü",
        _ => {
            return Err(Error::UnsupportedLanguage {
                lang: lang.to_string(),
                supported: "{en, de, fr, es}".into(),
            })
        }
    })
}

/// Vowel-group count, at least one per word. English drops a final silent
/// `e` (but not the syllabic `-le` of words like "table").
pub fn count_syllables(word: &str, lang: LanguageCode) -> Result<u32> {
    let vowels = vowels(lang)?;
    let lower: Vec<char> = word.to_lowercase().chars().collect();
    let mut groups = 0u32;
    let mut in_group = false;
    for &c in &lower {
        let v = vowels.contains(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    if lang == LanguageCode::EN && groups > 1 {
        if let [.., before, last] = lower.as_slice() {
            let syllabic_le = *before == 'l'
                && lower.len() >= 3
                && !vowels.contains(lower[lower.len() - 3]);
            if *last == 'e' && !vowels.contains(*before) && !syllabic_le {
                groups -= 1;
            }
        }
    }
    Ok(groups.max(1))
}

/// Moving-average type-token ratio over `tokens` with window `window`;
/// plain type-token ratio when there are fewer tokens than the window.
pub fn mattr(tokens: &[&str], window: usize) -> f64 {
    if tokens.is_empty() || window == 0 {
        return 0.0;
    }
    if tokens.len() < window {
        let types: HashSet<&str> = tokens.iter().copied().collect();
        return types.len() as f64 / tokens.len() as f64;
    }
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for t in &tokens[..window] {
        *counts.entry(t).or_default() += 1;
    }
    let mut type_sum = counts.len() as u64;
    for i in window..tokens.len() {
        let out = tokens[i - window];
        let c = counts.get_mut(out).expect("token in window");
        *c -= 1;
        if *c == 0 {
            counts.remove(out);
        }
        *counts.entry(tokens[i]).or_default() += 1;
        type_sum += counts.len() as u64;
    }
    let windows = (tokens.len() - window + 1) as f64;
    type_sum as f64 / windows / window as f64
}

pub fn flesch_reading_ease(words: u64, sentences: u64, syllables: u64) -> f64 {
    206.835 - 1.015 * (words as f64 / sentences as f64) - 84.6 * (syllables as f64 / words as f64)
}

pub fn complexity_profile(corpus: &DirectedCorpus, lang: LanguageCode) -> Result<ComplexityProfile> {
    require_lang(corpus, lang)?;
    require_nonempty(corpus)?;
    vowels(lang)?;
    let stop: HashSet<&str> = lexicon::stopwords(lang).iter().copied().collect();

    let per_sample: Vec<(u64, u64, u64, u64)> = corpus
        .pairs
        .par_iter()
        .map(|p| {
            let text = p.text(lang).unwrap_or_default();
            let mut words = 0u64;
            let mut syll = 0u64;
            let mut content = 0u64;
            for w in token_slices(text).filter(|t| !is_punct_token(t)) {
                words += 1;
                syll += u64::from(count_syllables(w, lang).expect("language checked"));
                if !stop.contains(w.to_lowercase().as_str()) {
                    content += 1;
                }
            }
            (words, split_sentences(text, lang).len() as u64, syll, content)
        })
        .collect();
    let (words, sents, syll, content) = per_sample.iter().fold((0, 0, 0, 0), |acc, s| {
        (acc.0 + s.0, acc.1 + s.1, acc.2 + s.2, acc.3 + s.3)
    });
    if words == 0 {
        return Err(Error::InvalidCorpus(format!("no {lang} word tokens")));
    }

    let stream: Vec<&str> = corpus
        .texts(lang)
        .flat_map(token_slices)
        .filter(|t| !is_punct_token(t))
        .collect();

    Ok(ComplexityProfile {
        syllables_per_word: syll as f64 / words as f64,
        flesch_reading_ease: flesch_reading_ease(words, sents, syll),
        mattr: mattr(&stream, MATTR_WINDOW),
        lexical_density: content as f64 / words as f64,
    })
}

/// TSV with one row per (corpus, language); floats to 4 decimals, `-` for
/// values that do not apply.
pub fn render_stats_tsv(rows: &[(String, CorpusStats, BTreeMap<LanguageCode, Option<ComplexityProfile>>)]) -> String {
    let mut out = String::from(
        "corpus\tdirection\tlang\tn_samples\twords_per_sample\tsents_per_sample\tvocab_size\t\
         punct_per_sample\tpassive_pct\texpansion_factor\tsyllables_per_word\tflesch\tmattr\t\
         lexical_density\n",
    );
    for (name, stats, profiles) in rows {
        for (lang, side) in &stats.sides {
            let ef = if *lang == stats.expansion.numerator {
                stats.expansion
            } else {
                stats.expansion.inverse()
            };
            let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
            let profile = profiles.get(lang).copied().flatten();
            let _ = writeln!(
                out,
                "{name}\t{}\t{lang}\t{}\t{:.4}\t{:.4}\t{}\t{:.4}\t{}\t{}:{}={:.4}\t{}\t{}\t{}\t{}",
                stats.direction,
                side.n_samples,
                side.words_per_sample,
                side.sents_per_sample,
                side.vocab_size,
                side.punct_per_sample,
                opt(side.passive_pct),
                ef.numerator,
                ef.denominator,
                ef.value(),
                opt(profile.map(|p| p.syllables_per_word)),
                opt(profile.map(|p| p.flesch_reading_ease)),
                opt(profile.map(|p| p.mattr)),
                opt(profile.map(|p| p.lexical_density)),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{DirectedPair, Split};

    fn de_en(texts: &[(&str, &str)]) -> DirectedCorpus {
        let d = Direction::parse("de-en").unwrap();
        let pairs = texts
            .iter()
            .enumerate()
            .map(|(i, (de, en))| DirectedPair::new(format!("p{i}"), d, *de, *en).unwrap())
            .collect();
        DirectedCorpus::new(d, Split::Train, pairs).unwrap()
    }

    #[test]
    fn hand_counted_side() {
        let c = de_en(&[("Ich kam. Ich sah.", "I came. I saw.")]);
        let s = side_stats(&c, LanguageCode::EN).unwrap();
        assert_eq!(s.words_per_sample, 4.0);
        assert_eq!(s.sents_per_sample, 2.0);
        assert_eq!(s.vocab_size, 3);
        assert_eq!(s.punct_per_sample, 2.0);
        assert_eq!(s.passive_pct, Some(0.0));
        assert_eq!(side_stats(&c, LanguageCode::DE).unwrap().passive_pct, None);
    }

    #[test]
    fn duplication_leaves_stats_unchanged() {
        let base = [("Das ist gut.", "This was done."), ("Nein!", "No, it is not.")];
        let once = de_en(&base);
        let many: Vec<(&str, &str)> = base.iter().cycle().take(20).copied().collect();
        let many = de_en(&many);
        for lang in [LanguageCode::DE, LanguageCode::EN] {
            let a = side_stats(&once, lang).unwrap();
            let b = side_stats(&many, lang).unwrap();
            assert_eq!(a.words_per_sample, b.words_per_sample);
            assert_eq!(a.sents_per_sample, b.sents_per_sample);
            assert_eq!(a.vocab_size, b.vocab_size);
            assert_eq!(a.punct_per_sample, b.punct_per_sample);
            assert_eq!(a.passive_pct, b.passive_pct);
        }
    }

    #[test]
    fn expansion_examples() {
        assert!((expansion_ratio(25.5, 22.4).unwrap() - 1.138_392_857).abs() < 1e-9);
        let c = de_en(&[("a b c", "w x y z"), ("a b c d e", "w x y z")]);
        let same = expansion_factor(&c, LanguageCode::DE, LanguageCode::DE).unwrap();
        assert_eq!(same.value(), 1.0);
        let ef = expansion_factor(&c, LanguageCode::DE, LanguageCode::EN).unwrap();
        assert_eq!(ef.value(), 1.0);
        assert!(expansion_ratio(1.0, 0.0).is_err());
    }

    #[test]
    fn passive_examples() {
        assert!(is_passive("The ball was thrown by John."));
        assert!(!is_passive("John threw the ball."));
        assert!(is_passive("The report is now being debated."));
        assert!(is_passive("It has been decided."));
        assert!(!is_passive("There are seven members."));
    }

    #[test]
    fn passive_fixture_matches_gold() {
        // (sentence, hand label)
        let gold = [
            ("The motion was adopted unanimously.", true),
            ("We adopted the motion.", false),
            ("The Council is expected to reply.", true),
            ("These issues were not addressed.", true),
            ("I am grateful to the rapporteur.", false),
            ("The sitting was closed at noon.", true),
            ("Members are here today.", false),
            ("The proposal has been rejected.", true),
            ("We must act now.", false),
            ("Several amendments were tabled by the group.", true),
        ];
        let texts: Vec<(&str, &str)> = gold.iter().map(|(s, _)| ("x", *s)).collect();
        let c = de_en(&texts);
        let expected = gold.iter().filter(|(_, p)| *p).count() as f64 / gold.len() as f64;
        assert_eq!(passive_pct(&c).unwrap(), expected);
        for (s, label) in gold {
            assert_eq!(is_passive(s), label, "{s}");
        }
    }

    #[test]
    fn passive_needs_english() {
        let d = Direction::parse("de-fr").unwrap();
        let c = DirectedCorpus::new(d, Split::Train, vec![DirectedPair::new("a", d, "x", "y").unwrap()])
            .unwrap();
        assert!(passive_pct(&c).is_err());
    }

    #[test]
    fn flesch_hand_evaluation() {
        let c = de_en(&[("Die Katze sass auf der Matte.", "The cat sat on the mat.")]);
        let p = complexity_profile(&c, LanguageCode::EN).unwrap();
        assert_eq!(p.syllables_per_word, 1.0);
        assert!((p.flesch_reading_ease - 116.145).abs() < 1e-9);
        // All words distinct except "the"/"The" differ by case -> 6 types.
        assert_eq!(p.mattr, 1.0);
    }

    #[test]
    fn mattr_constant_text() {
        let tokens = vec!["la"; 1000];
        assert!((mattr(&tokens, 500) - 0.002).abs() < 1e-15);
    }

    #[test]
    fn mattr_distinct_short_text() {
        let words: Vec<String> = (0..100).map(|i| format!("w{i}")).collect();
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        assert_eq!(mattr(&refs, 500), 1.0);
    }

    #[test]
    fn mattr_matches_naive_windows() {
        let words: Vec<String> = (0..1200).map(|i| format!("w{}", (i * 7919) % 613)).collect();
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let w = 500;
        let naive: f64 = (0..=refs.len() - w)
            .map(|s| refs[s..s + w].iter().collect::<HashSet<_>>().len() as f64 / w as f64)
            .sum::<f64>()
            / (refs.len() - w + 1) as f64;
        assert!((mattr(&refs, w) - naive).abs() < 1e-12);
    }

    #[test]
    fn syllables() {
        let en = LanguageCode::EN;
        assert_eq!(count_syllables("the", en).unwrap(), 1);
        assert_eq!(count_syllables("make", en).unwrap(), 1);
        assert_eq!(count_syllables("table", en).unwrap(), 2);
        assert_eq!(count_syllables("Parliament", en).unwrap(), 3);
        assert_eq!(count_syllables("2020", en).unwrap(), 1);
        assert_eq!(count_syllables("Männer", LanguageCode::DE).unwrap(), 2);
        assert_eq!(count_syllables("élection", LanguageCode::FR).unwrap(), 3);
        let err = count_syllables("ciao", LanguageCode::new("it").unwrap()).unwrap_err();
        assert!(err.to_string().contains("{en, de, fr, es}"));
    }

    #[test]
    fn lexical_density_counts_content_words() {
        let c = de_en(&[("x", "The cat sat on the mat.")]);
        let p = complexity_profile(&c, LanguageCode::EN).unwrap();
        // the, on, the are stopwords.
        assert!((p.lexical_density - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let c = DirectedCorpus::empty(Direction::parse("de-en").unwrap(), Split::Train);
        assert!(side_stats(&c, LanguageCode::EN).is_err());
    }

    #[test]
    fn tsv_layout() {
        let c = de_en(&[("Ich kam.", "I came.")]);
        let stats = corpus_stats(&c).unwrap();
        let mut profiles = BTreeMap::new();
        for lang in [LanguageCode::DE, LanguageCode::EN] {
            profiles.insert(lang, complexity_profile(&c, lang).ok());
        }
        let tsv = render_stats_tsv(&[("de2en".into(), stats, profiles)]);
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("de2en\tde-en\tde\t1\t2.0000\t1.0000\t2\t1.0000\t-\tde:en=1.0000\t"));
        assert!(lines[2].contains("\ten\t1\t2.0000\t1.0000\t2\t1.0000\t0.0000\ten:de=1.0000\t"));
    }
}
