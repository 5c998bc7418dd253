//! Score contrasts between causal and anticausal training: the naive
//! difference over unmatched mixtures, the matched-corpus average causal
//! effect, semi-supervised gain tables and per-sample feature export.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Direction, LanguageCode};
use crate::error::{Error, Result};
use crate::mixture::SslMethod;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrainSpec {
    Mixture(u8),
    MatchedCausal,
    MatchedAnticausal,
    SupEqualMix,
    Ssl(SslMethod),
}

impl TrainSpec {
    pub const ST: TrainSpec = TrainSpec::Ssl(SslMethod::SelfTraining);
    pub const BT: TrainSpec = TrainSpec::Ssl(SslMethod::BackTranslation);
}

impl fmt::Display for TrainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrainSpec::Mixture(a) => write!(f, "mix:{a}"),
            TrainSpec::MatchedCausal => f.write_str("matched_causal"),
            TrainSpec::MatchedAnticausal => f.write_str("matched_anticausal"),
            TrainSpec::SupEqualMix => f.write_str("sup_equal_mix"),
            TrainSpec::Ssl(m) => write!(f, "+{}", m.short()),
        }
    }
}

impl FromStr for TrainSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(a) = s.strip_prefix("mix:") {
            let alpha: u8 = a
                .parse()
                .ok()
                .filter(|&a| a <= 100)
                .ok_or_else(|| Error::InvalidArgument(format!("bad mixture rate in {s:?}")))?;
            return Ok(TrainSpec::Mixture(alpha));
        }
        match s {
            "matched_causal" => Ok(TrainSpec::MatchedCausal),
            "matched_anticausal" => Ok(TrainSpec::MatchedAnticausal),
            "sup_equal_mix" => Ok(TrainSpec::SupEqualMix),
            "+ST" | "+st" => Ok(TrainSpec::ST),
            "+BT" | "+bt" => Ok(TrainSpec::BT),
            _ => Err(Error::InvalidArgument(format!("unknown train spec {s:?}"))),
        }
    }
}

impl Serialize for TrainSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TrainSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// T1 is the test half whose human translation direction equals the model
/// direction, T2 the reverse one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TestHalf {
    T1,
    T2,
}

impl TestHalf {
    pub const BOTH: [TestHalf; 2] = [TestHalf::T1, TestHalf::T2];

    pub fn direction(self, task: Direction) -> Direction {
        match self {
            TestHalf::T1 => task,
            TestHalf::T2 => task.reversed(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TestHalf::T1 => "T1",
            TestHalf::T2 => "T2",
        }
    }
}

impl fmt::Display for TestHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TestHalf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T1" | "t1" => Ok(TestHalf::T1),
            "T2" | "t2" => Ok(TestHalf::T2),
            _ => Err(Error::InvalidArgument(format!("test half must be T1 or T2, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub experiment_id: String,
    pub task: Direction,
    pub train_spec: TrainSpec,
    pub test_half: TestHalf,
    pub metric_name: String,
    pub value: f64,
}

impl ScoreRecord {
    pub fn validate(&self) -> Result<()> {
        if !self.value.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "non-finite score {} for {}",
                self.value, self.experiment_id
            )));
        }
        Ok(())
    }
}

/// Name of a cell, as used in error messages and gap markers.
pub fn cell_name(task: Direction, spec: TrainSpec, half: TestHalf) -> String {
    format!("{task} {spec} {half}")
}

pub fn find_cell<'a>(
    records: &'a [ScoreRecord],
    task: Direction,
    spec: TrainSpec,
    half: TestHalf,
    metric: &str,
) -> Result<&'a ScoreRecord> {
    let mut hits = records
        .iter()
        .filter(|r| r.task == task && r.train_spec == spec && r.test_half == half && r.metric_name == metric);
    let first = hits
        .next()
        .ok_or_else(|| Error::MissingCell(cell_name(task, spec, half)))?;
    if hits.next().is_some() {
        return Err(Error::InvalidArgument(format!(
            "more than one {metric} score for {}",
            cell_name(task, spec, half)
        )));
    }
    Ok(first)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Sum of the per-half contrasts.
    #[default]
    Sum,
    /// Sum divided by two.
    Mean,
}

impl Convention {
    fn apply(self, sum: f64) -> f64 {
        match self {
            Convention::Sum => sum,
            Convention::Mean => sum / 2.0,
        }
    }

    fn formula(self) -> &'static str {
        match self {
            Convention::Sum => "(causal_T1 + causal_T2) - (anti_T1 + anti_T2)",
            Convention::Mean => "((causal_T1 + causal_T2) - (anti_T1 + anti_T2)) / 2",
        }
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Convention::Sum),
            "mean" => Ok(Convention::Mean),
            _ => Err(Error::InvalidArgument(format!("convention must be sum or mean, got {s:?}"))),
        }
    }
}

/// Causal and anticausal score for each test half.
pub type PerHalf = BTreeMap<TestHalf, (f64, f64)>;

pub fn contrast(per_half: &PerHalf, convention: Convention) -> f64 {
    let (c, a) = per_half
        .values()
        .fold((0.0, 0.0), |(c, a), &(x, y)| (c + x, a + y));
    convention.apply(c - a)
}

fn collect_per_half(
    records: &[ScoreRecord],
    task: Direction,
    causal: TrainSpec,
    anticausal: TrainSpec,
    metric: &str,
) -> Result<(PerHalf, Vec<String>)> {
    let mut per_half = PerHalf::new();
    let mut ids = Vec::new();
    for half in TestHalf::BOTH {
        let c = find_cell(records, task, causal, half, metric)?;
        let a = find_cell(records, task, anticausal, half, metric)?;
        per_half.insert(half, (c.value, a.value));
        ids.extend([c.experiment_id.clone(), a.experiment_id.clone()]);
    }
    ids.sort();
    ids.dedup();
    Ok((per_half, ids))
}

/// Difference between training on the fully aligned mixture (α = 100,
/// causal) and the fully reversed one (α = 0, anticausal), without any
/// covariate control.
pub fn naive_diff(records: &[ScoreRecord], task: Direction, metric: &str, convention: Convention) -> Result<f64> {
    let (per_half, _) = collect_per_half(records, task, TrainSpec::Mixture(100), TrainSpec::Mixture(0), metric)?;
    Ok(contrast(&per_half, convention))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AceReport {
    pub task: Direction,
    pub metric_name: String,
    pub convention: Convention,
    pub ace: f64,
    pub naive_diff: Option<f64>,
    pub per_half: PerHalf,
    pub formula_note: String,
    pub experiment_ids: Vec<String>,
}

/// Contrast of models trained on the matched causal and anticausal corpora.
/// Matching balances the covariates (length, content), so the contrast
/// stands in for the effect under intervention on the direction match.
pub fn ace_from_scores(
    records: &[ScoreRecord],
    task: Direction,
    metric: &str,
    convention: Convention,
) -> Result<AceReport> {
    let (per_half, mut ids) =
        collect_per_half(records, task, TrainSpec::MatchedCausal, TrainSpec::MatchedAnticausal, metric)?;
    let naive = collect_per_half(records, task, TrainSpec::Mixture(100), TrainSpec::Mixture(0), metric).ok();
    if let Some((_, more)) = &naive {
        ids.extend(more.iter().cloned());
        ids.sort();
        ids.dedup();
    }
    Ok(AceReport {
        task,
        metric_name: metric.to_string(),
        convention,
        ace: contrast(&per_half, convention),
        naive_diff: naive.map(|(p, _)| contrast(&p, convention)),
        per_half,
        formula_note: format!(
            "ACE = {} over models trained on matched corpora; matching conditions on sentence length and content",
            convention.formula()
        ),
        experiment_ids: ids,
    })
}

/// Two decimals with an explicit sign; never prints "-0.00".
pub fn fmt_signed(x: f64) -> String {
    let s = format!("{x:+.2}");
    if s == "-0.00" {
        "+0.00".into()
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SslDelta {
    pub half: TestHalf,
    pub delta: f64,
    pub aligned: bool,
    pub larger_gain: bool,
}

impl SslDelta {
    pub fn render(&self) -> String {
        if self.aligned {
            format!("{} (Aligned)", fmt_signed(self.delta))
        } else {
            fmt_signed(self.delta)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SslRow {
    pub method: SslMethod,
    pub human_side: LanguageCode,
    pub deltas: [SslDelta; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SslTable {
    pub task: Direction,
    pub metric_name: String,
    pub baseline: [f64; 2],
    pub rows: Vec<SslRow>,
}

/// The monolingual (human) side of the pseudo-parallel data: the task's
/// source for self-training, its target for back-translation.
pub fn pseudo_human_side(task: Direction, method: SslMethod) -> LanguageCode {
    match method {
        SslMethod::SelfTraining => task.origin(),
        SslMethod::BackTranslation => task.derived(),
    }
}

/// Gains of each semi-supervised variant over the equal-mix baseline. A gain
/// is marked aligned when the pseudo data's human side is the original
/// language of that test half.
pub fn ssl_delta_table(records: &[ScoreRecord], task: Direction, metric: &str) -> Result<SslTable> {
    let mut baseline = [0.0; 2];
    for (slot, half) in baseline.iter_mut().zip(TestHalf::BOTH) {
        *slot = find_cell(records, task, TrainSpec::SupEqualMix, half, metric)
            .map_err(|e| match e {
                Error::MissingCell(c) => Error::MissingCell(format!("baseline {c}")),
                e => e,
            })?
            .value;
    }
    let mut rows = Vec::new();
    for method in [SslMethod::SelfTraining, SslMethod::BackTranslation] {
        let spec = TrainSpec::Ssl(method);
        if !records.iter().any(|r| r.task == task && r.train_spec == spec && r.metric_name == metric) {
            continue;
        }
        let human_side = pseudo_human_side(task, method);
        let mut deltas = Vec::with_capacity(2);
        for (i, half) in TestHalf::BOTH.into_iter().enumerate() {
            let v = find_cell(records, task, spec, half, metric)?.value;
            deltas.push(SslDelta {
                half,
                delta: v - baseline[i],
                aligned: half.direction(task).origin() == human_side,
                larger_gain: false,
            });
        }
        let winner = if deltas[0].delta >= deltas[1].delta { 0 } else { 1 };
        deltas[winner].larger_gain = true;
        let [d1, d2]: [SslDelta; 2] = deltas.try_into().expect("two halves");
        rows.push(SslRow {
            method,
            human_side,
            deltas: [d1, d2],
        });
    }
    Ok(SslTable {
        task,
        metric_name: metric.to_string(),
        baseline,
        rows,
    })
}

/// One test sample with the three direction-match indicators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleFeatures {
    pub experiment_id: String,
    pub sample_index: usize,
    pub data_model_match: bool,
    pub test_model_match: bool,
    pub train_test_match: bool,
    pub source_len: usize,
    pub topics: Option<Vec<f64>>,
    pub metric: f64,
}

pub const FEATURE_COLUMNS: [&str; 6] = [
    "experiment_id",
    "sample",
    "data_model_match",
    "test_model_match",
    "train_test_match",
    "source_len",
];

/// Columns: the fixed leading set, then `topic_0..topic_{k-1}` when topic
/// vectors are supplied, then `metric`.
pub fn export_feature_table(samples: &[SampleFeatures]) -> Result<String> {
    let k = samples.first().and_then(|s| s.topics.as_ref()).map(Vec::len);
    for (index, s) in samples.iter().enumerate() {
        let found = s.topics.as_ref().map(Vec::len);
        if found != k {
            return Err(Error::RaggedTopics {
                index,
                found: found.unwrap_or(0),
                expected: k.unwrap_or(0),
            });
        }
        if !s.metric.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite metric for sample {index}")));
        }
    }
    let mut out = FEATURE_COLUMNS.join("\t");
    for t in 0..k.unwrap_or(0) {
        let _ = write!(out, "\ttopic_{t}");
    }
    out.push_str("\tmetric\n");
    let flag = |b: bool| if b { 1 } else { 0 };
    for s in samples {
        let _ = write!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            s.experiment_id,
            s.sample_index,
            flag(s.data_model_match),
            flag(s.test_model_match),
            flag(s.train_test_match),
            s.source_len
        );
        for t in s.topics.iter().flatten() {
            let _ = write!(out, "\t{t:.6}");
        }
        let _ = writeln!(out, "\t{:.4}", s.metric);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Direction {
        Direction::parse(s).unwrap()
    }

    fn rec(task: &str, spec: TrainSpec, half: TestHalf, value: f64) -> ScoreRecord {
        ScoreRecord {
            experiment_id: format!("{task}.{spec}"),
            task: d(task),
            train_spec: spec,
            test_half: half,
            metric_name: "BLEU".into(),
            value,
        }
    }

    fn four(task: &str, c: TrainSpec, a: TrainSpec, v: [f64; 4]) -> Vec<ScoreRecord> {
        vec![
            rec(task, c, TestHalf::T1, v[0]),
            rec(task, c, TestHalf::T2, v[1]),
            rec(task, a, TestHalf::T1, v[2]),
            rec(task, a, TestHalf::T2, v[3]),
        ]
    }

    #[test]
    fn train_spec_text() {
        for s in ["mix:0", "mix:25", "mix:100", "matched_causal", "matched_anticausal", "sup_equal_mix", "+ST", "+BT"] {
            assert_eq!(s.parse::<TrainSpec>().unwrap().to_string(), s);
        }
        assert!("mix:101".parse::<TrainSpec>().is_err());
        assert!("mixture".parse::<TrainSpec>().is_err());
    }

    #[test]
    fn diff_examples() {
        let r = four("en-de", TrainSpec::Mixture(100), TrainSpec::Mixture(0), [28.94, 20.32, 21.24, 26.27]);
        assert!((naive_diff(&r, d("en-de"), "BLEU", Convention::Sum).unwrap() - 1.75).abs() < 1e-9);
        let r = four("de-en", TrainSpec::Mixture(100), TrainSpec::Mixture(0), [31.33, 27.07, 24.68, 35.86]);
        assert!((naive_diff(&r, d("de-en"), "BLEU", Convention::Sum).unwrap() + 2.14).abs() < 1e-9);
        let r = four("de-en", TrainSpec::Mixture(100), TrainSpec::Mixture(0), [30.0; 4]);
        assert_eq!(naive_diff(&r, d("de-en"), "BLEU", Convention::Sum).unwrap(), 0.0);
    }

    #[test]
    fn ace_examples() {
        let cases = [
            ("en-de", [21.88, 28.77, 25.33, 22.19], 3.13),
            ("de-en", [31.70, 28.68, 26.35, 35.92], -1.89),
            ("es-en", [37.79, 33.64, 21.69, 25.24], 24.50),
        ];
        for (task, v, want) in cases {
            let r = four(task, TrainSpec::MatchedCausal, TrainSpec::MatchedAnticausal, v);
            let rep = ace_from_scores(&r, d(task), "BLEU", Convention::Sum).unwrap();
            assert!((rep.ace - want).abs() < 1e-9, "{task}: {}", rep.ace);
            let (c, a): (f64, f64) = rep.per_half.values().fold((0.0, 0.0), |(c, a), x| (c + x.0, a + x.1));
            assert_eq!(rep.ace, c - a);
            assert_eq!(rep.naive_diff, None);
        }
        let r = four("es-en", TrainSpec::MatchedCausal, TrainSpec::MatchedAnticausal, [37.79, 33.64, 21.69, 25.24]);
        let mean = ace_from_scores(&r, d("es-en"), "BLEU", Convention::Mean).unwrap();
        assert!((mean.ace - 12.25).abs() < 1e-9);
        assert!(mean.formula_note.contains("/ 2"));
    }

    #[test]
    fn missing_cell_is_named() {
        let mut r = four("en-de", TrainSpec::MatchedCausal, TrainSpec::MatchedAnticausal, [1.0; 4]);
        r.remove(3);
        let err = ace_from_scores(&r, d("en-de"), "BLEU", Convention::Sum).unwrap_err().to_string();
        assert!(err.contains("en-de matched_anticausal T2"), "{err}");
        let err = naive_diff(&r, d("en-de"), "BLEU", Convention::Sum).unwrap_err().to_string();
        assert!(err.contains("en-de mix:100 T1"), "{err}");
    }

    #[test]
    fn duplicate_cell_rejected() {
        let mut r = four("en-de", TrainSpec::MatchedCausal, TrainSpec::MatchedAnticausal, [1.0; 4]);
        r.push(r[0].clone());
        assert!(ace_from_scores(&r, d("en-de"), "BLEU", Convention::Sum).is_err());
    }

    #[test]
    fn ssl_en_fr() {
        let t = d("en-fr");
        let mut r = vec![rec("en-fr", TrainSpec::SupEqualMix, TestHalf::T1, 16.16), rec("en-fr", TrainSpec::SupEqualMix, TestHalf::T2, 16.65)];
        r.push(rec("en-fr", TrainSpec::ST, TestHalf::T1, 18.20));
        r.push(rec("en-fr", TrainSpec::ST, TestHalf::T2, 18.39));
        r.push(rec("en-fr", TrainSpec::BT, TestHalf::T1, 18.07));
        r.push(rec("en-fr", TrainSpec::BT, TestHalf::T2, 19.10));
        let table = ssl_delta_table(&r, t, "BLEU").unwrap();
        let cells: Vec<Vec<String>> = table.rows.iter().map(|row| row.deltas.iter().map(SslDelta::render).collect()).collect();
        assert_eq!(cells, vec![vec!["+2.04 (Aligned)", "+1.74"], vec!["+1.91", "+2.45 (Aligned)"]]);
        assert!(table.rows[0].deltas[0].larger_gain && table.rows[1].deltas[1].larger_gain);
        assert_eq!(table.rows[1].human_side, LanguageCode::FR);
    }

    #[test]
    fn ssl_zero_and_missing_baseline() {
        let mut r = vec![rec("en-de", TrainSpec::SupEqualMix, TestHalf::T1, 10.0), rec("en-de", TrainSpec::SupEqualMix, TestHalf::T2, 9.0)];
        r.push(rec("en-de", TrainSpec::ST, TestHalf::T1, 10.0));
        r.push(rec("en-de", TrainSpec::ST, TestHalf::T2, 9.0));
        let table = ssl_delta_table(&r, d("en-de"), "BLEU").unwrap();
        assert_eq!(table.rows[0].deltas[1].render(), "+0.00");
        assert_eq!(table.rows[0].deltas[0].render(), "+0.00 (Aligned)");
        let err = ssl_delta_table(&r[2..], d("en-de"), "BLEU").unwrap_err().to_string();
        assert!(err.contains("baseline en-de sup_equal_mix T1"), "{err}");
    }

    #[test]
    fn signed_format() {
        assert_eq!(fmt_signed(-0.001), "+0.00");
        assert_eq!(fmt_signed(2.0399999999), "+2.04");
        assert_eq!(fmt_signed(-1.886), "-1.89");
        assert_eq!(fmt_signed(5.0), "+5.00");
    }

    fn sample(i: usize, topics: Option<Vec<f64>>) -> SampleFeatures {
        SampleFeatures {
            experiment_id: "matched.en-de.causal".into(),
            sample_index: i,
            data_model_match: true,
            test_model_match: i.is_multiple_of(2),
            train_test_match: i.is_multiple_of(2),
            source_len: 10 + i,
            topics,
            metric: 20.0 + i as f64 / 4.0,
        }
    }

    #[test]
    fn feature_table_fixture() {
        let rows: Vec<SampleFeatures> = (0..3).map(|i| sample(i, Some(vec![0.5, 0.25 * i as f64]))).collect();
        let want = "experiment_id\tsample\tdata_model_match\ttest_model_match\ttrain_test_match\tsource_len\ttopic_0\ttopic_1\tmetric\n\
matched.en-de.causal\t0\t1\t1\t1\t10\t0.500000\t0.000000\t20.0000\n\
matched.en-de.causal\t1\t1\t0\t0\t11\t0.500000\t0.250000\t20.2500\n\
matched.en-de.causal\t2\t1\t1\t1\t12\t0.500000\t0.500000\t20.5000\n";
        assert_eq!(export_feature_table(&rows).unwrap(), want);
        let plain: Vec<SampleFeatures> = (0..3).map(|i| sample(i, None)).collect();
        let out = export_feature_table(&plain).unwrap();
        assert!(out.starts_with("experiment_id\tsample\tdata_model_match\ttest_model_match\ttrain_test_match\tsource_len\tmetric\n"));
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn feature_table_ragged() {
        let rows = vec![sample(0, Some(vec![0.1, 0.2])), sample(1, Some(vec![0.1]))];
        assert!(matches!(
            export_feature_table(&rows),
            Err(Error::RaggedTopics { index: 1, found: 1, expected: 2 })
        ));
        let rows = vec![sample(0, None), sample(1, Some(vec![0.1]))];
        assert!(export_feature_table(&rows).is_err());
    }

    #[test]
    fn sixteen_thousand_rows() {
        let rows: Vec<SampleFeatures> = (0..8)
            .flat_map(|e| (0..2000).map(move |i| SampleFeatures { experiment_id: format!("e{e}"), ..sample(i, None) }))
            .collect();
        assert_eq!(export_feature_table(&rows).unwrap().lines().count(), 16_001);
    }
}
