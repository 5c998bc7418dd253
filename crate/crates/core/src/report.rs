//! Trainer manifests, score-file ingestion and report tables.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::causal::{
    ace_from_scores, cell_name, find_cell, fmt_signed, naive_diff, ssl_delta_table, AceReport, Convention, ScoreRecord,
    SslTable, TestHalf, TrainSpec,
};
use crate::corpus::{Direction, LangPair, Split};
use crate::error::{Error, Result};
use crate::mixture::SslMethod;

pub const MANIFEST_FORMAT: &str = "causalmt-manifest/1";
pub const SCORE_COLUMNS: [&str; 6] = ["experiment_id", "task", "train_spec", "test_half", "metric_name", "value"];
pub const DEFAULT_ALPHAS: [u8; 5] = [0, 25, 50, 75, 100];

pub fn corpus_file(direction: Direction, split: Split) -> String {
    format!("{}.{}.jsonl", direction.stem(), split.as_str())
}

pub fn mixture_file(task: Direction, alpha: u8) -> String {
    format!("mix.{}.a{alpha}.jsonl", task.stem())
}

pub fn matched_file(direction: Direction, split: Split) -> String {
    format!("matched.{}.{}.jsonl", direction.stem(), split.as_str())
}

pub fn supmix_file(pair: LangPair) -> String {
    format!("supmix.{}-{}.jsonl", pair.first(), pair.second())
}

pub fn pseudo_file(task: Direction, method: SslMethod) -> String {
    format!("pseudo.{}.{}.jsonl", task.stem(), method.short().to_lowercase())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainManifest {
    pub format: String,
    pub experiment_id: String,
    pub task: Direction,
    pub train_spec: TrainSpec,
    pub train_files: Vec<PathBuf>,
    pub dev_files: Vec<PathBuf>,
    pub test_files: BTreeMap<TestHalf, PathBuf>,
    pub notes: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sweep {
    Mixture(Vec<u8>),
    Matched,
    Ssl,
}

pub fn experiment_id(task: Direction, spec: TrainSpec) -> String {
    match spec {
        TrainSpec::Mixture(a) => format!("mix.{task}.a{a}"),
        TrainSpec::MatchedCausal => format!("matched.{task}.causal"),
        TrainSpec::MatchedAnticausal => format!("matched.{task}.anticausal"),
        TrainSpec::SupEqualMix => format!("ssl.{task}.sup"),
        TrainSpec::Ssl(m) => format!("ssl.{task}.{}", m.short().to_lowercase()),
    }
}

/// One manifest per (task, training spec) cell for both tasks of the pair.
/// Every referenced file must already exist under `root`.
pub fn emit_manifests(root: &Path, pair: LangPair, sweep: &Sweep) -> Result<Vec<TrainManifest>> {
    let [a, b] = pair.langs();
    let tasks = [Direction::new(a, b)?, Direction::new(b, a)?];
    let mut out = Vec::new();
    for task in tasks {
        let rev = task.reversed();
        let plain_eval = |split| [task, rev].map(|d| corpus_file(d, split));
        let matched_eval = |split| [task, rev].map(|d| matched_file(d, split));
        let mut cells: Vec<(TrainSpec, Vec<String>, [String; 2], [String; 2], BTreeMap<String, String>)> = Vec::new();
        match sweep {
            Sweep::Mixture(alphas) => {
                for &alpha in alphas {
                    let notes = BTreeMap::from([
                        ("alpha".to_string(), alpha.to_string()),
                        ("matching".to_string(), "unmatched".to_string()),
                    ]);
                    cells.push((
                        TrainSpec::Mixture(alpha),
                        vec![mixture_file(task, alpha)],
                        plain_eval(Split::Dev),
                        plain_eval(Split::Test),
                        notes,
                    ));
                }
            }
            Sweep::Matched => {
                for (spec, data_dir, kind) in [
                    (TrainSpec::MatchedCausal, task, "causal"),
                    (TrainSpec::MatchedAnticausal, rev, "anticausal"),
                ] {
                    let notes = BTreeMap::from([
                        ("matching".to_string(), "matched".to_string()),
                        ("learning".to_string(), kind.to_string()),
                        ("train_direction".to_string(), data_dir.to_string()),
                    ]);
                    cells.push((
                        spec,
                        vec![matched_file(data_dir, Split::Train)],
                        matched_eval(Split::Dev),
                        matched_eval(Split::Test),
                        notes,
                    ));
                }
            }
            Sweep::Ssl => {
                let sup = supmix_file(pair);
                cells.push((
                    TrainSpec::SupEqualMix,
                    vec![sup.clone()],
                    plain_eval(Split::Dev),
                    plain_eval(Split::Test),
                    BTreeMap::from([("alpha".to_string(), "50".to_string())]),
                ));
                for method in [SslMethod::SelfTraining, SslMethod::BackTranslation] {
                    cells.push((
                        TrainSpec::Ssl(method),
                        vec![sup.clone(), pseudo_file(task, method)],
                        plain_eval(Split::Dev),
                        plain_eval(Split::Test),
                        BTreeMap::from([("ssl_method".to_string(), method.short().to_string())]),
                    ));
                }
            }
        }
        for (spec, train, dev, test, notes) in cells {
            let resolve = |name: &String| -> Result<PathBuf> {
                let p = root.join(name);
                if p.is_file() {
                    Ok(p)
                } else {
                    Err(Error::MissingFile(p))
                }
            };
            let [t1, t2] = test;
            out.push(TrainManifest {
                format: MANIFEST_FORMAT.into(),
                experiment_id: experiment_id(task, spec),
                task,
                train_spec: spec,
                train_files: train.iter().map(resolve).collect::<Result<_>>()?,
                dev_files: dev.iter().map(resolve).collect::<Result<_>>()?,
                test_files: BTreeMap::from([(TestHalf::T1, resolve(&t1)?), (TestHalf::T2, resolve(&t2)?)]),
                notes,
            });
        }
    }
    check_unique_ids(&out)?;
    Ok(out)
}

pub fn check_unique_ids(manifests: &[TrainManifest]) -> Result<()> {
    let mut seen = HashSet::new();
    for m in manifests {
        if !seen.insert(m.experiment_id.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "duplicate experiment id {:?} in manifest batch",
                m.experiment_id
            )));
        }
    }
    Ok(())
}

/// Writes `{experiment_id}.json` per manifest and returns the paths.
pub fn write_manifests(manifests: &[TrainManifest], dir: &Path) -> Result<Vec<PathBuf>> {
    check_unique_ids(manifests)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    manifests
        .iter()
        .map(|m| {
            let p = dir.join(format!("{}.json", m.experiment_id));
            let mut body = serde_json::to_string_pretty(m)?;
            body.push('\n');
            fs::write(&p, body).map_err(|e| Error::io(p.display().to_string(), e))?;
            Ok(p)
        })
        .collect()
}

pub fn read_manifest_ids(dir: &Path) -> Result<BTreeSet<String>> {
    let mut ids = BTreeSet::new();
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    for entry in entries {
        let p = entry.map_err(|e| Error::io(dir.display().to_string(), e))?.path();
        if p.extension().is_some_and(|e| e == "json") {
            let text = fs::read_to_string(&p).map_err(|e| Error::io(p.display().to_string(), e))?;
            let m: TrainManifest = serde_json::from_str(&text)?;
            ids.insert(m.experiment_id);
        }
    }
    Ok(ids)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ingested {
    pub records: Vec<ScoreRecord>,
    pub warnings: Vec<String>,
}

pub fn read_scores_from<R: BufRead>(input: R, name: &str) -> Result<Ingested> {
    let mut lines = input.lines().enumerate();
    let mut out = Ingested::default();
    let header = loop {
        match lines.next() {
            None => {
                out.warnings.push(format!("{name}: empty score file"));
                return Ok(out);
            }
            Some((_, l)) => {
                let l = l.map_err(|e| Error::io(name, e))?;
                if !l.trim().is_empty() {
                    break l;
                }
            }
        }
    };
    let cols: Vec<&str> = header.split('\t').map(str::trim).collect();
    if cols != SCORE_COLUMNS {
        return Err(Error::parse(name, 1, format!("expected header {}", SCORE_COLUMNS.join("\t"))));
    }
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').map(str::trim).collect();
        if f.len() != SCORE_COLUMNS.len() {
            return Err(Error::parse(name, lineno, format!("expected 6 columns, found {}", f.len())));
        }
        let at = |e: Error| Error::parse(name, lineno, e.to_string());
        let value: f64 = f[5]
            .parse()
            .map_err(|_| Error::parse(name, lineno, format!("bad value {:?}", f[5])))?;
        let rec = ScoreRecord {
            experiment_id: f[0].to_string(),
            task: Direction::parse(f[1]).map_err(at)?,
            train_spec: f[2].parse().map_err(at)?,
            test_half: f[3].parse().map_err(at)?,
            metric_name: f[4].to_string(),
            value,
        };
        rec.validate().map_err(at)?;
        out.records.push(rec);
    }
    if out.records.is_empty() {
        out.warnings.push(format!("{name}: no score rows"));
    }
    Ok(out)
}

pub fn ingest_scores(path: &Path) -> Result<Ingested> {
    let f = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    read_scores_from(BufReader::new(f), &path.display().to_string())
}

/// Warnings for records whose experiment id no manifest declared.
pub fn flag_unknown(records: &[ScoreRecord], known: &BTreeSet<String>) -> Vec<String> {
    let unknown: BTreeSet<&str> = records
        .iter()
        .map(|r| r.experiment_id.as_str())
        .filter(|id| !known.contains(*id))
        .collect();
    unknown.into_iter().map(|id| format!("unknown experiment id {id:?}")).collect()
}

pub fn render_scores_tsv(records: &[ScoreRecord]) -> String {
    let mut out = SCORE_COLUMNS.join("\t");
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.experiment_id, r.task, r.train_spec, r.test_half, r.metric_name, r.value
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions<'a> {
    pub metric: &'a str,
    pub convention: Convention,
    pub provenance: bool,
}

impl Default for ReportOptions<'_> {
    fn default() -> Self {
        ReportOptions {
            metric: "BLEU",
            convention: Convention::Sum,
            provenance: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridRow {
    pub alpha: u8,
    pub cells: Vec<Option<f64>>,
    pub experiment_ids: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixtureGrid {
    pub columns: Vec<(Direction, TestHalf)>,
    pub rows: Vec<GridRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AceRow {
    pub task: Direction,
    pub causal: [Option<f64>; 2],
    pub anticausal: [Option<f64>; 2],
    pub ace: Option<f64>,
    pub naive_diff: Option<f64>,
    pub experiment_ids: Vec<String>,
    pub formula_note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Reports {
    pub mixture: Option<MixtureGrid>,
    pub ssl: Vec<SslTable>,
    pub ace: Vec<AceRow>,
    /// Cells that a table needed but the records lacked.
    pub gaps: Vec<String>,
}

fn task_order(tasks: impl IntoIterator<Item = Direction>) -> Vec<Direction> {
    let mut v: Vec<Direction> = tasks.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    v.sort_by_key(|t| (t.lang_pair(), t.to_string()));
    v
}

fn tasks_with(records: &[ScoreRecord], metric: &str, pred: impl Fn(TrainSpec) -> bool) -> Vec<Direction> {
    task_order(
        records
            .iter()
            .filter(|r| r.metric_name == metric && pred(r.train_spec))
            .map(|r| r.task),
    )
}

fn cell(records: &[ScoreRecord], task: Direction, spec: TrainSpec, half: TestHalf, metric: &str, gaps: &mut Vec<String>) -> Option<f64> {
    match find_cell(records, task, spec, half, metric) {
        Ok(r) => Some(r.value),
        Err(_) => {
            gaps.push(cell_name(task, spec, half));
            None
        }
    }
}

pub fn build_reports(records: &[ScoreRecord], opts: &ReportOptions) -> Result<Reports> {
    for r in records {
        r.validate()?;
    }
    let mut reports = Reports::default();
    let metric = opts.metric;

    let mix_tasks = tasks_with(records, metric, |s| matches!(s, TrainSpec::Mixture(_)));
    if !mix_tasks.is_empty() {
        let alphas: BTreeSet<u8> = records
            .iter()
            .filter_map(|r| match r.train_spec {
                TrainSpec::Mixture(a) if r.metric_name == metric => Some(a),
                _ => None,
            })
            .collect();
        let columns: Vec<(Direction, TestHalf)> = mix_tasks
            .iter()
            .flat_map(|&t| TestHalf::BOTH.map(|h| (t, h)))
            .collect();
        let rows = alphas
            .into_iter()
            .map(|alpha| {
                let spec = TrainSpec::Mixture(alpha);
                let cells = columns
                    .iter()
                    .map(|&(t, h)| cell(records, t, spec, h, metric, &mut reports.gaps))
                    .collect();
                let ids: BTreeSet<String> = columns
                    .iter()
                    .filter_map(|&(t, h)| find_cell(records, t, spec, h, metric).ok())
                    .map(|r| r.experiment_id.clone())
                    .collect();
                GridRow {
                    alpha,
                    cells,
                    experiment_ids: ids.into_iter().collect(),
                }
            })
            .collect();
        reports.mixture = Some(MixtureGrid { columns, rows });
    }

    for task in tasks_with(records, metric, |s| matches!(s, TrainSpec::SupEqualMix | TrainSpec::Ssl(_))) {
        match ssl_delta_table(records, task, metric) {
            Ok(t) => reports.ssl.push(t),
            Err(Error::MissingCell(c)) => reports.gaps.push(c),
            Err(e) => return Err(e),
        }
    }

    for task in tasks_with(records, metric, |s| matches!(s, TrainSpec::MatchedCausal | TrainSpec::MatchedAnticausal)) {
        let mut gaps = Vec::new();
        let causal = TestHalf::BOTH.map(|h| cell(records, task, TrainSpec::MatchedCausal, h, metric, &mut gaps));
        let anticausal = TestHalf::BOTH.map(|h| cell(records, task, TrainSpec::MatchedAnticausal, h, metric, &mut gaps));
        let (ace, ids, note) = match ace_from_scores(records, task, metric, opts.convention) {
            Ok(AceReport {
                ace,
                experiment_ids,
                formula_note,
                ..
            }) => (Some(ace), experiment_ids, Some(formula_note)),
            Err(_) => (None, Vec::new(), None),
        };
        let diff = naive_diff(records, task, metric, opts.convention).ok();
        if diff.is_none() {
            gaps.push(format!("{task} naive difference (mix:0 and mix:100 cells)"));
        }
        reports.gaps.extend(gaps);
        reports.ace.push(AceRow {
            task,
            causal,
            anticausal,
            ace,
            naive_diff: diff,
            experiment_ids: ids,
            formula_note: note,
        });
    }
    Ok(reports)
}

fn fmt_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.2}"))
}

fn fmt_signed_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), fmt_signed)
}

pub fn render_mixture_grid(grid: &MixtureGrid, provenance: bool) -> String {
    let mut out = String::from("alpha");
    for (t, h) in &grid.columns {
        let _ = write!(out, "\t{t}:{h}");
    }
    if provenance {
        out.push_str("\tprovenance");
    }
    out.push('\n');
    for row in &grid.rows {
        let _ = write!(out, "{}", row.alpha);
        for &c in &row.cells {
            let _ = write!(out, "\t{}", fmt_cell(c));
        }
        if provenance {
            let _ = write!(out, "\t{}", row.experiment_ids.join(","));
        }
        out.push('\n');
    }
    out
}

fn pseudo_label(task: Direction, method: SslMethod) -> String {
    let (o, d) = (task.origin(), task.derived());
    match method {
        SslMethod::SelfTraining => format!("+ST ({o}, {d}**)"),
        SslMethod::BackTranslation => format!("+BT ({o}**, {d})"),
    }
}

pub fn render_ssl_table(tables: &[SslTable], provenance: bool) -> String {
    let mut out = String::from("task\tsetting\tT1\tT2");
    if provenance {
        out.push_str("\tprovenance");
    }
    out.push('\n');
    for t in tables {
        let _ = write!(out, "{}\tsup_equal_mix\t{:.2}\t{:.2}", t.task, t.baseline[0], t.baseline[1]);
        if provenance {
            let _ = write!(out, "\t{}", experiment_id(t.task, TrainSpec::SupEqualMix));
        }
        out.push('\n');
        for row in &t.rows {
            let _ = write!(
                out,
                "{}\t{}\t{}\t{}",
                t.task,
                pseudo_label(t.task, row.method),
                row.deltas[0].render(),
                row.deltas[1].render()
            );
            if provenance {
                let _ = write!(
                    out,
                    "\t{},{}",
                    experiment_id(t.task, TrainSpec::SupEqualMix),
                    experiment_id(t.task, TrainSpec::Ssl(row.method))
                );
            }
            out.push('\n');
        }
    }
    out
}

pub fn render_ace_table(rows: &[AceRow], provenance: bool) -> String {
    let mut out = String::from("task\tcau_T1\tcau_T2\tant_T1\tant_T2\tACE\tDiff");
    if provenance {
        out.push_str("\tprovenance");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.task,
            fmt_cell(r.causal[0]),
            fmt_cell(r.causal[1]),
            fmt_cell(r.anticausal[0]),
            fmt_cell(r.anticausal[1]),
            fmt_signed_cell(r.ace),
            fmt_signed_cell(r.naive_diff)
        );
        if provenance {
            let _ = write!(out, "\t{}", r.experiment_ids.join(","));
        }
        out.push('\n');
    }
    out
}

/// Rendered TSV bodies keyed by file name.
pub fn render_reports(reports: &Reports, provenance: bool) -> BTreeMap<&'static str, String> {
    let mut files = BTreeMap::new();
    if let Some(g) = &reports.mixture {
        files.insert("mixture_grid.tsv", render_mixture_grid(g, provenance));
    }
    if !reports.ssl.is_empty() {
        files.insert("ssl_deltas.tsv", render_ssl_table(&reports.ssl, provenance));
    }
    if !reports.ace.is_empty() {
        files.insert("ace.tsv", render_ace_table(&reports.ace, provenance));
    }
    files
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

    fn fixture(name: &str) -> Vec<ScoreRecord> {
        let got = ingest_scores(&Path::new(FIXTURES).join("scores").join(name)).unwrap();
        assert!(got.warnings.is_empty());
        got.records
    }

    #[test]
    fn ingest_fixture_sizes() {
        assert_eq!(fixture("mixture_grid.tsv").len(), 100);
        assert_eq!(fixture("matched.tsv").len(), 40);
        assert_eq!(fixture("ssl_newstest.tsv").len(), 24);
    }

    #[test]
    fn ingest_errors() {
        let head = SCORE_COLUMNS.join("\t");
        let nan = format!("{head}\nx\ten-de\tmix:0\tT1\tBLEU\tNaN\n");
        let err = read_scores_from(nan.as_bytes(), "s.tsv").unwrap_err().to_string();
        assert!(err.starts_with("s.tsv:2:") && err.contains("non-finite"), "{err}");
        let bad = format!("{head}\nx\ten-de\tmix:0\tT3\tBLEU\t1\n");
        assert!(read_scores_from(bad.as_bytes(), "s").unwrap_err().to_string().starts_with("s:2:"));
        let short = format!("{head}\n\nx\ten-de\tmix:0\n");
        assert!(read_scores_from(short.as_bytes(), "s").unwrap_err().to_string().starts_with("s:3:"));
        assert!(read_scores_from("a\tb\n".as_bytes(), "s").is_err());
        let empty = read_scores_from("".as_bytes(), "s").unwrap();
        assert!(empty.records.is_empty() && empty.warnings.len() == 1);
    }

    #[test]
    fn score_export_roundtrip() {
        let recs = fixture("matched.tsv");
        let text = render_scores_tsv(&recs);
        assert_eq!(read_scores_from(text.as_bytes(), "x").unwrap().records, recs);
    }

    #[test]
    fn unknown_ids_flagged() {
        let recs = fixture("matched.tsv");
        let known: BTreeSet<String> = ["matched.en-de.causal".to_string()].into();
        let w = flag_unknown(&recs, &known);
        assert_eq!(w.len(), 19);
    }

    #[test]
    fn grid_matches_golden() {
        let reports = build_reports(&fixture("mixture_grid.tsv"), &ReportOptions::default()).unwrap();
        assert!(reports.gaps.is_empty());
        let golden = fs::read_to_string(Path::new(FIXTURES).join("golden/mixture_grid.tsv")).unwrap();
        assert_eq!(render_mixture_grid(reports.mixture.as_ref().unwrap(), false), golden);
    }

    #[test]
    fn ace_table_layout() {
        let mut recs = fixture("matched.tsv");
        recs.extend(fixture("mixture_grid.tsv"));
        let reports = build_reports(&recs, &ReportOptions::default()).unwrap();
        let table = render_ace_table(&reports.ace, true);
        let en_de = table.lines().find(|l| l.starts_with("en-de\t")).unwrap();
        assert_eq!(
            en_de,
            "en-de\t21.88\t28.77\t25.33\t22.19\t+3.13\t+1.75\tmatched.en-de.anticausal,matched.en-de.causal,mix.en-de.a0,mix.en-de.a100"
        );
        assert_eq!(table.lines().count(), 11);
    }

    #[test]
    fn gaps_are_reported() {
        let recs = vec![fixture("mixture_grid.tsv").remove(0)];
        let reports = build_reports(&recs, &ReportOptions::default()).unwrap();
        assert_eq!(reports.gaps, vec!["de-en mix:0 T2".to_string()]);
        assert_eq!(render_mixture_grid(reports.mixture.as_ref().unwrap(), false), "alpha\tde-en:T1\tde-en:T2\n0\t24.68\t-\n");
        let m = vec![fixture("matched.tsv").remove(0)];
        let r = build_reports(&m, &ReportOptions::default()).unwrap();
        assert_eq!(r.ace[0].ace, None);
        assert!(render_ace_table(&r.ace, false).contains("\t-\t-\n"));
    }

    #[test]
    fn ssl_table_text() {
        let reports = build_reports(&fixture("ssl_newstest.tsv"), &ReportOptions::default()).unwrap();
        let text = render_ssl_table(&reports.ssl, false);
        assert!(text.contains("en-fr\tsup_equal_mix\t16.16\t16.65\n"));
        assert!(text.contains("en-fr\t+ST (en, fr**)\t+2.04 (Aligned)\t+1.74\n"));
        assert!(text.contains("en-fr\t+BT (en**, fr)\t+1.91\t+2.45 (Aligned)\n"));
    }

    #[test]
    fn manifests_need_files() {
        let dir = tempfile::tempdir().unwrap();
        let pair = LangPair::parse("de,en").unwrap();
        let err = emit_manifests(dir.path(), pair, &Sweep::Matched).unwrap_err();
        assert!(matches!(err, Error::MissingFile(_)));
    }

    #[test]
    fn manifest_sweeps() {
        let dir = tempfile::tempdir().unwrap();
        let pair = LangPair::parse("de,en").unwrap();
        for d in [Direction::parse("de-en").unwrap(), Direction::parse("en-de").unwrap()] {
            for split in [Split::Train, Split::Dev, Split::Test] {
                fs::write(dir.path().join(corpus_file(d, split)), "").unwrap();
                fs::write(dir.path().join(matched_file(d, split)), "").unwrap();
            }
            for a in DEFAULT_ALPHAS {
                fs::write(dir.path().join(mixture_file(d, a)), "").unwrap();
            }
        }
        let mix = emit_manifests(dir.path(), pair, &Sweep::Mixture(DEFAULT_ALPHAS.to_vec())).unwrap();
        assert_eq!(mix.len(), 10);
        let alphas: BTreeSet<&str> = mix.iter().map(|m| m.notes["alpha"].as_str()).collect();
        assert_eq!(alphas, ["0", "100", "25", "50", "75"].into());
        let matched = emit_manifests(dir.path(), pair, &Sweep::Matched).unwrap();
        assert_eq!(matched.len(), 4);
        assert_eq!(matched[0].train_files[0], dir.path().join("matched.de2en.train.jsonl"));
        assert_eq!(matched[1].train_files[0], dir.path().join("matched.en2de.train.jsonl"));
        let out = dir.path().join("m");
        assert_eq!(write_manifests(&mix, &out).unwrap().len(), 10);
        assert_eq!(read_manifest_ids(&out).unwrap().len(), 10);
        let mut dup = matched.clone();
        dup.push(matched[0].clone());
        assert!(write_manifests(&dup, &out).is_err());
    }
}
