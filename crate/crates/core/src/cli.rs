//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 data
//! error or (with `--strict`) an incomplete report.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::causal::Convention;
use crate::corpus::{
    dedup, downsample_to_match, read_corpus, split_train_dev_test, write_corpus, DirectedCorpus, Direction, LangPair,
    LanguageCode, Split,
};
use crate::embed_match::{
    choose_match_language, embed_builtin, load_embeddings, match_corpora, render_match_tsv, write_sparse_embeddings,
    EmbeddingTable, MatchConstraint, MatchMode, VectorSource,
};
use crate::error::Error;
use crate::extraction::{build_directed_corpora, parse_transcript, qualify_transcripts};
use crate::mixture::{
    build_pseudo_parallel, extract_monolingual, halve_for_ssl, make_mixture, read_monolingual, supervised_equal_mix,
    write_mixture, write_monolingual, write_pseudo, MixtureSpec, SslMethod,
};
use crate::report::{
    build_reports, corpus_file, emit_manifests, flag_unknown, ingest_scores, matched_file, mixture_file,
    read_manifest_ids, render_ace_table, render_reports, render_scores_tsv, supmix_file, write_manifests,
    ReportOptions, Sweep, DEFAULT_ALPHAS,
};
use crate::stats::{complexity_profile, corpus_stats, render_stats_tsv};

#[derive(Debug, Parser)]
#[command(name = "causalmt", version, about = "Direction-aware parallel corpus toolkit")]
pub struct Cli {
    /// Seed for every sampling step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Exit with status 2 when a report has missing cells.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Output file or directory, depending on the subcommand.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Mixture,
    Matched,
    Ssl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Sum,
    Mean,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Sum => Convention::Sum,
            ConventionArg::Mean => Convention::Mean,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    St,
    Bt,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Score TSV files.
    #[arg(long, num_args = 1.., required = true)]
    pub scores: Vec<PathBuf>,
    #[arg(long, default_value = "BLEU")]
    pub metric: String,
    #[arg(long, value_enum, default_value_t = ConventionArg::Sum)]
    pub convention: ConventionArg,
    /// Append a column naming the contributing experiment ids.
    #[arg(long)]
    pub provenance: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build direction-labeled corpora from aligned transcript files.
    Extract {
        /// Directory of `<doc>.<lang>.txt` transcripts.
        #[arg(long = "in")]
        input: PathBuf,
        /// Language pair, e.g. `de,en`.
        #[arg(long)]
        langs: String,
    },
    /// Drop repeated pairs.
    Dedup {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Train/dev/test split, optionally after downsampling two corpora to equal size.
    Split {
        #[arg(long = "in")]
        input: PathBuf,
        /// Opposite-direction corpus to downsample against before splitting.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        dev: usize,
        #[arg(long)]
        test: usize,
    },
    /// Translationese statistics per corpus side.
    Stats {
        #[arg(long = "in", num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Mix the two directions at rate alpha.
    Mix {
        #[arg(long)]
        aligned: PathBuf,
        #[arg(long)]
        unaligned: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=100), conflicts_with = "alphas")]
        alpha: Option<u8>,
        /// Comma-separated sweep; writes one file per rate into `--out`.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(0..=100))]
        alphas: Option<Vec<u8>>,
        #[arg(long)]
        total: usize,
    },
    /// Halve both directions for semi-supervised training.
    SslSplit {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Pair monolingual text with external MT output.
    Pseudo {
        #[arg(long)]
        mono: PathBuf,
        /// Sidecar ids file written next to the monolingual text.
        #[arg(long)]
        ids: PathBuf,
        /// One translation per line.
        #[arg(long)]
        translations: PathBuf,
        /// Ids for the translation lines; defaults to the monolingual ids.
        #[arg(long)]
        translation_ids: Option<PathBuf>,
        /// Language of the monolingual text; defaults to the original
        /// language recorded in the ids sidecar.
        #[arg(long)]
        mono_lang: Option<String>,
        /// Model direction, e.g. `en-de`.
        #[arg(long)]
        task: String,
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// Write built-in hashed sentence vectors.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        lang: Option<String>,
    },
    /// Match a causal against an anticausal corpus.
    Match {
        #[arg(long)]
        causal: PathBuf,
        #[arg(long)]
        anticausal: PathBuf,
        /// Precomputed vectors; the built-in embedding is used otherwise.
        #[arg(long)]
        embeddings: Option<PathBuf>,
        #[arg(long)]
        match_lang: Option<String>,
        #[arg(long, default_value_t = MatchConstraint::DEFAULT_MAX_LEN_RATIO)]
        max_len_ratio: f64,
        #[arg(long, default_value_t = MatchConstraint::DEFAULT_MIN_COSINE, allow_negative_numbers = true)]
        min_cosine: f64,
        #[arg(long, default_value_t = MatchConstraint::DEFAULT_CANDIDATE_CAP)]
        cap: usize,
        /// Keep every admissible candidate.
        #[arg(long, conflicts_with = "cap")]
        exact: bool,
        /// Greedy most-similar assignment instead of maximum matching.
        #[arg(long)]
        greedy: bool,
    },
    /// Emit trainer manifests for a sweep.
    Manifests {
        #[arg(long)]
        corpora: PathBuf,
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum)]
        sweep: SweepKind,
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(0..=100))]
        alphas: Option<Vec<u8>>,
    },
    /// Validate score files.
    Ingest {
        #[arg(long, num_args = 1.., required = true)]
        scores: Vec<PathBuf>,
        /// Manifest directory to check experiment ids against.
        #[arg(long)]
        manifests: Option<PathBuf>,
    },
    /// Matched-corpus effect table.
    Ace(ScoreArgs),
    /// All report tables.
    Report(ScoreArgs),
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(Error),
    Incomplete(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn init_threads() {
    if let Some(n) = std::env::var("CAUSALMT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    init_threads();
    match execute(&cli) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(Failure::Incomplete(n)) => {
            eprintln!("error: report incomplete ({n} missing cells)");
            2
        }
    }
}

fn out_path(cli: &Cli, what: &str) -> std::result::Result<PathBuf, Failure> {
    let path = cli
        .out
        .clone()
        .ok_or_else(|| Failure::Usage(format!("--out is required for {what}")))?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent.display().to_string(), e))?;
    }
    Ok(path)
}

fn out_dir(cli: &Cli, what: &str) -> std::result::Result<PathBuf, Failure> {
    let dir = out_path(cli, what)?;
    fs::create_dir_all(&dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    Ok(dir)
}

fn emit(out: Option<&Path>, body: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| Error::io(p.display().to_string(), e).into()),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Error::io("stdout", e).into()),
    }
}

fn to_json<T: Serialize>(value: &T) -> std::result::Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn parse_lang(s: &str) -> std::result::Result<LanguageCode, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn parse_pair(s: &str) -> std::result::Result<LangPair, Failure> {
    LangPair::parse(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Extract { input, langs } => extract(cli, input, parse_pair(langs)?),
        Command::Dedup { input } => {
            let corpus = read_corpus(input)?;
            let kept = dedup(&corpus);
            write_corpus(&kept, &out_path(cli, "dedup")?)?;
            eprintln!("kept {} of {} pairs", kept.len(), corpus.len());
            Ok(())
        }
        Command::Split { input, pair, dev, test } => split(cli, input, pair.as_deref(), *dev, *test),
        Command::Stats { inputs } => stats(cli, inputs),
        Command::Mix {
            aligned,
            unaligned,
            alpha,
            alphas,
            total,
        } => mix(cli, aligned, unaligned, *alpha, alphas.as_deref(), *total),
        Command::SslSplit { a, b } => ssl_split(cli, a, b),
        Command::Pseudo {
            mono,
            ids,
            translations,
            translation_ids,
            mono_lang,
            task,
            method,
        } => pseudo(
            cli,
            PseudoInputs {
                mono,
                ids,
                translations,
                translation_ids: translation_ids.as_deref(),
                mono_lang: mono_lang.as_deref(),
            },
            task,
            *method,
        ),
        Command::Embed { input, lang } => {
            let corpus = read_corpus(input)?;
            let lang = match lang {
                Some(l) => parse_lang(l)?,
                None => choose_match_language(corpus.lang_pair())?,
            };
            if !corpus.lang_pair().contains(lang) {
                return Err(Failure::Usage(format!("{lang} is not part of {}", corpus.lang_pair())));
            }
            let items: Vec<_> = corpus
                .pairs
                .iter()
                .map(|p| (p.id.clone(), embed_builtin(p.text(lang).unwrap_or_default())))
                .collect();
            write_sparse_embeddings(&items, &out_path(cli, "embed")?)?;
            eprintln!("embedded {} {lang} texts", items.len());
            Ok(())
        }
        Command::Match {
            causal,
            anticausal,
            embeddings,
            match_lang,
            max_len_ratio,
            min_cosine,
            cap,
            exact,
            greedy,
        } => {
            let causal = read_corpus(causal)?;
            let anticausal = read_corpus(anticausal)?;
            let table: Option<EmbeddingTable> = embeddings.as_deref().map(load_embeddings).transpose()?;
            let lang = match match_lang {
                Some(l) => parse_lang(l)?,
                None => choose_match_language(causal.lang_pair())?,
            };
            let c = MatchConstraint {
                max_len_ratio: *max_len_ratio,
                min_cosine: *min_cosine,
                match_lang: lang,
                candidate_cap: (!exact).then_some(*cap),
            };
            c.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let source = table.as_ref().map_or(VectorSource::Builtin, VectorSource::Table);
            let mode = if *greedy { MatchMode::Greedy } else { MatchMode::Maximum };
            let result = match_corpora(&causal, &anticausal, &c, source, mode)?;
            let dir = out_dir(cli, "match")?;
            let split = causal.split;
            write_corpus(&result.matched_causal, &dir.join(matched_file(causal.direction, split)))?;
            write_corpus(&result.matched_anticausal, &dir.join(matched_file(anticausal.direction, split)))?;
            let tsv = dir.join(format!("match.{}.{}.tsv", causal.direction.stem(), split.as_str()));
            fs::write(&tsv, render_match_tsv(&result)).map_err(|e| Error::io(tsv.display().to_string(), e))?;
            eprint!("{}", to_json(&result.summary)?);
            Ok(())
        }
        Command::Manifests {
            corpora,
            pair,
            sweep,
            alphas,
        } => {
            let sweep = match sweep {
                SweepKind::Mixture => Sweep::Mixture(alphas.clone().unwrap_or_else(|| DEFAULT_ALPHAS.to_vec())),
                SweepKind::Matched => Sweep::Matched,
                SweepKind::Ssl => Sweep::Ssl,
            };
            let manifests = emit_manifests(corpora, parse_pair(pair)?, &sweep)?;
            let written = write_manifests(&manifests, &out_dir(cli, "manifests")?)?;
            eprintln!("wrote {} manifests", written.len());
            Ok(())
        }
        Command::Ingest { scores, manifests } => {
            let records = load_scores(scores)?;
            if let Some(dir) = manifests {
                for w in flag_unknown(&records, &read_manifest_ids(dir)?) {
                    eprintln!("warning: {w}");
                }
            }
            eprintln!("{} score records", records.len());
            if cli.out.is_some() {
                let body = match cli.format {
                    Format::Tsv => render_scores_tsv(&records),
                    Format::Json => to_json(&records)?,
                };
                emit(cli.out.as_deref(), &body)?;
            }
            Ok(())
        }
        Command::Ace(args) => {
            let records = load_scores(&args.scores)?;
            let reports = build_reports(&records, &report_options(args))?;
            let body = match cli.format {
                Format::Tsv => render_ace_table(&reports.ace, args.provenance),
                Format::Json => to_json(&reports.ace)?,
            };
            emit(cli.out.as_deref(), &body)?;
            let gaps = reports.gaps.iter().filter(|g| !g.contains("mix:")).count();
            strict_check(cli, gaps)
        }
        Command::Report(args) => {
            let records = load_scores(&args.scores)?;
            let reports = build_reports(&records, &report_options(args))?;
            for g in &reports.gaps {
                eprintln!("warning: missing {g}");
            }
            match (cli.format, &cli.out) {
                (Format::Json, out) => emit(out.as_deref(), &to_json(&reports)?)?,
                (Format::Tsv, Some(_)) => {
                    let dir = out_dir(cli, "report")?;
                    for (name, body) in render_reports(&reports, args.provenance) {
                        emit(Some(&dir.join(name)), &body)?;
                    }
                }
                (Format::Tsv, None) => {
                    let mut all = String::new();
                    for (name, body) in render_reports(&reports, args.provenance) {
                        all.push_str(&format!("# {name}\n{body}\n"));
                    }
                    emit(None, &all)?;
                }
            }
            strict_check(cli, reports.gaps.len())
        }
    }
}

fn report_options(args: &ScoreArgs) -> ReportOptions<'_> {
    ReportOptions {
        metric: &args.metric,
        convention: args.convention.into(),
        provenance: args.provenance,
    }
}

fn strict_check(cli: &Cli, gaps: usize) -> Outcome {
    if cli.strict && gaps > 0 {
        Err(Failure::Incomplete(gaps))
    } else {
        Ok(())
    }
}

fn load_scores(paths: &[PathBuf]) -> std::result::Result<Vec<crate::causal::ScoreRecord>, Failure> {
    let mut records = Vec::new();
    for p in paths {
        let got = ingest_scores(p)?;
        for w in &got.warnings {
            eprintln!("warning: {w}");
        }
        records.extend(got.records);
    }
    Ok(records)
}

fn extract(cli: &Cli, input: &Path, pair: LangPair) -> Outcome {
    let [x, y] = pair.langs();
    let read_dir = fs::read_dir(input).map_err(|e| Error::io(input.display().to_string(), e))?;
    let mut docs: BTreeMap<String, BTreeMap<LanguageCode, PathBuf>> = BTreeMap::new();
    for entry in read_dir {
        let path = entry.map_err(|e| Error::io(input.display().to_string(), e))?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        let Some(stem) = name.strip_suffix(".txt") else { continue };
        let Some((doc, lang)) = stem.rsplit_once('.') else { continue };
        if let Ok(lang) = lang.parse::<LanguageCode>() {
            if lang == x || lang == y {
                docs.entry(doc.to_string()).or_default().insert(lang, path);
            }
        }
    }
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    let mut discarded = 0;
    let mut used = 0;
    for (doc, files) in &docs {
        let (Some(px), Some(py)) = (files.get(&x), files.get(&y)) else {
            eprintln!("warning: {doc} lacks one side of {pair}; skipped");
            continue;
        };
        let mut sides = Vec::new();
        for (p, lang) in [(px, x), (py, y)] {
            let raw = fs::read_to_string(p).map_err(|e| Error::io(p.display().to_string(), e))?;
            let parsed = parse_transcript(&raw, lang).map_err(|e| match e {
                Error::Markup { offset, message } => {
                    Error::InvalidArgument(format!("{}: byte {offset}: {message}", p.display()))
                }
                e => e,
            })?;
            for w in &parsed.warnings {
                eprintln!("warning: {}: byte {}: {}", p.display(), w.offset, w.message);
            }
            let mut utts = parsed.utterances;
            qualify_transcripts(&mut utts, doc);
            sides.push(utts);
        }
        let got = build_directed_corpora(&sides[0], &sides[1], x, y)
            .map_err(|e| Error::InvalidArgument(format!("{doc}: {e}")))?;
        forward.extend(got.forward.pairs);
        backward.extend(got.backward.pairs);
        discarded += got.discarded;
        used += 1;
    }
    let fwd = DirectedCorpus::new(Direction::new(x, y)?, Split::Unsplit, forward)?;
    let bwd = DirectedCorpus::new(Direction::new(y, x)?, Split::Unsplit, backward)?;
    let dir = out_dir(cli, "extract")?;
    for c in [&fwd, &bwd] {
        write_corpus(c, &dir.join(corpus_file(c.direction, Split::Unsplit)))?;
    }
    eprintln!(
        "{used} documents: {} {} pairs, {} {} pairs, {discarded} discarded",
        fwd.len(),
        fwd.direction,
        bwd.len(),
        bwd.direction
    );
    Ok(())
}

fn split(cli: &Cli, input: &Path, pair: Option<&Path>, dev: usize, test: usize) -> Outcome {
    let a = read_corpus(input)?;
    let corpora = match pair {
        Some(p) => {
            let b = read_corpus(p)?;
            let (a, b) = downsample_to_match(&a, &b, cli.seed)?;
            vec![a, b]
        }
        None => vec![a],
    };
    let dir = out_dir(cli, "split")?;
    for c in &corpora {
        let parts = split_train_dev_test(c, dev, test, cli.seed)?;
        for part in [&parts.train, &parts.dev, &parts.test] {
            write_corpus(part, &dir.join(corpus_file(part.direction, part.split)))?;
        }
        eprintln!(
            "{}: train {} dev {} test {}",
            c.direction,
            parts.train.len(),
            parts.dev.len(),
            parts.test.len()
        );
    }
    Ok(())
}

fn stats(cli: &Cli, inputs: &[PathBuf]) -> Outcome {
    let mut rows = Vec::new();
    for p in inputs {
        let corpus = read_corpus(p)?;
        let name = p
            .file_name()
            .and_then(|n| n.to_str())
            .map(|n| n.trim_end_matches(".jsonl").to_string())
            .unwrap_or_default();
        let st = corpus_stats(&corpus)?;
        let profiles = corpus
            .lang_pair()
            .langs()
            .into_iter()
            .map(|l| (l, complexity_profile(&corpus, l).ok()))
            .collect();
        rows.push((name, st, profiles));
    }
    let body = match cli.format {
        Format::Tsv => render_stats_tsv(&rows),
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                corpus: &'a str,
                stats: &'a crate::stats::CorpusStats,
                complexity: &'a BTreeMap<LanguageCode, Option<crate::stats::ComplexityProfile>>,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|(n, s, c)| Row {
                    corpus: n,
                    stats: s,
                    complexity: c,
                })
                .collect();
            to_json(&rows)?
        }
    };
    emit(cli.out.as_deref(), &body)
}

fn mix(cli: &Cli, aligned: &Path, unaligned: &Path, alpha: Option<u8>, alphas: Option<&[u8]>, total: usize) -> Outcome {
    let a = read_corpus(aligned)?;
    let b = read_corpus(unaligned)?;
    match (alpha, alphas) {
        (Some(alpha), None) => {
            let m = make_mixture(&a, &b, MixtureSpec::new(alpha, total, cli.seed)?)?;
            write_mixture(&m, &out_path(cli, "mix")?)?;
            eprintln!("{} pairs, {} from {}", m.len(), m.count_direction(a.direction), a.direction);
        }
        (None, Some(list)) => {
            let dir = out_dir(cli, "mix --alphas")?;
            for &alpha in list {
                let m = make_mixture(&a, &b, MixtureSpec::new(alpha, total, cli.seed)?)?;
                write_mixture(&m, &dir.join(mixture_file(a.direction, alpha)))?;
            }
            eprintln!("wrote {} mixtures of {total} pairs", list.len());
        }
        _ => return Err(Failure::Usage("pass exactly one of --alpha or --alphas".into())),
    }
    Ok(())
}

fn ssl_split(cli: &Cli, a: &Path, b: &Path) -> Outcome {
    let a = read_corpus(a)?;
    let b = read_corpus(b)?;
    let halves = halve_for_ssl(&a, &b, cli.seed)?;
    let dir = out_dir(cli, "ssl-split")?;
    let named = [
        (&halves.a_half1, "half1"),
        (&halves.a_half2, "half2"),
        (&halves.b_half1, "half1"),
        (&halves.b_half2, "half2"),
    ];
    for (c, tag) in named {
        write_corpus(c, &dir.join(format!("{}.{}.{tag}.jsonl", c.direction.stem(), c.split.as_str())))?;
    }
    let sup = supervised_equal_mix(&halves, cli.seed)?;
    write_mixture(&sup, &dir.join(supmix_file(a.lang_pair())))?;
    for half2 in [&halves.a_half2, &halves.b_half2] {
        let lang = half2.direction.origin();
        let mono = extract_monolingual(half2, lang)?;
        let base = format!("mono.{}.{lang}", half2.direction.stem());
        write_monolingual(&mono, &dir.join(format!("{base}.txt")), &dir.join(format!("{base}.ids")))?;
    }
    eprintln!(
        "halves {}/{} and {}/{}; supervised mix {}",
        halves.a_half1.len(),
        halves.a_half2.len(),
        halves.b_half1.len(),
        halves.b_half2.len(),
        sup.len()
    );
    Ok(())
}

fn read_lines(p: &Path) -> std::result::Result<Vec<String>, Failure> {
    let text = fs::read_to_string(p).map_err(|e| Error::io(p.display().to_string(), e))?;
    Ok(text.lines().map(str::to_string).collect())
}

struct PseudoInputs<'a> {
    mono: &'a Path,
    ids: &'a Path,
    translations: &'a Path,
    translation_ids: Option<&'a Path>,
    mono_lang: Option<&'a str>,
}

fn pseudo(cli: &Cli, inputs: PseudoInputs, task: &str, method: MethodArg) -> Outcome {
    let task = Direction::parse(task).map_err(|e| Failure::Usage(e.to_string()))?;
    let method = match method {
        MethodArg::St => SslMethod::SelfTraining,
        MethodArg::Bt => SslMethod::BackTranslation,
    };
    let mut set = read_monolingual(task.origin(), inputs.mono, inputs.ids)?;
    let mono_lang = match inputs.mono_lang {
        Some(l) => parse_lang(l)?,
        None => {
            let mut origins: Vec<LanguageCode> = set.records.iter().map(|r| r.direction.origin()).collect();
            origins.sort_unstable();
            origins.dedup();
            match origins.as_slice() {
                [one] => *one,
                _ => return Err(Failure::Usage("cannot infer the monolingual language; pass --mono-lang".into())),
            }
        }
    };
    set.lang = mono_lang;
    let target_lang = task
        .lang_pair()
        .other(mono_lang)
        .ok_or_else(|| Failure::Data(Error::InvalidArgument(format!("{mono_lang} is not part of task {task}"))))?;
    let (translations, translation_ids) = (inputs.translations, inputs.translation_ids);
    let lines = read_lines(translations)?;
    let tids: Vec<String> = match translation_ids {
        Some(p) => read_lines(p)?
            .into_iter()
            .map(|l| l.split('\t').next().unwrap_or_default().to_string())
            .collect(),
        None => set.records.iter().map(|r| r.id.clone()).collect(),
    };
    if tids.len() != lines.len() {
        return Err(Error::LengthMismatch {
            left: tids.len(),
            right: lines.len(),
        }
        .into());
    }
    let mt: Vec<(String, String)> = tids.into_iter().zip(lines).collect();
    let corpus = build_pseudo_parallel(&set.id_text_pairs(), mono_lang, &mt, target_lang, method, task)?;
    write_pseudo(&corpus, &out_path(cli, "pseudo")?)?;
    eprintln!("{} pseudo pairs ({mono_lang}, {target_lang}**)", corpus.pairs.len());
    Ok(())
}
