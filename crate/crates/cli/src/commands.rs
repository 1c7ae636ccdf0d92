//! The four subcommands. Each returns an [`Outcome`] instead of printing so
//! the binary and the tests share one code path.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use herdscope_core::format::{fixed6, serialize_fixed6};
use herdscope_core::graph::degree_distribution;
use herdscope_core::{
    analyze, filter_by_hashtag, Analysis, Corpus, CorpusLoader, LoadReport, Pipeline, RunConfig,
    PIPELINE_VERSION,
};
use serde::Serialize;

use crate::emit::{csv_bytes, json_bytes, sha256_hex, BundleWriter, EmittedFile};
use crate::error::{CliError, EXIT_DATA, EXIT_IO, EXIT_OK};

/// Exit status plus everything the command wants printed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn from_error(err: &CliError) -> Self {
        Outcome {
            code: err.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Inputs shared by `score` and `analyze`.
#[derive(Debug, Clone)]
pub struct RunArgs {
    pub config: PathBuf,
    pub corpora: Vec<PathBuf>,
    pub out: PathBuf,
    pub hashtag: Option<String>,
}

struct Ingested {
    report: LoadReport,
    corpus: Corpus,
}

fn source_label(corpora: &[PathBuf]) -> String {
    corpora
        .first()
        .and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn ingest(corpora: &[PathBuf], hashtag: Option<&str>, stderr: &mut String) -> Result<Ingested, CliError> {
    let mut loader = CorpusLoader::new(source_label(corpora));
    for path in corpora {
        loader
            .load_path(path)
            .map_err(|source| CliError::Corpus { stage: "extract", source })?;
    }
    let report = loader.finish();
    for e in &report.invalid {
        let _ = writeln!(stderr, "warning: skipped {e}");
    }
    if report.unknown_keys > 0 {
        let _ = writeln!(stderr, "warning: ignored {} unknown record key(s)", report.unknown_keys);
    }
    let corpus = match hashtag {
        Some(tag) => filter_by_hashtag(&report.corpus, tag),
        None => report.corpus.clone(),
    };
    Ok(Ingested { report, corpus })
}

/// Checks corpus files; exit 0 only when every non-empty line is valid.
pub fn cmd_validate(corpora: &[PathBuf]) -> Outcome {
    let mut loader = CorpusLoader::new(source_label(corpora));
    let mut out = Outcome::default();
    let mut fatal = None;
    for path in corpora {
        if let Err(source) = loader.load_path(path) {
            fatal = Some(CliError::Corpus { stage: "validate", source });
            break;
        }
    }
    let report = loader.finish();
    for e in &report.invalid {
        let _ = writeln!(out.stdout, "{e}");
    }
    if let Some(err) = fatal {
        out.code = err.exit_code();
        let _ = writeln!(out.stderr, "error: {err}");
        return out;
    }
    let _ = writeln!(
        out.stdout,
        "{} valid record(s), {} invalid line(s)",
        report.corpus.len(),
        report.invalid.len()
    );
    out.code = if report.invalid.is_empty() { EXIT_OK } else { EXIT_DATA };
    out
}

fn scores_csv(analysis_scores: &[herdscope_core::SentimentScore]) -> Vec<u8> {
    csv_bytes(
        &["tweet_id", "polarity", "subjectivity", "label"],
        analysis_scores.iter().map(|s| {
            [
                s.tweet_id.clone(),
                fixed6(s.polarity),
                fixed6(s.subjectivity),
                s.label.as_str().to_string(),
            ]
        }),
    )
}

/// Scores every tweet, writes `scores.csv` and prints the label shares.
pub fn cmd_score(args: &RunArgs) -> Outcome {
    let mut stderr = String::new();
    let result = (|| {
        let pipeline = Pipeline::load(&args.config)?;
        let ingested = ingest(&args.corpora, args.hashtag.as_deref(), &mut stderr)?;
        let (_, scores) = herdscope_core::pipeline::score_corpus(&ingested.corpus, &pipeline);
        let mut writer = BundleWriter::create(&args.out)?;
        writer.write("scores.csv", &scores_csv(&scores))?;
        Ok::<_, CliError>((herdscope_core::sentiment::summarize(&scores), writer))
    })();
    match result {
        Ok((summary, writer)) => Outcome {
            code: EXIT_OK,
            stdout: format!("{summary}\nwrote {}\n", writer.dir().join("scores.csv").display()),
            stderr,
        },
        Err(err) => {
            let mut o = Outcome::from_error(&err);
            o.stderr.insert_str(0, &stderr);
            o
        }
    }
}

#[derive(Serialize)]
struct FileDigest {
    file: String,
    sha256: String,
}

#[derive(Serialize)]
struct StageCounts {
    nonempty_lines: usize,
    valid_records: usize,
    invalid_lines: usize,
    filtered_records: usize,
    scored_tweets: usize,
    distinct_authors: usize,
    profiled_authors: usize,
    graph_nodes: usize,
    graph_edges: usize,
    camp_assigned_tweets: usize,
    unassigned_tweets: usize,
    tied_tweets: usize,
}

#[derive(Serialize)]
struct Manifest {
    tool_version: &'static str,
    pipeline_version: &'static str,
    config: FileDigest,
    data_files: Vec<FileDigest>,
    corpora: Vec<FileDigest>,
    hashtag: Option<String>,
    stage_counts: StageCounts,
    emitted: Vec<EmittedFile>,
}

fn digest(path: &Path) -> Result<FileDigest, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(FileDigest {
        file: path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        sha256: sha256_hex(&bytes),
    })
}

#[derive(Serialize)]
struct GraphStatsOut {
    nodes: usize,
    edges: usize,
    triangles: u64,
    connected_triples: u64,
    #[serde(serialize_with = "serialize_fixed6")]
    mean_clustering: f64,
    #[serde(serialize_with = "serialize_fixed6")]
    global_clustering: f64,
}

#[derive(Serialize)]
struct SummaryOut<'a> {
    source_label: &'a str,
    #[serde(flatten)]
    summary: &'a herdscope_core::CorpusSummary,
}

#[derive(Serialize)]
struct Fixed6(#[serde(serialize_with = "serialize_fixed6")] f64);

#[derive(Serialize)]
#[serde(untagged)]
enum Section<'a, T: Serialize> {
    Ok(&'a T),
    Failed { error: String },
}

impl<'a, T: Serialize> Section<'a, T> {
    fn of<E: std::fmt::Display>(r: &'a Result<T, E>) -> Self {
        match r {
            Ok(v) => Section::Ok(v),
            Err(e) => Section::Failed { error: e.to_string() },
        }
    }
}

#[derive(Serialize)]
struct PredictionOut<'a> {
    reference_vote_share: BTreeMap<&'a str, Fixed6>,
    #[serde(flatten)]
    result: Section<'a, herdscope_core::PredictionReport>,
}

fn write_bundle(
    args: &RunArgs,
    config: &RunConfig,
    pipeline: &Pipeline,
    ingested: &Ingested,
    analysis: &Analysis,
) -> Result<Vec<String>, CliError> {
    let mut w = BundleWriter::create(&args.out)?;
    let corpus = &ingested.corpus;
    let mut notes = Vec::new();

    w.write("scores.csv", &scores_csv(&analysis.scores))?;
    w.write(
        "summary.json",
        &json_bytes(&SummaryOut {
            source_label: &corpus.source_label,
            summary: &analysis.summary,
        }),
    )?;

    let stats = &analysis.stats;
    w.write(
        "graph_stats.json",
        &json_bytes(&GraphStatsOut {
            nodes: analysis.graph.node_count(),
            edges: analysis.graph.edge_count(),
            triangles: stats.triangles,
            connected_triples: stats.triples,
            mean_clustering: stats.mean_clustering,
            global_clustering: stats.global_clustering,
        }),
    )?;
    w.write(
        "degree_distribution.csv",
        &csv_bytes(
            &["degree", "nodes"],
            degree_distribution(&analysis.graph)
                .into_iter()
                .map(|(k, n)| [k.to_string(), n.to_string()]),
        ),
    )?;
    w.write(
        "local_clustering.csv",
        &csv_bytes(
            &["author_id", "degree", "local_clustering"],
            stats
                .local
                .iter()
                .map(|(a, c)| [a.clone(), stats.degree[a].to_string(), fixed6(*c)]),
        ),
    )?;
    w.write(
        "ck_curve.csv",
        &csv_bytes(
            &["degree", "mean_clustering"],
            stats.ck_curve.iter().map(|(k, c)| [k.to_string(), fixed6(*c)]),
        ),
    )?;
    w.write("edges.tsv", analysis.graph.to_edge_list().as_bytes())?;

    let indexed = || analysis.scores.iter().enumerate();
    w.write(
        "subjectivity_scatter.csv",
        &csv_bytes(
            &["tweet_index", "subjectivity"],
            indexed().map(|(i, s)| [i.to_string(), fixed6(s.subjectivity)]),
        ),
    )?;
    w.write(
        "polarity_scatter.csv",
        &csv_bytes(
            &["tweet_index", "polarity"],
            indexed().map(|(i, s)| [i.to_string(), fixed6(s.polarity)]),
        ),
    )?;
    w.write(
        "combined_scatter.csv",
        &csv_bytes(
            &["tweet_index", "subjectivity", "polarity"],
            indexed().map(|(i, s)| [i.to_string(), fixed6(s.subjectivity), fixed6(s.polarity)]),
        ),
    )?;

    w.write(
        "author_profiles.csv",
        &csv_bytes(
            &["author_id", "tweet_count", "mean_subjectivity", "mean_polarity", "local_clustering"],
            analysis.profiles.iter().map(|p| {
                [
                    p.author_id.clone(),
                    p.tweet_count.to_string(),
                    fixed6(p.mean_subjectivity),
                    fixed6(p.mean_polarity),
                    fixed6(p.local_clustering),
                ]
            }),
        ),
    )?;
    w.write("herd_report.json", &json_bytes(&Section::of(&analysis.herd)))?;
    if let Err(e) = &analysis.herd {
        notes.push(format!("herd: {e}"));
    }
    w.write(
        "prediction_report.json",
        &json_bytes(&PredictionOut {
            reference_vote_share: pipeline
                .reference_vote_share
                .iter()
                .map(|(k, v)| (k.as_str(), Fixed6(*v)))
                .collect(),
            result: Section::of(&analysis.prediction),
        }),
    )?;
    if let Err(e) = &analysis.prediction {
        notes.push(format!("predict: {e}"));
    }

    let distinct_authors = {
        let mut a: Vec<&str> = corpus.records.iter().map(|r| r.author_id.as_str()).collect();
        a.sort_unstable();
        a.dedup();
        a.len()
    };
    let assigned = analysis.assignments.iter().filter(|a| a.camp().is_some()).count();
    let tied = analysis
        .assignments
        .iter()
        .filter(|a| **a == herdscope_core::CampAssignment::Tie)
        .count();
    let manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION"),
        pipeline_version: PIPELINE_VERSION,
        config: digest(&args.config)?,
        data_files: [
            &config.lexicon,
            &config.stopwords,
            &config.negation_words,
            &config.stemmer_rules,
        ]
        .into_iter()
        .map(|p| digest(p))
        .collect::<Result<_, _>>()?,
        corpora: args.corpora.iter().map(|p| digest(p)).collect::<Result<_, _>>()?,
        hashtag: args.hashtag.clone(),
        stage_counts: StageCounts {
            nonempty_lines: ingested.report.nonempty_lines,
            valid_records: ingested.report.corpus.len(),
            invalid_lines: ingested.report.invalid.len(),
            filtered_records: corpus.len(),
            scored_tweets: analysis.scores.len(),
            distinct_authors,
            profiled_authors: analysis.profiles.len(),
            graph_nodes: analysis.graph.node_count(),
            graph_edges: analysis.graph.edge_count(),
            camp_assigned_tweets: assigned,
            unassigned_tweets: analysis.assignments.len() - assigned - tied,
            tied_tweets: tied,
        },
        emitted: w.emitted().to_vec(),
    };
    w.write("manifest.json", &json_bytes(&manifest))?;
    Ok(notes)
}

/// Runs the whole pipeline and writes the report bundle into `args.out`.
/// Herd or prediction failures still produce a bundle (with error markers)
/// and exit with the data-failure status.
pub fn cmd_analyze(args: &RunArgs) -> Outcome {
    let mut stderr = String::new();
    let result = (|| {
        let config = RunConfig::load(&args.config)?;
        let pipeline = Pipeline::from_config(&config)?;
        let ingested = ingest(&args.corpora, args.hashtag.as_deref(), &mut stderr)?;
        let analysis = analyze(&ingested.corpus, &pipeline);
        let notes = write_bundle(args, &config, &pipeline, &ingested, &analysis)?;
        Ok::<_, CliError>((analysis, notes))
    })();
    match result {
        Ok((analysis, notes)) => {
            let mut stdout = format!("{}\n", analysis.summary);
            let _ = writeln!(
                stdout,
                "mean clustering: {}\nglobal clustering: {}",
                fixed6(analysis.stats.mean_clustering),
                fixed6(analysis.stats.global_clustering)
            );
            if let Ok(h) = &analysis.herd {
                let _ = writeln!(stdout, "herd index: {} (flag {})", fixed6(h.herd_index), h.herd_flag);
            }
            if let Ok(p) = &analysis.prediction {
                match &p.winner {
                    Some(w) => {
                        let _ = writeln!(stdout, "predicted leader: {w}");
                    }
                    None => stdout.push_str("predicted leader: undecided\n"),
                }
            }
            let _ = writeln!(stdout, "bundle written to {}", args.out.display());
            for n in &notes {
                let _ = writeln!(stderr, "error: {n}");
            }
            Outcome {
                code: if notes.is_empty() { EXIT_OK } else { EXIT_DATA },
                stdout,
                stderr,
            }
        }
        Err(err) => {
            let mut o = Outcome::from_error(&err);
            o.stderr.insert_str(0, &stderr);
            o
        }
    }
}

pub fn cmd_plot(bundle: &Path, out: Option<&Path>) -> Outcome {
    match crate::plot::plot_bundle(bundle, out.unwrap_or(bundle)) {
        Ok(report) => {
            let mut o = Outcome::default();
            for f in &report.written {
                let _ = writeln!(o.stdout, "wrote {f}");
            }
            for e in &report.errors {
                let _ = writeln!(o.stderr, "error: {e}");
            }
            o.code = if report.errors.is_empty() { EXIT_OK } else { EXIT_DATA };
            o
        }
        Err(err) => Outcome {
            code: EXIT_IO,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}
