//! End-to-end stage composition: transform, score, graph, herd, predict.

use rayon::prelude::*;

use crate::config::Pipeline;
use crate::corpus::Corpus;
use crate::graph::{build_graph, clustering_stats, ClusteringStats, SocialGraph};
use crate::herd::{
    assign_camp, herd_report, predict, profile_authors, AuthorProfile, CampAssignment, HerdError,
    HerdReport, PredictionReport,
};
use crate::preprocess::TokenDoc;
use crate::sentiment::{summarize, CorpusSummary, SentimentScore};

/// Version tag of the token/score pipeline, recorded in run manifests.
pub const PIPELINE_VERSION: &str = "herdscope-pipeline/1";

/// All intermediate and final products of one analysis run.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub docs: Vec<TokenDoc>,
    pub scores: Vec<SentimentScore>,
    pub summary: CorpusSummary,
    pub graph: SocialGraph,
    pub stats: ClusteringStats,
    pub profiles: Vec<AuthorProfile>,
    pub herd: Result<HerdReport, HerdError>,
    pub assignments: Vec<CampAssignment>,
    pub prediction: Result<PredictionReport, HerdError>,
}

/// Preprocesses and scores every record, preserving corpus order.
pub fn score_corpus(corpus: &Corpus, pipeline: &Pipeline) -> (Vec<TokenDoc>, Vec<SentimentScore>) {
    corpus
        .records
        .par_iter()
        .map(|r| {
            let doc = pipeline.preprocessor.preprocess(r);
            let score = pipeline.scorer.score(&doc);
            (doc, score)
        })
        .unzip()
}

pub fn analyze(corpus: &Corpus, pipeline: &Pipeline) -> Analysis {
    let (docs, scores) = score_corpus(corpus, pipeline);
    let summary = summarize(&scores);
    let graph = build_graph(corpus);
    let stats = clustering_stats(&graph);
    let profiles = profile_authors(&corpus.records, &scores, &graph)
        .expect("scores are derived from the same corpus");
    let herd = herd_report(&profiles, &pipeline.band_edges, pipeline.herd_threshold);
    let assignments: Vec<CampAssignment> = docs
        .iter()
        .zip(&corpus.records)
        .map(|(doc, record)| assign_camp(doc, record, &pipeline.camps))
        .collect();
    let prediction = predict(&scores, &assignments, &pipeline.camps, herd.as_ref().ok());
    Analysis {
        docs,
        scores,
        summary,
        graph,
        stats,
        profiles,
        herd,
        assignments,
        prediction,
    }
}
