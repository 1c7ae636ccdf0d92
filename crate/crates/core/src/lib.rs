//! Core algorithms for herdscope: tweet corpus ingestion, text
//! preprocessing, lexicon sentiment scoring, interaction-graph clustering,
//! the subjectivity-band herd index and camp-level outcome prediction.
//!
//! The usual flow is [`corpus::load_corpus`] → [`pipeline::analyze`], with a
//! [`config::Pipeline`] supplying the data files.

pub mod config;
pub mod corpus;
pub mod data;
pub mod format;
pub mod graph;
pub mod herd;
pub mod pipeline;
pub mod preprocess;
pub mod sentiment;

pub use config::{ConfigError, Pipeline, RunConfig};
pub use corpus::{filter_by_hashtag, load_corpus, Corpus, CorpusError, CorpusLoader, LoadReport, TweetRecord};
pub use data::DataError;
pub use graph::{build_graph, ClusteringStats, GraphError, SocialGraph};
pub use herd::{
    AuthorProfile, BandEdges, CampAssignment, CampConfig, HerdError, HerdReport, PredictionReport,
};
pub use pipeline::{analyze, Analysis, PIPELINE_VERSION};
pub use preprocess::{Preprocessor, Stemmer, TokenDoc};
pub use sentiment::{CorpusSummary, Label, Lexicon, Scorer, SentimentScore};
