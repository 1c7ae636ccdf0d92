//! Run configuration: band edges, herd threshold, camps and the data files
//! backing the preprocessing and scoring stages.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::data::{load_word_list, DataError};
use crate::herd::{BandEdges, CampConfig, HerdError, DEFAULT_BAND_EDGES, DEFAULT_HERD_THRESHOLD};
use crate::preprocess::{Preprocessor, Stemmer};
use crate::sentiment::{Lexicon, Scorer};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Herd(#[from] HerdError),
    #[error("herd_threshold must be finite, got {0}")]
    Threshold(f64),
}

fn default_band_edges() -> Vec<f64> {
    DEFAULT_BAND_EDGES.to_vec()
}

fn default_threshold() -> f64 {
    DEFAULT_HERD_THRESHOLD
}

/// The JSON document as written on disk. Relative paths resolve against the
/// directory holding the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_band_edges")]
    pub band_edges: Vec<f64>,
    #[serde(default = "default_threshold")]
    pub herd_threshold: f64,
    pub camps: BTreeMap<String, Vec<String>>,
    pub negation_words: PathBuf,
    pub stopwords: PathBuf,
    pub lexicon: PathBuf,
    pub stemmer_rules: PathBuf,
    /// Published outcome figures echoed into the prediction report for
    /// comparison; never used in any computation.
    #[serde(default)]
    pub reference_vote_share: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn parse(text: &str, path: &Path) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config = Self::parse(&text, path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut config.negation_words,
            &mut config.stopwords,
            &mut config.lexicon,
            &mut config.stemmer_rules,
        ] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(config)
    }
}

/// Everything a run needs, loaded and validated.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub preprocessor: Preprocessor,
    pub scorer: Scorer,
    pub camps: CampConfig,
    pub band_edges: BandEdges,
    pub herd_threshold: f64,
    pub reference_vote_share: BTreeMap<String, f64>,
}

impl Pipeline {
    /// Loads the data files named by `config`. Negation words are removed
    /// from the stoplist so the scorer can still see them.
    pub fn from_config(config: &RunConfig) -> Result<Self, ConfigError> {
        let negations: HashSet<String> = load_word_list(&config.negation_words)?.into_iter().collect();
        let stoplist: HashSet<String> = load_word_list(&config.stopwords)?
            .into_iter()
            .filter(|w| !negations.contains(w))
            .collect();
        let stemmer = Stemmer::load(&config.stemmer_rules)?;
        let lexicon = Lexicon::load(&config.lexicon)?;
        if !config.herd_threshold.is_finite() {
            return Err(ConfigError::Threshold(config.herd_threshold));
        }
        Ok(Pipeline {
            preprocessor: Preprocessor::new(stoplist, stemmer),
            scorer: Scorer::new(lexicon, negations),
            camps: CampConfig::new(config.camps.clone())?,
            band_edges: BandEdges::new(config.band_edges.clone())?,
            herd_threshold: config.herd_threshold,
            reference_vote_share: config.reference_vote_share.clone(),
        })
    }

    pub fn load(config_path: &Path) -> Result<Self, ConfigError> {
        Self::from_config(&RunConfig::load(config_path)?)
    }
}
