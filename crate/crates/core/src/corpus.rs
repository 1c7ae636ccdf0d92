//! Line-delimited tweet corpora: loading, validation and hashtag filtering.
//!
//! Every non-empty input line is either accepted as a [`TweetRecord`] or
//! reported as a [`LineError`]; nothing is dropped silently.

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

/// Keys a record object may carry. Anything else bumps the unknown-key counter.
const KNOWN_KEYS: [&str; 8] = [
    "tweet_id",
    "author_id",
    "text",
    "timestamp",
    "hashtags",
    "mentions",
    "retweet_of",
    "follower_count",
];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{origin}: {invalid} of {total} non-empty lines are invalid (more than half); wrong file format?")]
    TooManyInvalid {
        origin: String,
        invalid: usize,
        total: usize,
    },
}

/// One ingested post.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub author_id: String,
    pub text: String,
    #[serde(serialize_with = "serialize_timestamp")]
    pub timestamp: DateTime<Utc>,
    pub hashtags: Vec<String>,
    pub mentions: Vec<String>,
    pub retweet_of: Option<String>,
    pub follower_count: u64,
}

fn serialize_timestamp<S: serde::Serializer>(ts: &DateTime<Utc>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ts.to_rfc3339_opts(SecondsFormat::Secs, true))
}

impl TweetRecord {
    /// Serializes the record as one corpus line (no trailing newline).
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }

    /// Every author this record interacts with, in mention order followed by
    /// the retweet target.
    pub fn interaction_targets(&self) -> impl Iterator<Item = &str> {
        self.mentions
            .iter()
            .map(String::as_str)
            .chain(self.retweet_of.as_deref())
    }
}

/// An ordered, duplicate-free collection of records.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub records: Vec<TweetRecord>,
    pub source_label: String,
}

impl Corpus {
    pub fn new(source_label: impl Into<String>) -> Self {
        Corpus {
            records: Vec::new(),
            source_label: source_label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Writes the corpus back out in the line-delimited format.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for record in &self.records {
            out.push_str(&record.to_json_line());
            out.push('\n');
        }
        out
    }
}

/// A rejected input line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub origin: String,
    /// 1-based physical line number.
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.origin, self.line, self.reason)
    }
}

/// Result of ingesting one or more sources.
#[derive(Debug, Clone, Default)]
pub struct LoadReport {
    pub corpus: Corpus,
    pub invalid: Vec<LineError>,
    /// Number of non-empty lines seen across all sources.
    pub nonempty_lines: usize,
    /// Number of unknown keys encountered (each occurrence counts).
    pub unknown_keys: usize,
}

/// Incremental corpus ingestion; the duplicate check spans every source fed
/// to the same loader, first occurrence wins.
#[derive(Debug, Default)]
pub struct CorpusLoader {
    report: LoadReport,
    seen: HashSet<String>,
}

impl CorpusLoader {
    pub fn new(source_label: impl Into<String>) -> Self {
        CorpusLoader {
            report: LoadReport {
                corpus: Corpus::new(source_label),
                ..LoadReport::default()
            },
            seen: HashSet::new(),
        }
    }

    pub fn load_path(&mut self, path: &Path) -> Result<(), CorpusError> {
        let io_err = |source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = File::open(path).map_err(io_err)?;
        self.load_reader(BufReader::new(file), &path.display().to_string())
            .map_err(|e| match e {
                CorpusError::Io { source, .. } => io_err(source),
                other => other,
            })
    }

    pub fn load_reader<R: BufRead>(&mut self, reader: R, origin: &str) -> Result<(), CorpusError> {
        let mut nonempty = 0usize;
        let mut invalid = 0usize;
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| CorpusError::Io {
                path: PathBuf::from(origin),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            nonempty += 1;
            let parsed = parse_record(&line, &mut self.report.unknown_keys).and_then(|record| {
                if self.seen.contains(&record.tweet_id) {
                    Err("duplicate tweet_id".to_string())
                } else {
                    Ok(record)
                }
            });
            match parsed {
                Ok(record) => {
                    self.seen.insert(record.tweet_id.clone());
                    self.report.corpus.records.push(record);
                }
                Err(reason) => {
                    invalid += 1;
                    self.report.invalid.push(LineError {
                        origin: origin.to_string(),
                        line: idx + 1,
                        reason,
                    });
                }
            }
        }
        self.report.nonempty_lines += nonempty;
        if invalid * 2 > nonempty {
            return Err(CorpusError::TooManyInvalid {
                origin: origin.to_string(),
                invalid,
                total: nonempty,
            });
        }
        Ok(())
    }

    pub fn finish(self) -> LoadReport {
        self.report
    }
}

/// Loads a single corpus file.
pub fn load_corpus(path: &Path, source_label: &str) -> Result<LoadReport, CorpusError> {
    let mut loader = CorpusLoader::new(source_label);
    loader.load_path(path)?;
    Ok(loader.finish())
}

/// Sub-corpus of records carrying `tag` (case-insensitive, leading `#` ignored).
pub fn filter_by_hashtag(corpus: &Corpus, tag: &str) -> Corpus {
    let wanted = normalize_hashtag(tag);
    Corpus {
        records: corpus
            .records
            .iter()
            .filter(|r| r.hashtags.iter().any(|h| *h == wanted))
            .cloned()
            .collect(),
        source_label: wanted,
    }
}

fn normalize_hashtag(raw: &str) -> String {
    raw.trim().trim_start_matches('#').to_lowercase()
}

fn parse_record(line: &str, unknown_keys: &mut usize) -> Result<TweetRecord, String> {
    let value: Value = serde_json::from_str(line).map_err(|e| format!("malformed JSON: {e}"))?;
    let Value::Object(obj) = value else {
        return Err("record is not a JSON object".into());
    };
    *unknown_keys += obj.keys().filter(|k| !KNOWN_KEYS.contains(&k.as_str())).count();

    let tweet_id = required_string(&obj, "tweet_id")?;
    let author_id = required_string(&obj, "author_id")?;
    let text = match obj.get("text") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err("text must be a string".into()),
        None => return Err("missing text".into()),
    };
    let timestamp = match obj.get("timestamp") {
        Some(Value::String(s)) => DateTime::parse_from_rfc3339(s)
            .map_err(|e| format!("invalid timestamp {s:?}: {e}"))?
            .with_timezone(&Utc),
        Some(_) => return Err("timestamp must be an ISO-8601 string".into()),
        None => return Err("missing timestamp".into()),
    };
    // seconds precision
    let timestamp = DateTime::from_timestamp(timestamp.timestamp(), 0).expect("in range");

    let mut hashtags = Vec::new();
    for raw in string_array(&obj, "hashtags")? {
        let tag = normalize_hashtag(&raw);
        if tag.is_empty() || tag.contains('#') || tag.chars().any(char::is_whitespace) {
            return Err(format!("invalid hashtag {raw:?}"));
        }
        hashtags.push(tag);
    }

    let mut mentions = Vec::new();
    for raw in string_array(&obj, "mentions")? {
        if raw.is_empty() {
            return Err("empty mention".into());
        }
        if raw != author_id {
            mentions.push(raw);
        }
    }

    let retweet_of = match obj.get("retweet_of") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if !s.is_empty() => Some(s.clone()),
        Some(_) => return Err("retweet_of must be a non-empty string or null".into()),
    };

    let follower_count = match obj.get("follower_count") {
        Some(v) => v
            .as_u64()
            .ok_or_else(|| "follower_count must be a non-negative integer".to_string())?,
        None => return Err("missing follower_count".into()),
    };

    Ok(TweetRecord {
        tweet_id,
        author_id,
        text,
        timestamp,
        hashtags,
        mentions,
        retweet_of,
        follower_count,
    })
}

fn required_string(obj: &Map<String, Value>, key: &str) -> Result<String, String> {
    match obj.get(key) {
        Some(Value::String(s)) if !s.is_empty() => Ok(s.clone()),
        Some(Value::String(_)) => Err(format!("empty {key}")),
        Some(_) => Err(format!("{key} must be a string")),
        None => Err(format!("missing {key}")),
    }
}

fn string_array(obj: &Map<String, Value>, key: &str) -> Result<Vec<String>, String> {
    match obj.get(key) {
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| format!("{key} must contain only strings"))
            })
            .collect(),
        Some(_) => Err(format!("{key} must be an array")),
        None => Err(format!("missing {key}")),
    }
}
