//! Text normalization, tokenization, stopword removal and suffix stemming.

use std::collections::HashSet;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;

use crate::corpus::TweetRecord;
use crate::data::{content_lines, read_file, DataError};

static URL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"https?://\S*").unwrap());
static MENTION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"@\w+").unwrap());

/// Token list for one tweet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenDoc {
    pub tweet_id: String,
    pub tokens: Vec<String>,
    /// Character count of the original text.
    pub raw_length: usize,
}

/// Lowercases, strips URLs and `@`-mentions, keeps hashtag words, replaces
/// every character outside `a-z` with a space and collapses whitespace.
/// Idempotent.
pub fn normalize(text: &str) -> String {
    let lower = text.to_lowercase();
    let no_urls = URL.replace_all(&lower, " ");
    let no_mentions = MENTION.replace_all(&no_urls, " ");

    let mut out = String::with_capacity(no_mentions.len());
    let mut pending_space = false;
    for c in no_mentions.chars() {
        if c.is_ascii_lowercase() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        } else {
            pending_space = true;
        }
    }
    out
}

pub fn tokenize(text: &str) -> Vec<String> {
    text.split(' ')
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn remove_stopwords(tokens: Vec<String>, stoplist: &HashSet<String>) -> Vec<String> {
    tokens.into_iter().filter(|t| !stoplist.contains(t)).collect()
}

/// One row of the stemmer table: strip `suffix`, append `replacement`, but
/// only when what remains of the word before the suffix has at least
/// `min_stem_len` characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: String,
    pub replacement: String,
    pub min_stem_len: usize,
}

/// Ordered suffix-stripping stemmer. First matching rule wins, one rule per
/// pass, passes repeat until the word stops changing.
///
/// A rule's replacement is either identical to its suffix (a guard that
/// stops further stripping, e.g. `ss`) or strictly shorter, so every
/// effective pass shrinks the word and the loop terminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stemmer {
    rules: Vec<SuffixRule>,
}

impl Stemmer {
    pub fn new(rules: Vec<SuffixRule>) -> Result<Self, DataError> {
        for (i, rule) in rules.iter().enumerate() {
            check_rule(rule).map_err(|reason| DataError::invalid("<rules>", i + 1, reason))?;
        }
        Ok(Stemmer { rules })
    }

    /// Parses `suffix<TAB>replacement<TAB>min_stem_length` lines.
    pub fn parse(text: &str, origin: &str) -> Result<Self, DataError> {
        let mut rules = Vec::new();
        for (n, line) in content_lines(text) {
            let fields: Vec<&str> = line.split('\t').collect();
            let [suffix, replacement, min] = fields[..] else {
                return Err(DataError::invalid(
                    origin,
                    n,
                    format!("expected 3 tab-separated fields, got {}", fields.len()),
                ));
            };
            let min_stem_len = min
                .trim()
                .parse()
                .map_err(|_| DataError::invalid(origin, n, format!("bad min_stem_length {min:?}")))?;
            let rule = SuffixRule {
                suffix: suffix.trim().to_string(),
                replacement: replacement.trim().to_string(),
                min_stem_len,
            };
            check_rule(&rule).map_err(|reason| DataError::invalid(origin, n, reason))?;
            rules.push(rule);
        }
        Ok(Stemmer { rules })
    }

    pub fn load(path: &Path) -> Result<Self, DataError> {
        Self::parse(&read_file(path)?, &path.display().to_string())
    }

    pub fn rules(&self) -> &[SuffixRule] {
        &self.rules
    }

    pub fn stem(&self, token: &str) -> String {
        let mut word = token.to_string();
        while let Some(next) = self.apply_once(&word) {
            if next == word {
                break;
            }
            word = next;
        }
        word
    }

    fn apply_once(&self, word: &str) -> Option<String> {
        self.rules.iter().find_map(|rule| {
            let stem = word.strip_suffix(rule.suffix.as_str())?;
            (stem.len() >= rule.min_stem_len).then(|| format!("{stem}{}", rule.replacement))
        })
    }
}

fn check_rule(rule: &SuffixRule) -> Result<(), String> {
    let letters = |s: &str| s.bytes().all(|b| b.is_ascii_lowercase());
    if rule.suffix.is_empty() || !letters(&rule.suffix) || !letters(&rule.replacement) {
        return Err(format!(
            "suffix and replacement must be lowercase a-z (suffix non-empty): {:?} -> {:?}",
            rule.suffix, rule.replacement
        ));
    }
    if rule.replacement != rule.suffix && rule.replacement.len() >= rule.suffix.len() {
        return Err(format!(
            "replacement {:?} must be shorter than suffix {:?} or equal to it",
            rule.replacement, rule.suffix
        ));
    }
    Ok(())
}

/// The full transform stage: normalize, tokenize, drop stopwords, stem.
#[derive(Debug, Clone)]
pub struct Preprocessor {
    stoplist: HashSet<String>,
    stemmer: Stemmer,
}

impl Preprocessor {
    pub fn new(stoplist: HashSet<String>, stemmer: Stemmer) -> Self {
        Preprocessor { stoplist, stemmer }
    }

    pub fn stoplist(&self) -> &HashSet<String> {
        &self.stoplist
    }

    pub fn stemmer(&self) -> &Stemmer {
        &self.stemmer
    }

    pub fn tokens(&self, text: &str) -> Vec<String> {
        remove_stopwords(tokenize(&normalize(text)), &self.stoplist)
            .into_iter()
            .map(|t| self.stemmer.stem(&t))
            .collect()
    }

    pub fn preprocess(&self, record: &TweetRecord) -> TokenDoc {
        TokenDoc {
            tweet_id: record.tweet_id.clone(),
            tokens: self.tokens(&record.text),
            raw_length: record.text.chars().count(),
        }
    }
}
