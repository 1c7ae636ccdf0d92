//! Lexicon-based polarity and subjectivity scoring.
//!
//! A document's polarity is the mean polarity of its lexicon hits, where a
//! hit directly preceded by a negation word contributes `-0.5 * p` instead of
//! `p`. Subjectivity is the plain mean of the hits' subjectivity. Documents
//! without hits score `(0, 0, Neutral)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::data::{content_lines, read_file, DataError};
use crate::format::truncated_percent;
use crate::preprocess::TokenDoc;

/// Multiplier applied to a term's polarity when the previous token negates it.
pub const NEGATION_FACTOR: f64 = -0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexiconEntry {
    pub polarity: f64,
    pub subjectivity: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, LexiconEntry>,
}

impl Lexicon {
    /// Parses `term<TAB>polarity<TAB>subjectivity` lines (any whitespace
    /// separates the fields).
    pub fn parse(text: &str, origin: &str) -> Result<Self, DataError> {
        let mut entries = HashMap::new();
        for (n, line) in content_lines(text) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [term, polarity, subjectivity] = fields[..] else {
                return Err(DataError::invalid(
                    origin,
                    n,
                    format!("expected term, polarity, subjectivity; got {} fields", fields.len()),
                ));
            };
            if !term.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(DataError::invalid(origin, n, format!("term {term:?} must be lowercase a-z")));
            }
            let number = |s: &str, what: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| DataError::invalid(origin, n, format!("bad {what} {s:?}")))
            };
            let entry = LexiconEntry {
                polarity: number(polarity, "polarity")?,
                subjectivity: number(subjectivity, "subjectivity")?,
            };
            if !(-1.0..=1.0).contains(&entry.polarity) {
                return Err(DataError::invalid(
                    origin,
                    n,
                    format!("polarity {} of {term:?} outside [-1, 1]", entry.polarity),
                ));
            }
            if !(0.0..=1.0).contains(&entry.subjectivity) {
                return Err(DataError::invalid(
                    origin,
                    n,
                    format!("subjectivity {} of {term:?} outside [0, 1]", entry.subjectivity),
                ));
            }
            if entries.insert(term.to_string(), entry).is_some() {
                return Err(DataError::invalid(origin, n, format!("duplicate term {term:?}")));
            }
        }
        Ok(Lexicon { entries })
    }

    pub fn load(path: &Path) -> Result<Self, DataError> {
        Self::parse(&read_file(path)?, &path.display().to_string())
    }

    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, LexiconEntry)>,
        S: Into<String>,
    {
        Lexicon {
            entries: entries.into_iter().map(|(t, e)| (t.into(), e)).collect(),
        }
    }

    pub fn get(&self, term: &str) -> Option<&LexiconEntry> {
        self.entries.get(term)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    Negative,
    Neutral,
    Positive,
}

impl Label {
    pub fn from_polarity(polarity: f64) -> Self {
        if polarity > 0.0 {
            Label::Positive
        } else if polarity < 0.0 {
            Label::Negative
        } else {
            Label::Neutral
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Negative => "NEGATIVE",
            Label::Neutral => "NEUTRAL",
            Label::Positive => "POSITIVE",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentimentScore {
    pub tweet_id: String,
    pub polarity: f64,
    pub subjectivity: f64,
    pub label: Label,
    pub matched_terms: usize,
}

/// Lexicon plus negation set.
#[derive(Debug, Clone)]
pub struct Scorer {
    lexicon: Lexicon,
    negations: HashSet<String>,
}

impl Scorer {
    pub fn new(lexicon: Lexicon, negations: HashSet<String>) -> Self {
        Scorer { lexicon, negations }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn negations(&self) -> &HashSet<String> {
        &self.negations
    }

    pub fn score(&self, doc: &TokenDoc) -> SentimentScore {
        score_tokens(doc, &self.lexicon, &self.negations)
    }
}

pub fn score_tokens(doc: &TokenDoc, lexicon: &Lexicon, negations: &HashSet<String>) -> SentimentScore {
    let mut polarity_sum = 0.0;
    let mut subjectivity_sum = 0.0;
    let mut matched = 0usize;
    for (i, token) in doc.tokens.iter().enumerate() {
        let Some(entry) = lexicon.get(token) else {
            continue;
        };
        let negated = i > 0 && negations.contains(&doc.tokens[i - 1]);
        polarity_sum += if negated {
            NEGATION_FACTOR * entry.polarity
        } else {
            entry.polarity
        };
        subjectivity_sum += entry.subjectivity;
        matched += 1;
    }

    let (polarity, subjectivity) = if matched == 0 {
        (0.0, 0.0)
    } else {
        let n = matched as f64;
        (
            (polarity_sum / n).clamp(-1.0, 1.0),
            (subjectivity_sum / n).clamp(0.0, 1.0),
        )
    };
    // fold -0.0 into +0.0
    let polarity = polarity + 0.0;

    SentimentScore {
        tweet_id: doc.tweet_id.clone(),
        polarity,
        subjectivity,
        label: Label::from_polarity(polarity),
        matched_terms: matched,
    }
}

/// Label counts and their truncated percentage shares.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub negative: usize,
    pub positive: usize,
    pub neutral: usize,
    pub negative_pct: String,
    pub positive_pct: String,
    pub neutral_pct: String,
}

impl CorpusSummary {
    pub fn from_counts(negative: usize, positive: usize, neutral: usize) -> Self {
        let total = negative + positive + neutral;
        CorpusSummary {
            total,
            negative,
            positive,
            neutral,
            negative_pct: truncated_percent(negative, total),
            positive_pct: truncated_percent(positive, total),
            neutral_pct: truncated_percent(neutral, total),
        }
    }
}

impl fmt::Display for CorpusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total: {}", self.total)?;
        writeln!(f, "negative: {} %", self.negative_pct)?;
        writeln!(f, "positive: {} %", self.positive_pct)?;
        write!(f, "neutral: {} %", self.neutral_pct)
    }
}

pub fn summarize<'a, I>(scores: I) -> CorpusSummary
where
    I: IntoIterator<Item = &'a SentimentScore>,
{
    let (mut neg, mut pos, mut neu) = (0, 0, 0);
    for s in scores {
        match s.label {
            Label::Negative => neg += 1,
            Label::Positive => pos += 1,
            Label::Neutral => neu += 1,
        }
    }
    CorpusSummary::from_counts(neg, pos, neu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(tokens: &[&str]) -> TokenDoc {
        TokenDoc {
            tweet_id: "t".into(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            raw_length: 0,
        }
    }

    fn lexicon() -> Lexicon {
        Lexicon::parse("good\t0.7\t0.6\nbad\t-0.7\t0.6\n", "mem").unwrap()
    }

    fn negations() -> HashSet<String> {
        ["not", "no", "never"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn load_lexicon_examples() {
        assert_eq!(Lexicon::parse("good 0.7 0.6", "mem").unwrap().len(), 1);
        let dup = Lexicon::parse("good\t0.7\t0.6\ngood\t0.1\t0.1\n", "mem").unwrap_err();
        assert_eq!(dup.to_string(), "mem:2: duplicate term \"good\"");
        let range = Lexicon::parse("bad -1.5 0.5", "mem").unwrap_err();
        assert!(range.to_string().contains("outside [-1, 1]"));
        assert!(Lexicon::parse("meh 0.1 1.2", "mem").is_err());
        assert!(Lexicon::parse("meh 0.1", "mem").is_err());
        assert!(Lexicon::parse("meh x 0.1", "mem").is_err());
        assert!(Lexicon::parse("meh NaN 0.1", "mem").is_err());
        assert!(Lexicon::parse("Good 0.1 0.1", "mem").is_err());
    }

    #[test]
    fn single_term() {
        let s = score_tokens(&doc(&["good"]), &lexicon(), &negations());
        assert_eq!((s.polarity, s.subjectivity, s.label), (0.7, 0.6, Label::Positive));
        assert_eq!(s.matched_terms, 1);
    }

    #[test]
    fn empty_doc_is_neutral() {
        let s = score_tokens(&doc(&[]), &lexicon(), &negations());
        assert_eq!((s.polarity, s.subjectivity, s.label), (0.0, 0.0, Label::Neutral));
        let s = score_tokens(&doc(&["vote", "today"]), &lexicon(), &negations());
        assert_eq!((s.polarity, s.subjectivity, s.label), (0.0, 0.0, Label::Neutral));
    }

    #[test]
    fn negation_flips_and_halves() {
        let s = score_tokens(&doc(&["not", "good"]), &lexicon(), &negations());
        assert_eq!(s.polarity, -0.5 * 0.7);
        assert!((s.polarity - -0.35).abs() < 1e-15);
        assert_eq!(s.subjectivity, 0.6);
        assert_eq!(s.label, Label::Negative);
        // only the immediately preceding token counts
        let s = score_tokens(&doc(&["not", "really", "good"]), &lexicon(), &negations());
        assert_eq!(s.polarity, 0.7);
    }

    #[test]
    fn symmetric_terms_cancel() {
        let s = score_tokens(&doc(&["good", "bad"]), &lexicon(), &negations());
        assert_eq!(s.polarity, 0.0);
        assert_eq!(s.label, Label::Neutral);
        assert_eq!(s.subjectivity, 0.6);
    }

    #[test]
    fn negated_zero_polarity_is_positive_zero() {
        let lex = Lexicon::parse("meh 0 0.4", "mem").unwrap();
        let s = score_tokens(&doc(&["not", "meh"]), &lex, &negations());
        assert!(s.polarity.is_sign_positive());
        assert_eq!(s.label, Label::Neutral);
    }

    fn scores(labels: &[(Label, usize)]) -> Vec<SentimentScore> {
        labels
            .iter()
            .flat_map(|&(label, n)| {
                std::iter::repeat_n(
                    SentimentScore {
                        tweet_id: String::new(),
                        polarity: 0.0,
                        subjectivity: 0.0,
                        label,
                        matched_terms: 0,
                    },
                    n,
                )
            })
            .collect()
    }

    #[test]
    fn summarize_examples() {
        let s = summarize(&scores(&[(Label::Negative, 24), (Label::Positive, 49), (Label::Neutral, 61)]));
        assert_eq!(s.total, 134);
        assert_eq!((s.negative_pct.as_str(), s.positive_pct.as_str(), s.neutral_pct.as_str()), ("17.91", "36.56", "45.52"));

        let s = summarize(&scores(&[(Label::Positive, 1), (Label::Negative, 1), (Label::Neutral, 2)]));
        assert_eq!((s.negative_pct.as_str(), s.positive_pct.as_str(), s.neutral_pct.as_str()), ("25.00", "25.00", "50.00"));

        let s = summarize(&scores(&[(Label::Neutral, 5)]));
        assert_eq!((s.negative_pct.as_str(), s.positive_pct.as_str(), s.neutral_pct.as_str()), ("0.00", "0.00", "100.00"));

        let s = summarize(&[]);
        assert_eq!(s.total, 0);
        assert_eq!(s.neutral_pct, "0.00");
    }
}
