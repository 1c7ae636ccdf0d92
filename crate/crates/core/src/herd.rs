//! Author profiles, the subjectivity-band herd index, camp attribution and
//! the camp-level outcome prediction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::corpus::TweetRecord;
use crate::format::{serialize_fixed6, serialize_opt_fixed6, truncated_percent};
use crate::graph::{local_clustering, SocialGraph};
use crate::preprocess::TokenDoc;
use crate::sentiment::{Label, SentimentScore};

pub const DEFAULT_BAND_EDGES: [f64; 4] = [0.0, 0.5, 0.8, 1.0];
pub const DEFAULT_HERD_THRESHOLD: f64 = 0.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HerdError {
    #[error("band edges must start at 0, end at 1 and strictly increase; got {0:?}")]
    InvalidBandEdges(Vec<f64>),
    #[error("no author profiles to report on")]
    NoProfiles,
    #[error("score for unknown tweet {0:?}")]
    UnknownTweet(String),
    #[error("invalid camp configuration: {0}")]
    InvalidCamps(String),
    #[error("{scores} scores but {assignments} camp assignments")]
    LengthMismatch { scores: usize, assignments: usize },
    #[error("no camp signal")]
    NoCampSignal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuthorProfile {
    pub author_id: String,
    #[serde(serialize_with = "serialize_fixed6")]
    pub mean_subjectivity: f64,
    #[serde(serialize_with = "serialize_fixed6")]
    pub mean_polarity: f64,
    pub tweet_count: usize,
    #[serde(serialize_with = "serialize_fixed6")]
    pub local_clustering: f64,
}

/// One profile per author with at least one score, in order of the author's
/// first scored tweet. Authors missing from `graph` get clustering 0.
pub fn profile_authors(
    records: &[TweetRecord],
    scores: &[SentimentScore],
    graph: &SocialGraph,
) -> Result<Vec<AuthorProfile>, HerdError> {
    let author_of: HashMap<&str, &str> = records
        .iter()
        .map(|r| (r.tweet_id.as_str(), r.author_id.as_str()))
        .collect();

    let mut order: Vec<&str> = Vec::new();
    let mut sums: HashMap<&str, (f64, f64, usize)> = HashMap::new();
    for score in scores {
        let author = *author_of
            .get(score.tweet_id.as_str())
            .ok_or_else(|| HerdError::UnknownTweet(score.tweet_id.clone()))?;
        let entry = sums.entry(author).or_insert_with(|| {
            order.push(author);
            (0.0, 0.0, 0)
        });
        entry.0 += score.subjectivity;
        entry.1 += score.polarity;
        entry.2 += 1;
    }

    Ok(order
        .into_iter()
        .map(|author| {
            let (subj, pol, n) = sums[author];
            AuthorProfile {
                author_id: author.to_string(),
                mean_subjectivity: subj / n as f64,
                mean_polarity: pol / n as f64,
                tweet_count: n,
                local_clustering: local_clustering(graph, author).unwrap_or(0.0),
            }
        })
        .collect())
}

/// Validated subjectivity band boundaries partitioning `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandEdges(Vec<f64>);

impl BandEdges {
    pub fn new(edges: Vec<f64>) -> Result<Self, HerdError> {
        let ok = edges.len() >= 2
            && edges.first() == Some(&0.0)
            && edges.last() == Some(&1.0)
            && edges.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(BandEdges(edges))
        } else {
            Err(HerdError::InvalidBandEdges(edges))
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn band_count(&self) -> usize {
        self.0.len() - 1
    }

    /// Index of the band holding `s`: `[e_i, e_{i+1})`, last band closed at 1.
    pub fn band_of(&self, s: f64) -> usize {
        let last = self.band_count() - 1;
        (0..last).find(|&i| s < self.0[i + 1]).unwrap_or(last)
    }
}

impl Default for BandEdges {
    fn default() -> Self {
        BandEdges(DEFAULT_BAND_EDGES.to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Band {
    #[serde(serialize_with = "serialize_fixed6")]
    pub lower: f64,
    #[serde(serialize_with = "serialize_fixed6")]
    pub upper: f64,
    pub upper_inclusive: bool,
    pub authors: usize,
    #[serde(serialize_with = "serialize_fixed6")]
    pub mean_clustering: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HerdReport {
    pub bands: Vec<Band>,
    /// Mean local clustering over all profiled authors.
    #[serde(serialize_with = "serialize_fixed6")]
    pub global_mean_clustering: f64,
    #[serde(serialize_with = "serialize_fixed6")]
    pub herd_index: f64,
    #[serde(serialize_with = "serialize_fixed6")]
    pub herd_threshold: f64,
    pub herd_flag: bool,
}

/// Herd index = mean clustering of the top subjectivity band minus the mean
/// over every profiled author. An empty top band gives index 0 and no flag.
pub fn herd_report(
    profiles: &[AuthorProfile],
    edges: &BandEdges,
    threshold: f64,
) -> Result<HerdReport, HerdError> {
    if profiles.is_empty() {
        return Err(HerdError::NoProfiles);
    }
    let mut sums = vec![(0usize, 0.0f64); edges.band_count()];
    for p in profiles {
        let slot = &mut sums[edges.band_of(p.mean_subjectivity)];
        slot.0 += 1;
        slot.1 += p.local_clustering;
    }
    let e = edges.as_slice();
    let bands: Vec<Band> = sums
        .iter()
        .enumerate()
        .map(|(i, &(n, total))| Band {
            lower: e[i],
            upper: e[i + 1],
            upper_inclusive: i + 1 == edges.band_count(),
            authors: n,
            mean_clustering: if n == 0 { 0.0 } else { total / n as f64 },
        })
        .collect();

    let overall = profiles.iter().map(|p| p.local_clustering).sum::<f64>() / profiles.len() as f64;
    let top = bands.last().expect("at least one band");
    let (herd_index, herd_flag) = if top.authors == 0 {
        (0.0, false)
    } else {
        let index = top.mean_clustering - overall;
        (index, index > threshold)
    };
    Ok(HerdReport {
        bands,
        global_mean_clustering: overall,
        herd_index,
        herd_threshold: threshold,
        herd_flag,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Camp {
    pub id: String,
    pub keywords: BTreeSet<String>,
}

/// Keyword-defined camps, ordered by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampConfig {
    camps: Vec<Camp>,
}

impl CampConfig {
    pub fn new(camps: BTreeMap<String, Vec<String>>) -> Result<Self, HerdError> {
        let mut out = Vec::with_capacity(camps.len());
        for (id, words) in camps {
            if id.is_empty() {
                return Err(HerdError::InvalidCamps("empty camp id".into()));
            }
            if words.is_empty() {
                return Err(HerdError::InvalidCamps(format!("camp {id:?} has no keywords")));
            }
            if let Some(bad) = words.iter().find(|w| w.is_empty() || w.to_lowercase() != **w) {
                return Err(HerdError::InvalidCamps(format!(
                    "camp {id:?} keyword {bad:?} must be non-empty lowercase"
                )));
            }
            out.push(Camp {
                id,
                keywords: words.into_iter().collect(),
            });
        }
        Ok(CampConfig { camps: out })
    }

    pub fn camps(&self) -> &[Camp] {
        &self.camps
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CampAssignment {
    Camp(String),
    Unassigned,
    /// Two or more camps share the highest hit count.
    Tie,
}

impl CampAssignment {
    pub fn camp(&self) -> Option<&str> {
        match self {
            CampAssignment::Camp(id) => Some(id),
            _ => None,
        }
    }
}

/// Picks the camp with the most distinct keyword hits among the document's
/// tokens and the record's hashtags.
pub fn assign_camp(doc: &TokenDoc, record: &TweetRecord, camps: &CampConfig) -> CampAssignment {
    let terms: HashSet<&str> = doc
        .tokens
        .iter()
        .chain(&record.hashtags)
        .map(String::as_str)
        .collect();
    let mut best: Option<(&str, usize)> = None;
    let mut tied = false;
    for camp in &camps.camps {
        let hits = camp.keywords.iter().filter(|k| terms.contains(k.as_str())).count();
        if hits == 0 {
            continue;
        }
        match best {
            Some((_, top)) if hits < top => {}
            Some((_, top)) if hits == top => tied = true,
            _ => {
                best = Some((&camp.id, hits));
                tied = false;
            }
        }
    }
    match best {
        None => CampAssignment::Unassigned,
        Some(_) if tied => CampAssignment::Tie,
        Some((id, _)) => CampAssignment::Camp(id.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampResult {
    pub camp_id: String,
    pub tweets: usize,
    pub positive: usize,
    pub negative: usize,
    pub neutral: usize,
    pub positive_pct: String,
    pub negative_pct: String,
    pub neutral_pct: String,
    /// `(positive - negative) / tweets`; absent for camps without tweets.
    #[serde(serialize_with = "serialize_opt_fixed6")]
    pub support: Option<f64>,
}

impl CampResult {
    /// Orders two camps by support exactly, comparing the integer ratios
    /// by cross-multiplication.
    fn cmp_support(&self, other: &CampResult) -> Ordering {
        let lhs = (self.positive as i128 - self.negative as i128) * other.tweets as i128;
        let rhs = (other.positive as i128 - other.negative as i128) * self.tweets as i128;
        lhs.cmp(&rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedCamp {
    pub rank: usize,
    pub camp_id: String,
    #[serde(serialize_with = "serialize_fixed6")]
    pub support: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionReport {
    /// Per-camp tallies in configuration order.
    pub camps: Vec<CampResult>,
    /// Camps with at least one tweet, best support first. Equal support
    /// shares a rank.
    pub ranking: Vec<RankedCamp>,
    pub winner: Option<String>,
    pub undecided: bool,
    #[serde(serialize_with = "serialize_opt_fixed6")]
    pub margin: Option<f64>,
    /// Fewer than two camps received any tweets.
    pub degenerate: bool,
    pub unassigned_tweets: usize,
    pub tied_tweets: usize,
    #[serde(serialize_with = "serialize_opt_fixed6")]
    pub herd_index: Option<f64>,
    pub herd_flag: Option<bool>,
}

/// Ranks camps by support score. The herd report only travels along as
/// context; it never changes a support score.
pub fn predict(
    scores: &[SentimentScore],
    assignments: &[CampAssignment],
    camps: &CampConfig,
    herd: Option<&HerdReport>,
) -> Result<PredictionReport, HerdError> {
    if scores.len() != assignments.len() {
        return Err(HerdError::LengthMismatch {
            scores: scores.len(),
            assignments: assignments.len(),
        });
    }
    let mut counts: BTreeMap<&str, [usize; 3]> =
        camps.camps.iter().map(|c| (c.id.as_str(), [0; 3])).collect();
    let (mut unassigned, mut tied) = (0, 0);
    for (score, assignment) in scores.iter().zip(assignments) {
        match assignment {
            CampAssignment::Camp(id) => {
                if let Some(c) = counts.get_mut(id.as_str()) {
                    let slot = match score.label {
                        Label::Positive => 0,
                        Label::Negative => 1,
                        Label::Neutral => 2,
                    };
                    c[slot] += 1;
                } else {
                    unassigned += 1;
                }
            }
            CampAssignment::Unassigned => unassigned += 1,
            CampAssignment::Tie => tied += 1,
        }
    }

    let results: Vec<CampResult> = camps
        .camps
        .iter()
        .map(|camp| {
            let [positive, negative, neutral] = counts[camp.id.as_str()];
            let tweets = positive + negative + neutral;
            CampResult {
                camp_id: camp.id.clone(),
                tweets,
                positive,
                negative,
                neutral,
                positive_pct: truncated_percent(positive, tweets),
                negative_pct: truncated_percent(negative, tweets),
                neutral_pct: truncated_percent(neutral, tweets),
                support: (tweets > 0)
                    .then(|| (positive as f64 - negative as f64) / tweets as f64),
            }
        })
        .collect();

    let mut active: Vec<&CampResult> = results.iter().filter(|r| r.tweets > 0).collect();
    if active.is_empty() {
        return Err(HerdError::NoCampSignal);
    }
    active.sort_by(|a, b| b.cmp_support(a));
    let ranking: Vec<RankedCamp> = active
        .iter()
        .map(|r| RankedCamp {
            rank: 1 + active.iter().filter(|o| o.cmp_support(r) == Ordering::Greater).count(),
            camp_id: r.camp_id.clone(),
            support: r.support.expect("active camps have support"),
        })
        .collect();

    let leaders = ranking.iter().filter(|r| r.rank == 1).count();
    let undecided = leaders > 1;
    let winner = (!undecided).then(|| ranking[0].camp_id.clone());
    let margin = if undecided {
        Some(0.0)
    } else {
        ranking.get(1).map(|r| ranking[0].support - r.support)
    };

    Ok(PredictionReport {
        degenerate: active.len() < 2,
        camps: results,
        ranking,
        winner,
        undecided,
        margin,
        unassigned_tweets: unassigned,
        tied_tweets: tied,
        herd_index: herd.map(|h| h.herd_index),
        herd_flag: herd.map(|h| h.herd_flag),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(id: &str, subjectivity: f64, clustering: f64) -> AuthorProfile {
        AuthorProfile {
            author_id: id.into(),
            mean_subjectivity: subjectivity,
            mean_polarity: 0.0,
            tweet_count: 1,
            local_clustering: clustering,
        }
    }

    fn record(id: &str, author: &str, hashtags: &[&str]) -> TweetRecord {
        TweetRecord {
            tweet_id: id.into(),
            author_id: author.into(),
            text: String::new(),
            timestamp: chrono::DateTime::from_timestamp(0, 0).unwrap(),
            hashtags: hashtags.iter().map(|h| h.to_string()).collect(),
            mentions: vec![],
            retweet_of: None,
            follower_count: 0,
        }
    }

    fn score(id: &str, polarity: f64, subjectivity: f64) -> SentimentScore {
        SentimentScore {
            tweet_id: id.into(),
            polarity,
            subjectivity,
            label: Label::from_polarity(polarity),
            matched_terms: 1,
        }
    }

    fn doc(tokens: &[&str]) -> TokenDoc {
        TokenDoc {
            tweet_id: "t".into(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            raw_length: 0,
        }
    }

    fn xy() -> CampConfig {
        CampConfig::new(BTreeMap::from([
            ("X".to_string(), vec!["partyx".to_string()]),
            ("Y".to_string(), vec!["partyy".to_string()]),
        ]))
        .unwrap()
    }

    #[test]
    fn profiles_average_per_author() {
        let records = [record("t1", "a", &[]), record("t2", "a", &[]), record("t3", "b", &[])];
        let scores = [score("t1", 0.2, 0.4), score("t2", -0.4, 0.8), score("t3", 0.5, 0.3)];
        let g = SocialGraph::from_edges([("b", "c")]);
        let profiles = profile_authors(&records, &scores, &g).unwrap();
        assert_eq!(profiles.len(), 2);
        assert_eq!(profiles[0].author_id, "a");
        assert!((profiles[0].mean_subjectivity - 0.6).abs() < 1e-15);
        assert!((profiles[0].mean_polarity - -0.1).abs() < 1e-15);
        assert_eq!(profiles[0].tweet_count, 2);
        // absent from the graph
        assert_eq!(profiles[0].local_clustering, 0.0);
        assert_eq!(profiles[1].mean_subjectivity, 0.3);
        assert_eq!(profiles[1].mean_polarity, 0.5);

        let err = profile_authors(&records, &[score("zz", 0.0, 0.0)], &g).unwrap_err();
        assert_eq!(err, HerdError::UnknownTweet("zz".into()));
    }

    #[test]
    fn band_edges_validation() {
        assert!(BandEdges::new(vec![0.0, 0.5, 0.8, 1.0]).is_ok());
        assert!(BandEdges::new(vec![0.0, 1.0]).is_ok());
        for bad in [vec![], vec![0.0], vec![0.1, 1.0], vec![0.0, 0.9], vec![0.0, 0.5, 0.5, 1.0], vec![0.0, 0.6, 0.4, 1.0]] {
            assert!(BandEdges::new(bad).is_err());
        }
        let e = BandEdges::default();
        assert_eq!(e.band_of(0.0), 0);
        assert_eq!(e.band_of(0.4999), 0);
        assert_eq!(e.band_of(0.5), 1);
        assert_eq!(e.band_of(0.8), 2);
        assert_eq!(e.band_of(1.0), 2);
    }

    #[test]
    fn herd_all_in_top_band() {
        let ps = [profile("a", 0.9, 1.0), profile("b", 0.85, 1.0)];
        let r = herd_report(&ps, &BandEdges::default(), 0.0).unwrap();
        assert_eq!(r.herd_index, 0.0);
        assert!(!r.herd_flag);
    }

    #[test]
    fn herd_top_band_above_average() {
        let ps = [profile("a", 0.9, 1.0), profile("b", 0.2, 0.0), profile("c", 0.6, 0.0)];
        let r = herd_report(&ps, &BandEdges::default(), 0.0).unwrap();
        assert!((r.herd_index - 2.0 / 3.0).abs() < 1e-15);
        assert!(r.herd_flag);
        assert_eq!(r.bands.iter().map(|b| b.authors).collect::<Vec<_>>(), [1, 1, 1]);
        assert!(r.bands[2].upper_inclusive && !r.bands[1].upper_inclusive);
    }

    #[test]
    fn herd_empty_top_band() {
        let ps = [profile("a", 0.1, 1.0), profile("b", 0.79, 0.0)];
        let r = herd_report(&ps, &BandEdges::default(), -0.5).unwrap();
        assert_eq!(r.herd_index, 0.0);
        assert!(!r.herd_flag);
        assert_eq!(herd_report(&[], &BandEdges::default(), 0.0), Err(HerdError::NoProfiles));
    }

    #[test]
    fn camp_config_validation() {
        let bad = |id: &str, words: &[&str]| {
            CampConfig::new(BTreeMap::from([(id.to_string(), words.iter().map(|w| w.to_string()).collect())])).is_err()
        };
        assert!(bad("X", &[]));
        assert!(bad("X", &["PartyX"]));
        assert!(bad("", &["x"]));
        assert!(bad("X", &[""]));
    }

    #[test]
    fn assign_camp_examples() {
        let r = record("t", "a", &[]);
        assert_eq!(assign_camp(&doc(&["vote", "partyx"]), &r, &xy()), CampAssignment::Camp("X".into()));
        assert_eq!(assign_camp(&doc(&["vote"]), &r, &xy()), CampAssignment::Unassigned);
        assert_eq!(assign_camp(&doc(&["partyx", "partyy"]), &r, &xy()), CampAssignment::Tie);
        // hashtags count, repeated tokens do not
        let r = record("t", "a", &["partyy"]);
        assert_eq!(assign_camp(&doc(&["partyx", "partyx"]), &r, &xy()), CampAssignment::Tie);
    }

    fn camp_scores(spec: &[(&str, usize, usize, usize)]) -> (Vec<SentimentScore>, Vec<CampAssignment>) {
        let mut scores = Vec::new();
        let mut assignments = Vec::new();
        for &(camp, pos, neg, neu) in spec {
            for (n, p) in [(pos, 0.5), (neg, -0.5), (neu, 0.0)] {
                for _ in 0..n {
                    scores.push(score(&format!("t{}", scores.len()), p, 0.5));
                    assignments.push(CampAssignment::Camp(camp.to_string()));
                }
            }
        }
        (scores, assignments)
    }

    #[test]
    fn predict_clear_winner() {
        let (s, a) = camp_scores(&[("X", 5, 1, 4), ("Y", 3, 3, 4)]);
        let r = predict(&s, &a, &xy(), None).unwrap();
        assert_eq!(r.winner.as_deref(), Some("X"));
        assert_eq!(r.camps[0].support, Some(0.4));
        assert_eq!(r.camps[1].support, Some(0.0));
        assert_eq!(r.margin, Some(0.4));
        assert_eq!(r.camps[0].positive_pct, "50.00");
        assert!(!r.degenerate && !r.undecided);
    }

    #[test]
    fn predict_all_neutral_is_undecided() {
        let (s, a) = camp_scores(&[("X", 0, 0, 3), ("Y", 0, 0, 5)]);
        let r = predict(&s, &a, &xy(), None).unwrap();
        assert!(r.undecided);
        assert_eq!(r.winner, None);
        assert!(r.ranking.iter().all(|c| c.rank == 1));
        assert_eq!(r.margin, Some(0.0));
    }

    #[test]
    fn predict_single_camp_is_degenerate() {
        let (s, a) = camp_scores(&[("Y", 2, 1, 0)]);
        let r = predict(&s, &a, &xy(), None).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.ranking.len(), 1);
        assert_eq!(r.winner.as_deref(), Some("Y"));
        assert_eq!(r.margin, None);
        assert_eq!(r.camps[0].support, None);
    }

    #[test]
    fn predict_without_signal_fails() {
        let s = [score("t1", 0.5, 0.5), score("t2", 0.5, 0.5)];
        let a = [CampAssignment::Unassigned, CampAssignment::Tie];
        assert_eq!(predict(&s, &a, &xy(), None), Err(HerdError::NoCampSignal));
        assert!(matches!(
            predict(&s, &a[..1], &xy(), None),
            Err(HerdError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn herd_context_does_not_move_support() {
        let (s, a) = camp_scores(&[("X", 5, 1, 4), ("Y", 3, 3, 4)]);
        let herd = herd_report(&[profile("a", 0.9, 1.0), profile("b", 0.1, 0.0)], &BandEdges::default(), 0.0).unwrap();
        let with = predict(&s, &a, &xy(), Some(&herd)).unwrap();
        let without = predict(&s, &a, &xy(), None).unwrap();
        assert_eq!(with.camps, without.camps);
        assert_eq!(with.ranking, without.ranking);
        assert_eq!(with.herd_index, Some(0.5));
        assert_eq!(with.herd_flag, Some(true));
    }
}
