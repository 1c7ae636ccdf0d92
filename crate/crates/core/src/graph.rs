//! Undirected interaction graph over authors and its clustering measures.
//!
//! Nodes are kept in lexicographic order of their author ids and every
//! adjacency list is sorted, so all counting below works on sorted merges
//! and every derived output is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::Corpus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("graph has no nodes")]
    Empty,
}

/// Simple undirected graph keyed by author id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SocialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl SocialGraph {
    /// Builds a graph from explicit nodes and edges. Edge endpoints are added
    /// as nodes; self-loops are dropped and parallel edges collapsed.
    pub fn from_parts<N, E, S>(nodes: N, edges: E) -> Self
    where
        N: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut names: BTreeSet<String> = nodes.into_iter().map(|n| n.as_ref().to_string()).collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            names.insert(a.to_string());
            names.insert(b.to_string());
            if a != b {
                pairs.push((a.to_string(), b.to_string()));
            }
        }
        let names: Vec<String> = names.into_iter().collect();
        let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut adjacency = vec![Vec::new(); names.len()];
        for (a, b) in &pairs {
            let (ia, ib) = (index[a], index[b]);
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        SocialGraph {
            names,
            index,
            adjacency,
        }
    }

    pub fn from_edges<E, S>(edges: E) -> Self
    where
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        Self::from_parts(std::iter::empty::<S>(), edges)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, node: &str) -> bool {
        self.index.contains_key(node)
    }

    /// Node ids in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn degree(&self, node: &str) -> Option<usize> {
        self.index.get(node).map(|&i| self.adjacency[i].len())
    }

    pub fn neighbors(&self, node: &str) -> Option<impl Iterator<Item = &str>> {
        let &i = self.index.get(node)?;
        Some(self.adjacency[i].iter().map(|&j| self.names[j].as_str()))
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.adjacency[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Every edge once as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.adjacency.iter().enumerate().flat_map(move |(i, list)| {
            list.iter()
                .filter(move |&&j| j > i)
                .map(move |&j| (self.names[i].as_str(), self.names[j].as_str()))
        })
    }

    /// Tab-separated edge list, one undirected edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.edges() {
            let _ = writeln!(out, "{a}\t{b}");
        }
        out
    }

    fn node_index(&self, node: &str) -> Result<usize, GraphError> {
        self.index
            .get(node)
            .copied()
            .ok_or_else(|| GraphError::UnknownNode(node.to_string()))
    }

    /// Number of edges among the neighbors of node `v`.
    fn neighbor_edges_at(&self, v: usize) -> u64 {
        let nv = &self.adjacency[v];
        let twice: u64 = nv
            .iter()
            .map(|&u| sorted_intersection_count(&self.adjacency[u], nv))
            .sum();
        twice / 2
    }

    fn local_clustering_at(&self, v: usize) -> f64 {
        let k = self.adjacency[v].len() as u64;
        if k < 2 {
            return 0.0;
        }
        (2 * self.neighbor_edges_at(v)) as f64 / (k * (k - 1)) as f64
    }
}

fn sorted_intersection_count(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Authors, mention targets and retweet targets become nodes; a mention or a
/// retweet adds an undirected edge between the two authors.
pub fn build_graph(corpus: &Corpus) -> SocialGraph {
    let nodes = corpus.records.iter().map(|r| r.author_id.as_str());
    let edges = corpus
        .records
        .iter()
        .flat_map(|r| r.interaction_targets().map(move |t| (r.author_id.as_str(), t)));
    SocialGraph::from_parts(nodes, edges)
}

/// Number of edges among the neighbors of `node`.
pub fn neighbor_edge_count(g: &SocialGraph, node: &str) -> Result<u64, GraphError> {
    Ok(g.neighbor_edges_at(g.node_index(node)?))
}

/// `2 E_v / (k_v (k_v - 1))`, or 0 when `k_v < 2`.
pub fn local_clustering(g: &SocialGraph, node: &str) -> Result<f64, GraphError> {
    Ok(g.local_clustering_at(g.node_index(node)?))
}

/// Number of distinct triangles.
pub fn triangle_count(g: &SocialGraph) -> u64 {
    (0..g.node_count())
        .into_par_iter()
        .map(|u| {
            let nu = &g.adjacency[u];
            let above_u = &nu[nu.partition_point(|&x| x <= u)..];
            above_u
                .iter()
                .map(|&v| {
                    let nv = &g.adjacency[v];
                    let nu_above_v = &above_u[above_u.partition_point(|&x| x <= v)..];
                    let nv_above_v = &nv[nv.partition_point(|&x| x <= v)..];
                    sorted_intersection_count(nu_above_v, nv_above_v)
                })
                .sum::<u64>()
        })
        .sum()
}

/// Connected triples (paths of length two), counted once per center node.
pub fn triple_count(g: &SocialGraph) -> u64 {
    g.adjacency
        .iter()
        .map(|l| {
            let k = l.len() as u64;
            k * k.saturating_sub(1) / 2
        })
        .sum()
}

/// Transitivity: `3 * triangles / connected triples`, 0 when there are no triples.
pub fn global_clustering(g: &SocialGraph) -> f64 {
    let triples = triple_count(g);
    if triples == 0 {
        return 0.0;
    }
    (3 * triangle_count(g)) as f64 / triples as f64
}

fn local_values(g: &SocialGraph) -> Vec<f64> {
    (0..g.node_count())
        .into_par_iter()
        .map(|v| g.local_clustering_at(v))
        .collect()
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Arithmetic mean of the local coefficients over all nodes.
pub fn mean_clustering(g: &SocialGraph) -> Result<f64, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    Ok(mean(&local_values(g)))
}

fn curve_from(g: &SocialGraph, locals: &[f64]) -> Vec<(usize, f64)> {
    let mut by_degree: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (v, &c) in locals.iter().enumerate() {
        by_degree.entry(g.adjacency[v].len()).or_default().push(c);
    }
    by_degree.into_iter().map(|(k, cs)| (k, mean(&cs))).collect()
}

/// Mean local coefficient per distinct degree, ascending by degree.
pub fn ck_curve(g: &SocialGraph) -> Vec<(usize, f64)> {
    curve_from(g, &local_values(g))
}

/// Number of nodes per degree, ascending by degree.
pub fn degree_distribution(g: &SocialGraph) -> BTreeMap<usize, usize> {
    let mut dist = BTreeMap::new();
    for list in &g.adjacency {
        *dist.entry(list.len()).or_insert(0) += 1;
    }
    dist
}

/// Everything the report needs from the graph, computed in one pass over
/// the local coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringStats {
    pub local: BTreeMap<String, f64>,
    pub degree: BTreeMap<String, usize>,
    pub mean_clustering: f64,
    pub global_clustering: f64,
    pub triangles: u64,
    pub triples: u64,
    pub ck_curve: Vec<(usize, f64)>,
}

pub fn clustering_stats(g: &SocialGraph) -> ClusteringStats {
    let locals = local_values(g);
    let triangles = triangle_count(g);
    let triples = triple_count(g);
    ClusteringStats {
        local: g.names.iter().cloned().zip(locals.iter().copied()).collect(),
        degree: g
            .names
            .iter()
            .cloned()
            .zip(g.adjacency.iter().map(Vec::len))
            .collect(),
        mean_clustering: if locals.is_empty() { 0.0 } else { mean(&locals) },
        global_clustering: if triples == 0 {
            0.0
        } else {
            (3 * triangles) as f64 / triples as f64
        },
        triangles,
        triples,
        ck_curve: curve_from(g, &locals),
    }
}
