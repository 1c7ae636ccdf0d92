//! Brute-force clustering oracles over an adjacency matrix. Deliberately
//! naive and independent of the library's sorted-merge counting.

#![allow(dead_code)]

use rand::Rng;

/// Dense undirected simple graph on nodes `0..n`.
pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(p) {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        Dense { n, adj }
    }

    pub fn name(i: usize) -> String {
        format!("n{i:03}")
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adj[i][j] {
                    out.push((Self::name(i), Self::name(j)));
                }
            }
        }
        out
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.n).map(Self::name).collect()
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.adj[v].iter().filter(|&&b| b).count() as u64
    }

    /// Edges among the neighbors of `v`, by checking every neighbor pair.
    pub fn neighbor_pair_edges(&self, v: usize) -> u64 {
        let nbrs: Vec<usize> = (0..self.n).filter(|&u| self.adj[v][u]).collect();
        let mut e = 0;
        for a in 0..nbrs.len() {
            for b in (a + 1)..nbrs.len() {
                if self.adj[nbrs[a]][nbrs[b]] {
                    e += 1;
                }
            }
        }
        e
    }

    pub fn local(&self, v: usize) -> f64 {
        let k = self.degree(v);
        if k < 2 {
            return 0.0;
        }
        (2 * self.neighbor_pair_edges(v)) as f64 / (k * (k - 1)) as f64
    }

    /// `(closed, connected)` triples from enumerating every node triple:
    /// a triangle contributes three closed triples, a two-edge path one.
    pub fn triple_census(&self) -> (u64, u64) {
        let (mut closed, mut open) = (0u64, 0u64);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in (j + 1)..self.n {
                    let e = self.adj[i][j] as u8 + self.adj[j][k] as u8 + self.adj[i][k] as u8;
                    match e {
                        3 => closed += 3,
                        2 => open += 1,
                        _ => {}
                    }
                }
            }
        }
        (closed, closed + open)
    }

    pub fn global(&self) -> f64 {
        let (closed, connected) = self.triple_census();
        if connected == 0 {
            0.0
        } else {
            closed as f64 / connected as f64
        }
    }
}
