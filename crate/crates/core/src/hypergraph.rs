//! n-uniform hypergraphs: validation, generators and the text format.
//!
//! The text format is line oriented. The first non-comment line is
//! `v n m` (vertex count, uniformity, edge count), followed by `m` lines of
//! `n` space separated vertex ids. Lines starting with `#` are comments.

use std::collections::HashSet;
use std::fmt::Write as _;

use itertools::Itertools;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial_u128;
use crate::error::{invalid, Error, Result};

/// An n-uniform hypergraph on vertices `0..vertex_count`.
///
/// Vertices inside an edge are kept sorted. Edge order is preserved as
/// given; repeated edges are legal (see [`Hypergraph::duplicate_edges`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    vertex_count: usize,
    uniformity: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new<E, I>(vertex_count: usize, uniformity: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if uniformity == 0 {
            return Err(invalid("uniformity must be at least 1"));
        }
        let mut out = Vec::new();
        for (idx, edge) in edges.into_iter().enumerate() {
            let mut e: Vec<usize> = edge.into_iter().collect();
            if let Some(&vertex) = e.iter().find(|&&x| x >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    edge: idx,
                    vertex,
                    vertex_count,
                });
            }
            e.sort_unstable();
            e.dedup();
            if e.len() != uniformity {
                return Err(Error::EdgeSizeMismatch {
                    edge: idx,
                    expected: uniformity,
                    found: e.len(),
                });
            }
            out.push(e);
        }
        Ok(Hypergraph {
            vertex_count,
            uniformity,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &[usize] {
        &self.edges[idx]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// For each vertex, the indices of the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Pairs `(i, j)`, `i < j`, of edges with the same vertex set.
    pub fn duplicate_edges(&self) -> Vec<(usize, usize)> {
        let mut first_seen = std::collections::HashMap::new();
        let mut dups = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            match first_seen.get(e) {
                Some(&j) => dups.push((j, i)),
                None => {
                    first_seen.insert(e, i);
                }
            }
        }
        dups
    }

    /// Same hypergraph with edges sorted lexicographically.
    pub fn canonical(&self) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.sort();
        Hypergraph { edges, ..self.clone() }
    }

    /// Edges as bit masks; only valid for `vertex_count <= 64`.
    pub(crate) fn edge_masks(&self) -> Vec<u64> {
        debug_assert!(self.vertex_count <= 64);
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect()
    }
}

/// Parses the hypergraph text format.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing header line `v n m`".into(),
    })?;
    let nums = parse_numbers(hline, header)?;
    let [v, n, m] = nums[..] else {
        return Err(Error::Parse {
            line: hline,
            reason: format!("header needs 3 integers, found {}", nums.len()),
        });
    };
    if n == 0 {
        return Err(Error::Parse {
            line: hline,
            reason: "uniformity must be at least 1".into(),
        });
    }

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines.by_ref() {
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                reason: format!("more than the declared {m} edges"),
            });
        }
        let e = parse_numbers(line, body)?;
        if e.len() != n {
            return Err(Error::Parse {
                line,
                reason: format!("edge has {} vertices, expected {n}", e.len()),
            });
        }
        if let Some(&x) = e.iter().find(|&&x| x >= v) {
            return Err(Error::Parse {
                line,
                reason: format!("vertex {x} out of range (v = {v})"),
            });
        }
        if e.iter().duplicates().next().is_some() {
            return Err(Error::Parse {
                line,
                reason: "repeated vertex within an edge".into(),
            });
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            reason: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    Hypergraph::new(v, n, edges)
}

fn parse_numbers(line: usize, body: &str) -> Result<Vec<usize>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                reason: format!("`{tok}` is not a nonnegative integer"),
            })
        })
        .collect()
}

/// Writes the canonical text form (sorted vertices, sorted edges).
pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let c = h.canonical();
    let mut s = format!("{} {} {}\n", c.vertex_count, c.uniformity, c.edges.len());
    for e in &c.edges {
        let _ = writeln!(s, "{}", e.iter().join(" "));
    }
    s
}

/// All `C(v, n)` n-subsets of `0..v`, in lexicographic order.
pub fn gen_complete_uniform(v: usize, n: usize) -> Result<Hypergraph> {
    if n == 0 || v < n {
        return Err(invalid(format!(
            "complete hypergraph needs v >= n >= 1, got v = {v}, n = {n}"
        )));
    }
    Hypergraph::new(v, n, (0..v).combinations(n))
}

/// The 2-uniform cycle `0 - 1 - ... - (v-1) - 0`.
pub fn gen_cycle(v: usize) -> Result<Hypergraph> {
    if v < 3 {
        return Err(invalid(format!("cycle needs at least 3 vertices, got {v}")));
    }
    Hypergraph::new(v, 2, (0..v).map(|i| [i, (i + 1) % v]))
}

/// `m` uniformly random n-subsets of `0..v`, drawn independently.
///
/// With `distinct`, draws are rejection-sampled until `m` different edges
/// have been collected, which requires `m <= C(v, n)`.
pub fn gen_random_uniform(v: usize, n: usize, m: usize, seed: u64, distinct: bool) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_random_uniform_with(v, n, m, distinct, &mut rng)
}

/// [`gen_random_uniform`] drawing from a caller-supplied generator.
pub fn gen_random_uniform_with<R: rand::Rng>(
    v: usize,
    n: usize,
    m: usize,
    distinct: bool,
    rng: &mut R,
) -> Result<Hypergraph> {
    if n == 0 || v < n {
        return Err(invalid(format!(
            "random hypergraph needs v >= n >= 1, got v = {v}, n = {n}"
        )));
    }
    if distinct {
        let total = binomial_u128(v as u64, n as u64);
        if total.is_some_and(|t| (m as u128) > t) {
            return Err(invalid(format!("cannot draw {m} distinct {n}-sets from {v} vertices")));
        }
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    while edges.len() < m {
        let mut e = index::sample(rng, v, n).into_vec();
        e.sort_unstable();
        if distinct && !seen.insert(e.clone()) {
            continue;
        }
        edges.push(e);
    }
    Hypergraph::new(v, n, edges)
}
