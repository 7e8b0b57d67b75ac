//! Finite simple graphs with exact cut analysis.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratlin::rat_string;
use crate::scalar::Scalar;
use crate::Rational;

/// Largest vertex count accepted by [`Graph::expansion_bruteforce`].
pub const MAX_BRUTEFORCE_VERTICES: usize = 26;

/// Separator between factor labels in product graphs.
pub const PRODUCT_SEPARATOR: char = '|';

/// An undirected simple graph on vertices `0..n` with string labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    /// Sorted, each pair with `i < j`.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    labels: Vec<String>,
    edges: Vec<[usize; 2]>,
}

/// One side of a cut and its boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutReport {
    /// Vertex indices of `S`, ascending.
    pub subset: Vec<usize>,
    /// Edges with exactly one endpoint in `S`.
    pub boundary_size: usize,
    /// `|S|`
    pub subset_size: usize,
    /// `boundary_size / min(|S|, n - |S|)`
    #[serde(with = "rat_string")]
    pub ratio: Rational,
}

impl Graph {
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::NotSimple(format!("loop at {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::NotSimple(format!("duplicate edge {{{a}, {b}}}")));
            }
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::NotSimple("duplicate vertex labels".into()));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Self { labels, edges, adj })
    }

    /// Graph with labels `"0"`, `"1"`, ...
    pub fn unlabeled(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::unlabeled(n, edges).expect("complete graph is simple")
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::unlabeled(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::unlabeled(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    /// The graph of `[0,1]^d`. Vertex `v` has coordinate `i` equal to bit
    /// `i` of `v`; its label lists the coordinates in order, e.g. `"010"`.
    pub fn hypercube(d: usize) -> Self {
        let n = 1usize << d;
        let labels = (0..n).map(|v| cube_label(v, d)).collect();
        let edges = (0..n).flat_map(|v| {
            (0..d)
                .filter(move |&i| v & (1 << i) == 0)
                .map(move |i| (v, v | (1 << i)))
        });
        Self::new(labels, edges).expect("hypercube is simple")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Subgraph induced by `keep` (ascending indices are renumbered in order).
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n()];
        for (k, &v) in keep.iter().enumerate() {
            pos[v] = k;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|&(a, b)| (pos[a], pos[b]));
        Self::new(labels, edges).expect("induced subgraph is simple")
    }

    /// Disjoint union; labels of the parts are prefixed by `prefixes`.
    pub fn disjoint_union(parts: &[(String, Graph)]) -> Self {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for (prefix, g) in parts {
            let off = labels.len();
            labels.extend(g.labels.iter().map(|l| format!("{prefix}{l}")));
            edges.extend(g.edges.iter().map(|&(a, b)| (a + off, b + off)));
        }
        Self::new(labels, edges).expect("disjoint union is simple")
    }

    /// Connected components as ascending vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn subset_mask(&self, s: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n()];
        for &v in s {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange { index: v, n: self.n() });
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// `|∂S| / min(|S|, |V \ S|)` for a nonempty proper subset `S`.
    pub fn cut_ratio(&self, s: &[usize]) -> Result<CutReport> {
        let mask = self.subset_mask(s)?;
        let size = mask.iter().filter(|&&b| b).count();
        if size == 0 || size == self.n() {
            return Err(Error::DegenerateCut);
        }
        let boundary = self.edges.iter().filter(|&&(a, b)| mask[a] != mask[b]).count();
        let denom = size.min(self.n() - size);
        Ok(CutReport {
            subset: (0..self.n()).filter(|&v| mask[v]).collect(),
            boundary_size: boundary,
            subset_size: size,
            ratio: Rational::from_frac(boundary as i64, denom as i64),
        })
    }

    /// Exact edge expansion by enumerating every subset of size at most `n/2`.
    ///
    /// Returns the minimum ratio and, among minimizing cuts, the one whose
    /// ascending vertex list is lexicographically smallest.
    pub fn expansion_bruteforce(&self) -> Result<(Rational, CutReport)> {
        let n = self.n();
        if n > MAX_BRUTEFORCE_VERTICES {
            return Err(Error::TooLarge {
                size: n,
                limit: MAX_BRUTEFORCE_VERTICES,
            });
        }
        if n < 2 {
            return Err(Error::OutOfRange {
                what: "vertex count",
                value: n,
                min: 2,
                max: MAX_BRUTEFORCE_VERTICES,
            });
        }
        let adj: Vec<u32> = self
            .adj
            .iter()
            .map(|l| l.iter().fold(0u32, |m, &w| m | (1 << w)))
            .collect();
        let high_bits = n.min(6);
        let low_bits = n - high_bits;
        let best = (0u32..(1 << high_bits))
            .into_par_iter()
            .filter_map(|chunk| scan_chunk(&adj, n, chunk << low_bits, low_bits))
            .reduce_with(|a, b| if better(&b, &a) { b } else { a })
            .expect("n ≥ 2 has a valid cut");
        let subset: Vec<usize> = (0..n).filter(|&v| best.mask & (1 << v) != 0).collect();
        let report = self.cut_ratio(&subset)?;
        debug_assert_eq!(report.boundary_size as u64, best.boundary);
        Ok((report.ratio.clone(), report))
    }

    /// Checks that `map` (vertex `v` of `self` ↦ `map[v]` of `other`) is a
    /// bijection carrying edges exactly onto edges.
    pub fn is_isomorphic_via(&self, other: &Graph, map: &[usize]) -> Result<bool> {
        if map.len() != self.n() || self.n() != other.n() {
            return Err(Error::NotBijective(format!(
                "map of length {} between graphs of order {} and {}",
                map.len(),
                self.n(),
                other.n()
            )));
        }
        let mut hit = vec![false; other.n()];
        for &w in map {
            if w >= other.n() || std::mem::replace(&mut hit[w], true) {
                return Err(Error::NotBijective(format!("target {w} repeated or out of range")));
            }
        }
        if self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.edges.iter().all(|&(a, b)| other.has_edge(map[a], map[b])))
    }

    fn to_raw(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("graph serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.labels.len() != raw.n {
            return Err(Error::Parse(format!(
                "{} labels for n = {}",
                raw.labels.len(),
                raw.n
            )));
        }
        Self::new(raw.labels, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }

    /// Undirected DOT with labels as node names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  \"{}\";", escape(l));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                escape(&self.labels[a]),
                escape(&self.labels[b])
            );
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub(crate) fn cube_label(v: usize, d: usize) -> String {
    (0..d).map(|i| if v & (1 << i) != 0 { '1' } else { '0' }).collect()
}

/// Cartesian product `g × h`. Vertex `(a, b)` has index `a·n_h + b` and
/// label `"{label_a}|{label_b}"`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let idx = |a: usize, b: usize| a * nh + b;
    let labels = g
        .labels
        .iter()
        .flat_map(|la| h.labels.iter().map(move |lb| format!("{la}{PRODUCT_SEPARATOR}{lb}")))
        .collect();
    let mut edges = Vec::with_capacity(g.n() * h.edge_count() + nh * g.edge_count());
    for a in 0..g.n() {
        for &(b1, b2) in &h.edges {
            edges.push((idx(a, b1), idx(a, b2)));
        }
    }
    for &(a1, a2) in &g.edges {
        for b in 0..nh {
            edges.push((idx(a1, b), idx(a2, b)));
        }
    }
    Graph::new(labels, edges).expect("product of simple graphs is simple")
}

#[derive(Clone, Copy, Debug)]
struct Best {
    boundary: u64,
    size: u64,
    mask: u32,
}

fn better(a: &Best, b: &Best) -> bool {
    let lhs = a.boundary * b.size;
    let rhs = b.boundary * a.size;
    lhs < rhs || (lhs == rhs && lex_less(a.mask, b.mask))
}

/// Compares the ascending vertex lists of two subsets lexicographically.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let v = diff.trailing_zeros();
    let above = |m: u32| v < 31 && m >> (v + 1) != 0;
    if a & (1 << v) != 0 {
        above(b)
    } else {
        !above(a)
    }
}

/// Gray-code scan over all masks `base | low` with `low < 2^low_bits`.
fn scan_chunk(adj: &[u32], n: usize, base: u32, low_bits: usize) -> Option<Best> {
    let half = (n / 2) as u32;
    let mut mask = base;
    let mut size = mask.count_ones();
    let mut boundary: i64 = (0..n)
        .filter(|&v| mask & (1 << v) != 0)
        .map(|v| (adj[v] & !mask).count_ones() as i64)
        .sum();
    let mut best: Option<Best> = None;
    let consider = |mask: u32, size: u32, boundary: i64, best: &mut Option<Best>| {
        if size == 0 || size > half {
            return;
        }
        let cand = Best {
            boundary: boundary as u64,
            size: size as u64,
            mask,
        };
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            *best = Some(cand);
        }
    };
    consider(mask, size, boundary, &mut best);
    for k in 1u32..(1u32 << low_bits) {
        let v = k.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let inside = (adj[v] & mask).count_ones() as i64;
        let deg = adj[v].count_ones() as i64;
        if mask & bit == 0 {
            mask |= bit;
            size += 1;
            boundary += deg - 2 * inside;
        } else {
            mask &= !bit;
            size -= 1;
            boundary -= deg - 2 * inside;
        }
        consider(mask, size, boundary, &mut best);
    }
    best
}
