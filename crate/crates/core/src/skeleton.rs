//! Vertices and edges of the convex hull of a finite point set, decided by
//! exact LP membership tests.
//!
//! A point is a vertex iff it is not a convex combination of the others.
//! Two vertices span an edge iff every convex combination of the points
//! that equals their midpoint is supported on the pair alone. Asking only
//! whether the midpoint lies in the hull of the remaining points is not
//! enough: the diagonal of a pentagonal face fails that test without being
//! an edge. Both tests are exact and need no general position.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::ratlin::{convex_combination, solve_phase_one, Point, StandardForm};
use crate::scalar::Scalar;
use crate::Rational;

/// Distinct points of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct PointSet<T = Rational> {
    dim: usize,
    points: Vec<Point<T>>,
}

#[derive(Deserialize)]
#[serde(bound = "T: Scalar")]
struct PointSetJson<T> {
    dim: usize,
    points: Vec<Point<T>>,
}

impl<T: Scalar> PointSet<T> {
    pub fn new(dim: usize, points: Vec<Point<T>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(Self { dim, points })
    }

    /// Builds a set from points, dropping repeats and sorting.
    pub fn from_unsorted(dim: usize, points: impl IntoIterator<Item = Point<T>>) -> Result<Self> {
        let set: BTreeSet<Point<T>> = points.into_iter().collect();
        Self::new(dim, set.into_iter().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &Point<T>) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn subset(&self, idx: &[usize]) -> Self {
        Self {
            dim: self.dim,
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: PointSetJson<T> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(raw.dim, raw.points)
    }

    /// Is `target` in the convex hull of the points not listed in `skip`?
    fn in_hull_without(&self, target: &Point<T>, skip: &[usize]) -> bool {
        let others: Vec<&Point<T>> = self
            .points
            .iter()
            .enumerate()
            .filter(|(k, _)| !skip.contains(k))
            .map(|(_, p)| p)
            .collect();
        if others.is_empty() {
            return false;
        }
        convex_combination(&others, target).is_feasible()
    }

    /// Does the midpoint of `i` and `j` admit a convex representation with
    /// positive weight off `{i, j}`?
    ///
    /// Homogenized: `Σ μ_k p_k = t·m`, `Σ μ_k = t`, `Σ_{k∉{i,j}} μ_k = 1`,
    /// with `μ, t ≥ 0`.
    fn midpoint_uses_others(&self, i: usize, j: usize) -> bool {
        let n = self.points.len();
        let mid = self.points[i].midpoint(&self.points[j]);
        let mut rows: Vec<Vec<T>> = (0..self.dim)
            .map(|c| {
                let mut row: Vec<T> = self.points.iter().map(|p| p[c].clone()).collect();
                row.push(-mid[c].clone());
                row
            })
            .collect();
        let mut total = vec![T::one(); n];
        total.push(-T::one());
        rows.push(total);
        let mut others: Vec<T> = (0..n)
            .map(|k| if k == i || k == j { T::zero() } else { T::one() })
            .collect();
        others.push(T::zero());
        rows.push(others);
        let mut rhs = vec![T::zero(); self.dim + 1];
        rhs.push(T::one());
        solve_phase_one(StandardForm {
            rows,
            rhs,
            n_vars: n + 1,
        })
        .is_feasible()
    }
}

/// Indices of the points that are vertices of the convex hull, ascending.
pub fn hull_vertices<T: Scalar>(ps: &PointSet<T>) -> Vec<usize> {
    (0..ps.len())
        .into_par_iter()
        .filter(|&i| !ps.in_hull_without(&ps.points[i], &[i]))
        .collect()
}

/// Edges of the hull as ascending pairs `(i, j)`, sorted.
///
/// Every point must be a hull vertex; otherwise the first non-vertex is
/// reported.
pub fn hull_edges<T: Scalar>(ps: &PointSet<T>) -> Result<Vec<(usize, usize)>> {
    let vertices = hull_vertices(ps);
    if vertices.len() != ps.len() {
        let missing = (0..ps.len())
            .find(|i| vertices.binary_search(i).is_err())
            .expect("some index is missing");
        return Err(Error::NonVertex(missing));
    }
    Ok(hull_edges_of_vertices(ps))
}

/// Edge test over all pairs, assuming every point is a vertex.
pub(crate) fn hull_edges_of_vertices<T: Scalar>(ps: &PointSet<T>) -> Vec<(usize, usize)> {
    let n = ps.len();
    // A midpoint shared with another pair is never on an edge: that pair is
    // disjoint from {i, j} and gives a representation off {i, j}.
    let mut by_sum: BTreeMap<Point<T>, usize> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            *by_sum.entry(ps.points[i].add(&ps.points[j])).or_insert(0) += 1;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| by_sum[&ps.points[i].add(&ps.points[j])] == 1)
        .collect();
    let mut edges: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(i, j)| !ps.midpoint_uses_others(i, j))
        .collect();
    edges.sort_unstable();
    edges
}

/// The graph of the polytope: labels are the points' canonical strings.
pub fn skeleton_graph<T: Scalar>(ps: &PointSet<T>) -> Result<Graph> {
    let edges = hull_edges(ps)?;
    Graph::new(ps.points.iter().map(Point::label).collect(), edges)
}
