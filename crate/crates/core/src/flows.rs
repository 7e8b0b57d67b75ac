//! Multicommodity routings and their congestion.
//!
//! A routing sends one unit of flow between every ordered pair of distinct
//! vertices, split over weighted directed paths. If the heaviest arc carries
//! `φ_max`, the congestion is `ρ = φ_max / n`, and every cut `S` with
//! `|S| ≤ n/2` satisfies `|∂S| / |S| ≥ n / (2 φ_max) = 1 / (2ρ)`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{cartesian_product, Graph};
use crate::scalar::Scalar;
use crate::Rational;

/// Largest hypercube dimension for the explicit schemes.
pub const MAX_CUBE_D: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedPath {
    pub vertices: Vec<usize>,
    #[serde(with = "crate::ratlin::rat_string")]
    pub weight: Rational,
}

impl WeightedPath {
    pub fn unit(vertices: Vec<usize>) -> Self {
        Self {
            vertices,
            weight: Rational::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Demand {
    pub s: usize,
    pub t: usize,
    pub paths: Vec<WeightedPath>,
}

/// Demands on a graph, ordered by `(s, t)`. Not validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Routing {
    graph: Graph,
    demands: Vec<Demand>,
}

/// An arc as `(tail, head)` vertex indices.
pub type Arc = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongestionReport {
    #[serde(with = "crate::ratlin::rat_string")]
    pub max_arc_flow: Rational,
    pub n: usize,
    #[serde(with = "crate::ratlin::rat_string")]
    pub congestion: Rational,
    /// Labels of the heaviest arc, lexicographically smallest among ties.
    pub argmax_arc: (String, String),
}

impl Routing {
    pub fn new(graph: Graph, mut demands: Vec<Demand>) -> Self {
        demands.sort_by_key(|d| (d.s, d.t));
        Self { graph, demands }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn demands(&self) -> &[Demand] {
        &self.demands
    }

    pub fn demand(&self, s: usize, t: usize) -> Option<&Demand> {
        self.demands
            .binary_search_by_key(&(s, t), |d| (d.s, d.t))
            .ok()
            .map(|i| &self.demands[i])
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("routing serializes")
    }

    fn pair(&self, s: usize, t: usize) -> String {
        format!("({}, {})", self.graph.label(s), self.graph.label(t))
    }

    /// Every ordered pair has exactly one demand, every path runs from `s`
    /// to `t` along edges with positive weight, and weights sum to 1.
    pub fn validate(&self) -> Result<()> {
        let n = self.graph.n();
        let invalid = |msg: String| Err(Error::InvalidRouting(msg));
        let mut expected = (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)));
        let mut prev: Option<(usize, usize)> = None;
        for d in &self.demands {
            if d.s >= n || d.t >= n || d.s == d.t {
                return invalid(format!("demand ({}, {}) is not a pair of distinct vertices", d.s, d.t));
            }
            if prev == Some((d.s, d.t)) {
                return invalid(format!("duplicate demand {}", self.pair(d.s, d.t)));
            }
            prev = Some((d.s, d.t));
            let want = expected.next().expect("distinct valid pairs never outnumber all pairs");
            if want != (d.s, d.t) {
                return invalid(format!("missing demand {}", self.pair(want.0, want.1)));
            }
            let mut total = Rational::zero();
            for (k, p) in d.paths.iter().enumerate() {
                let ends = (p.vertices.first(), p.vertices.last());
                if ends != (Some(&d.s), Some(&d.t)) {
                    return invalid(format!("path {k} of {} has wrong endpoints", self.pair(d.s, d.t)));
                }
                if let Some(w) = p.vertices.windows(2).find(|w| !self.graph.has_edge(w[0], w[1])) {
                    return invalid(format!(
                        "path {k} of {} uses non-arc {}",
                        self.pair(d.s, d.t),
                        self.pair(w[0], w[1])
                    ));
                }
                if !p.weight.is_positive() {
                    return invalid(format!("path {k} of {} has non-positive weight", self.pair(d.s, d.t)));
                }
                total += &p.weight;
            }
            if !total.is_one() {
                return invalid(format!("non-unit demand {}: total {total}", self.pair(d.s, d.t)));
            }
        }
        if let Some((s, t)) = expected.next() {
            return invalid(format!("missing demand {}", self.pair(s, t)));
        }
        Ok(())
    }

    /// Arc slots: `offsets[v] + k` is the arc from `v` to its `k`-th neighbor.
    fn arc_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.graph.n() + 1);
        let mut acc = 0;
        for v in 0..self.graph.n() {
            offsets.push(acc);
            acc += self.graph.degree(v);
        }
        offsets.push(acc);
        offsets
    }

    fn arc_slot(&self, offsets: &[usize], a: usize, b: usize) -> usize {
        let k = self.graph.neighbors(a).binary_search(&b).expect("path step is an edge");
        offsets[a] + k
    }

    /// Total flow on every arc, in `(tail, head)` order; arcs of the
    /// bidirected graph carrying nothing are listed with 0.
    pub fn arc_flows(&self) -> Result<Vec<(Arc, Rational)>> {
        self.validate()?;
        let offsets = self.arc_offsets();
        let slots = offsets[self.graph.n()];
        // Integer parts are summed as counts; fractional weights go through
        // rational addition.
        let (counts, fracs) = self
            .demands
            .par_iter()
            .fold(
                || (vec![0u64; slots], vec![Rational::zero(); slots]),
                |(mut counts, mut fracs), d| {
                    for p in &d.paths {
                        let unit = p.weight.is_one();
                        for w in p.vertices.windows(2) {
                            let slot = self.arc_slot(&offsets, w[0], w[1]);
                            if unit {
                                counts[slot] += 1;
                            } else {
                                fracs[slot] += &p.weight;
                            }
                        }
                    }
                    (counts, fracs)
                },
            )
            .reduce(
                || (vec![0u64; slots], vec![Rational::zero(); slots]),
                |(mut c1, mut f1), (c2, f2)| {
                    for (a, b) in c1.iter_mut().zip(c2) {
                        *a += b;
                    }
                    for (a, b) in f1.iter_mut().zip(f2) {
                        *a += b;
                    }
                    (c1, f1)
                },
            );
        let mut out = Vec::with_capacity(slots);
        for a in 0..self.graph.n() {
            for (k, &b) in self.graph.neighbors(a).iter().enumerate() {
                let slot = offsets[a] + k;
                let total = Rational::from_integer(counts[slot].into()) + &fracs[slot];
                out.push(((a, b), total));
            }
        }
        Ok(out)
    }
}

/// Heaviest arc load and `φ_max / n`.
pub fn congestion(r: &Routing) -> Result<CongestionReport> {
    let flows = r.arc_flows()?;
    let g = r.graph();
    let labels = |&(a, b): &Arc| (g.label(a).to_string(), g.label(b).to_string());
    let max = flows.iter().map(|(_, f)| f).max().cloned().unwrap_or_else(Rational::zero);
    let argmax_arc = flows
        .iter()
        .filter(|(_, f)| *f == max)
        .map(|(a, _)| labels(a))
        .min()
        .unwrap_or_default();
    let n = g.n();
    let congestion = if n == 0 {
        Rational::zero()
    } else {
        &max / Rational::from_int(n as i64)
    };
    Ok(CongestionReport {
        max_arc_flow: max,
        n,
        congestion,
        argmax_arc,
    })
}

/// `1 / (2ρ)`, a lower bound on the edge expansion.
pub fn expansion_lower_bound(report: &CongestionReport) -> Result<Rational> {
    if report.congestion.is_zero() {
        return Err(Error::ZeroCongestion);
    }
    Ok((Rational::from_int(2) * &report.congestion).recip())
}

fn check_cube_d(d: usize, min: usize) -> Result<()> {
    if d < min || d > MAX_CUBE_D {
        return Err(Error::OutOfRange {
            what: "d",
            value: d,
            min,
            max: MAX_CUBE_D,
        });
    }
    Ok(())
}

/// Vertices visited from `s` to `t` flipping differing bits in increasing order.
fn bitfix_path(s: usize, t: usize, d: usize) -> Vec<usize> {
    let mut v = s;
    let mut path = vec![s];
    for i in 0..d {
        if (s ^ t) & (1 << i) != 0 {
            v ^= 1 << i;
            path.push(v);
        }
    }
    path
}

/// Bit-fixing on the hypercube `Q_d`: one unit path per ordered pair.
pub fn bitfix_routing(d: usize) -> Result<Routing> {
    check_cube_d(d, 1)?;
    let n = 1usize << d;
    let demands = (0..n)
        .into_par_iter()
        .flat_map_iter(|s| {
            (0..n).filter(move |&t| t != s).map(move |t| Demand {
                s,
                t,
                paths: vec![WeightedPath::unit(bitfix_path(s, t, d))],
            })
        })
        .collect();
    Ok(Routing::new(Graph::hypercube(d), demands))
}

/// The hypercube without the origin and the all-ones vertex. Vertex `m - 1`
/// is the cube vertex with bitmask `m`.
pub fn punctured_hypercube(d: usize) -> Graph {
    let keep: Vec<usize> = (1..(1usize << d) - 1).collect();
    Graph::hypercube(d).induced(&keep)
}

/// Bit-fixing on the punctured cube, with detours around the removed vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedRouting {
    pub routing: Routing,
    /// Arcs carrying detours around the origin (vertex indices of the punctured graph).
    pub rerouted_near_origin: Vec<Arc>,
    /// Arcs carrying detours around the all-ones vertex.
    pub rerouted_near_top: Vec<Arc>,
    pub sets_disjoint: bool,
    /// False for `d = 3`, where the detour arc sets can meet.
    pub within_hypothesis: bool,
}

/// Bit-fixing paths between the remaining vertices of `Q_d`; a path through
/// the origin `… e^i → 0 → e^j …` becomes `… e^i → e^i + e^j → e^j …`, and
/// symmetrically through the all-ones vertex.
pub fn punctured_routing(d: usize) -> Result<PuncturedRouting> {
    check_cube_d(d, 3)?;
    let full = (1usize << d) - 1;
    let inner: Vec<usize> = (1..full).collect();
    let rerouted: Vec<(Demand, Option<(bool, [Arc; 2])>)> = inner
        .par_iter()
        .flat_map_iter(|&s| {
            inner.iter().filter(move |&&t| t != s).map(move |&t| {
                let mut path = bitfix_path(s, t, d);
                let mut detour = None;
                if let Some(k) = path.iter().position(|&v| v == 0 || v == full) {
                    let (a, b) = (path[k - 1], path[k + 1]);
                    let origin_side = path[k] == 0;
                    path[k] = if origin_side { a | b } else { a & b };
                    detour = Some((origin_side, [(a, path[k]), (path[k], b)]));
                }
                let demand = Demand {
                    s: s - 1,
                    t: t - 1,
                    paths: vec![WeightedPath::unit(path.into_iter().map(|v| v - 1).collect())],
                };
                (demand, detour)
            })
        })
        .collect();
    let mut near_origin = BTreeSet::new();
    let mut near_top = BTreeSet::new();
    let mut demands = Vec::with_capacity(rerouted.len());
    for (demand, detour) in rerouted {
        if let Some((origin_side, arcs)) = detour {
            let set = if origin_side { &mut near_origin } else { &mut near_top };
            set.extend(arcs.iter().map(|&(a, b)| (a - 1, b - 1)));
        }
        demands.push(demand);
    }
    let sets_disjoint = near_origin.is_disjoint(&near_top);
    Ok(PuncturedRouting {
        routing: Routing::new(punctured_hypercube(d), demands),
        rerouted_near_origin: near_origin.into_iter().collect(),
        rerouted_near_top: near_top.into_iter().collect(),
        sets_disjoint,
        within_hypothesis: d >= 4,
    })
}

/// Shortest-path routing on the 6-cycle, halving antipodal demands over
/// both directions.
pub fn hexagon_routing() -> Routing {
    let n = 6;
    let walk = |s: usize, k: usize, step: usize| -> Vec<usize> {
        (0..=k).map(|i| (s + i * step) % n).collect()
    };
    let mut demands = Vec::new();
    for s in 0..n {
        for t in (0..n).filter(|&t| t != s) {
            let fwd = (t + n - s) % n;
            let paths = match fwd {
                1 | 2 => vec![WeightedPath::unit(walk(s, fwd, 1))],
                4 | 5 => vec![WeightedPath::unit(walk(s, n - fwd, n - 1))],
                _ => vec![
                    WeightedPath {
                        vertices: walk(s, 3, 1),
                        weight: Rational::half(),
                    },
                    WeightedPath {
                        vertices: walk(s, 3, n - 1),
                        weight: Rational::half(),
                    },
                ],
            };
            demands.push(Demand { s, t, paths });
        }
    }
    Routing::new(Graph::cycle(n), demands)
}

/// Routing on `G × H` built from routings of the factors.
///
/// Pairs in a common copy reuse the factor routing. Any other pair
/// `(a₁, b₁) → (a₂, b₂)` first moves inside the copy of `G` at `b₁` to
/// `(a₂, b₁)`, then inside the copy of `H` at `a₂`, with weights multiplied.
pub fn product_routing(rg: &Routing, rh: &Routing) -> Result<Routing> {
    rg.validate()?;
    rh.validate()?;
    let (ng, nh) = (rg.graph().n(), rh.graph().n());
    let idx = |a: usize, b: usize| a * nh + b;
    let in_g = |p: &WeightedPath, b: usize| p.vertices.iter().map(|&a| idx(a, b)).collect::<Vec<_>>();
    let in_h = |p: &WeightedPath, a: usize| p.vertices.iter().map(|&b| idx(a, b)).collect::<Vec<_>>();
    let demands: Vec<Demand> = (0..ng * nh)
        .into_par_iter()
        .flat_map_iter(|s| {
            (0..ng * nh).filter(move |&t| t != s).map(move |t| {
                let (a1, b1) = (s / nh, s % nh);
                let (a2, b2) = (t / nh, t % nh);
                let paths = if a1 == a2 {
                    let d = rh.demand(b1, b2).expect("validated");
                    d.paths
                        .iter()
                        .map(|p| WeightedPath {
                            vertices: in_h(p, a1),
                            weight: p.weight.clone(),
                        })
                        .collect()
                } else if b1 == b2 {
                    let d = rg.demand(a1, a2).expect("validated");
                    d.paths
                        .iter()
                        .map(|p| WeightedPath {
                            vertices: in_g(p, b1),
                            weight: p.weight.clone(),
                        })
                        .collect()
                } else {
                    let dg = rg.demand(a1, a2).expect("validated");
                    let dh = rh.demand(b1, b2).expect("validated");
                    let mut paths = Vec::with_capacity(dg.paths.len() * dh.paths.len());
                    for pg in &dg.paths {
                        for ph in &dh.paths {
                            let mut vertices = in_g(pg, b1);
                            vertices.extend(in_h(ph, a2).into_iter().skip(1));
                            paths.push(WeightedPath {
                                vertices,
                                weight: &pg.weight * &ph.weight,
                            });
                        }
                    }
                    paths
                };
                Demand { s, t, paths }
            })
        })
        .collect();
    Ok(Routing::new(cartesian_product(rg.graph(), rh.graph()), demands))
}
