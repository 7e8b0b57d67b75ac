//! Zonotope generator algebra and recognition of half-integral zonotopes as
//! graphical zonotopes of graphs with maximum degree at most two.
//!
//! A zonotope is presented by its generators `g_1, …, g_k`; it is the
//! Minkowski sum of the segments `conv{0, g_i}`. Generators are kept in a
//! canonical form: nonzero, pairwise non-collinear, first nonzero entry
//! positive.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::ratlin::{minimal_circuit, solve_phase_one, Point, StandardForm};
use crate::scalar::Scalar;
use crate::skeleton::PointSet;
use crate::Rational;

/// Largest generator count accepted by sign-vector enumeration.
pub const MAX_ENUMERATED_GENERATORS: usize = 20;

/// Canonical zonotope generators in `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct GeneratorSet<T = Rational> {
    dim: usize,
    generators: Vec<Point<T>>,
}

#[derive(Deserialize)]
#[serde(bound = "T: Scalar")]
struct GeneratorSetJson<T> {
    dim: usize,
    generators: Vec<Point<T>>,
}

impl<T: Scalar> GeneratorSet<T> {
    /// Flips each generator so its first nonzero entry is positive, rejecting
    /// zero vectors and collinear pairs.
    pub fn canonicalize(dim: usize, raw: Vec<Point<T>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(raw.len());
        for (i, g) in raw.into_iter().enumerate() {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            match g.first_nonzero() {
                None => return Err(Error::ZeroGenerator(i)),
                Some(x) if x.is_negative() => gens.push(g.neg()),
                Some(_) => gens.push(g),
            }
        }
        for j in 0..gens.len() {
            for i in 0..j {
                if collinear(&gens[i], &gens[j]) {
                    return Err(Error::CollinearGenerators(i, j));
                }
            }
        }
        Ok(Self {
            dim,
            generators: gens,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Point<T>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GeneratorSetJson<T> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::canonicalize(raw.dim, raw.generators)
    }

    fn check_guard(&self) -> Result<()> {
        if self.len() > MAX_ENUMERATED_GENERATORS {
            return Err(Error::TooLarge {
                size: self.len(),
                limit: MAX_ENUMERATED_GENERATORS,
            });
        }
        Ok(())
    }
}

/// Both canonical and nonzero: collinear iff one is a positive multiple of the other.
fn collinear<T: Scalar>(a: &Point<T>, b: &Point<T>) -> bool {
    let k = a.support()[0];
    if b[k].is_zero() {
        return false;
    }
    let c = b[k].div_ref(&a[k]);
    a.scale(&c) == *b
}

/// Is there a direction `c` with `σ_i (c · g_i) > 0` for every `i`?
///
/// Scaled to `σ_i g_i · (c⁺ − c⁻) − s_i = 1` with all variables nonnegative.
fn sign_vector_realizable<T: Scalar>(gs: &GeneratorSet<T>, positive: &[bool]) -> bool {
    let d = gs.dim;
    let k = gs.len();
    let rows = gs
        .generators
        .iter()
        .zip(positive)
        .enumerate()
        .map(|(i, (g, &pos))| {
            let mut row = Vec::with_capacity(2 * d + k);
            for x in g.coords() {
                row.push(if pos { x.clone() } else { -x.clone() });
            }
            for x in g.coords() {
                row.push(if pos { -x.clone() } else { x.clone() });
            }
            row.extend((0..k).map(|j| if j == i { -T::one() } else { T::zero() }));
            row
        })
        .collect();
    solve_phase_one(StandardForm {
        rows,
        rhs: vec![T::one(); k],
        n_vars: 2 * d + k,
    })
    .is_feasible()
}

/// Vertices of the zonotope with the sign vector realizing each, sorted by
/// point. `signs[i]` is true when `g_i` is on the positive side.
pub fn zonotope_vertices_with_signs<T: Scalar>(
    gs: &GeneratorSet<T>,
) -> Result<Vec<(Point<T>, Vec<bool>)>> {
    gs.check_guard()?;
    let k = gs.len();
    if k == 0 {
        return Ok(vec![(Point::zeros(gs.dim), Vec::new())]);
    }
    // σ is realizable iff −σ is, so fix σ_0 = + and add the negation.
    let half: Vec<Vec<bool>> = (0u32..1 << (k - 1))
        .into_par_iter()
        .map(|m| (0..k).map(|i| i == 0 || m & (1 << (i - 1)) != 0).collect::<Vec<bool>>())
        .filter(|s| sign_vector_realizable(gs, s))
        .collect();
    let mut out: BTreeMap<Point<T>, Vec<bool>> = BTreeMap::new();
    for s in half {
        let neg: Vec<bool> = s.iter().map(|b| !b).collect();
        for signs in [s, neg] {
            let v = gs
                .generators
                .iter()
                .zip(&signs)
                .filter(|(_, &b)| b)
                .fold(Point::zeros(gs.dim), |acc, (g, _)| acc.add(g));
            out.entry(v).or_insert(signs);
        }
    }
    Ok(out.into_iter().collect())
}

/// Vertices of `Σ conv{0, g_i}`, sorted.
pub fn zonotope_vertices<T: Scalar>(gs: &GeneratorSet<T>) -> Result<PointSet<T>> {
    let vs = zonotope_vertices_with_signs(gs)?;
    PointSet::new(gs.dim, vs.into_iter().map(|(p, _)| p).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetRule {
    /// More than two generators are nonzero in the coordinate.
    TooManyGenerators,
    /// Two generators share the coordinate but not both with `|entry| = 1/2`.
    SharedEntryNotHalf,
    /// `Σ |g_i|` over the coordinate exceeds 1.
    LengthExceedsOne,
}

impl std::fmt::Display for BudgetRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BudgetRule::TooManyGenerators => "more than two generators are nonzero",
            BudgetRule::SharedEntryNotHalf => "two generators share it without both entries being ±1/2",
            BudgetRule::LengthExceedsOne => "the absolute entries sum to more than 1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct BudgetViolation<T = Rational> {
    /// 0-based coordinate index.
    pub coordinate: usize,
    pub nonzero_generators: Vec<usize>,
    #[serde(with = "crate::ratlin::rat_string")]
    pub budget: T,
    pub rules: Vec<BudgetRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct BudgetReport<T = Rational> {
    pub passes: bool,
    pub violations: Vec<BudgetViolation<T>>,
}

/// Per-coordinate necessary condition for half-integrality: at most two
/// generators touch each coordinate, shared entries are `±1/2`, and the
/// projection onto the coordinate has length at most 1.
pub fn coordinate_budget<T: Scalar>(gs: &GeneratorSet<T>) -> BudgetReport<T> {
    let half = T::half();
    let mut violations = Vec::new();
    for c in 0..gs.dim {
        let nonzero: Vec<usize> = (0..gs.len())
            .filter(|&i| !gs.generators[i][c].is_zero())
            .collect();
        let budget = nonzero
            .iter()
            .fold(T::zero(), |acc, &i| acc.add_ref(&gs.generators[i][c].abs()));
        let mut rules = Vec::new();
        if nonzero.len() > 2 {
            rules.push(BudgetRule::TooManyGenerators);
        }
        if nonzero.len() == 2 && nonzero.iter().any(|&i| gs.generators[i][c].abs() != half) {
            rules.push(BudgetRule::SharedEntryNotHalf);
        }
        if budget > T::one() {
            rules.push(BudgetRule::LengthExceedsOne);
        }
        if !rules.is_empty() {
            violations.push(BudgetViolation {
                coordinate: c,
                nonzero_generators: nonzero,
                budget,
                rules,
            });
        }
    }
    BudgetReport {
        passes: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct HalfIntegrality<T = Rational> {
    pub half_integral: bool,
    /// Added to every vertex to bring the per-coordinate minima to 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translation: Option<Point<T>>,
}

/// Does some translate of the zonotope have all vertex coordinates in
/// `{0, 1/2, 1}`? The translate is the one with per-coordinate minimum 0.
pub fn is_half_integral<T: Scalar>(gs: &GeneratorSet<T>) -> Result<HalfIntegrality<T>> {
    let vs = zonotope_vertices(gs)?;
    let translation: Point<T> = Point::new(
        (0..gs.dim)
            .map(|c| {
                let min = vs.points().iter().map(|p| &p[c]).min().expect("nonempty");
                -min.clone()
            })
            .collect(),
    );
    let allowed = [T::zero(), T::half(), T::one()];
    let ok = vs
        .points()
        .iter()
        .all(|p| p.add(&translation).coords().iter().all(|x| allowed.contains(x)));
    Ok(HalfIntegrality {
        half_integral: ok,
        translation: ok.then_some(translation),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// A cycle on this many vertices.
    Cycle(usize),
    /// A path with this many edges.
    Path(usize),
}

/// Linear map taking one circuit block onto the generators of a cycle's
/// graphical zonotope.
///
/// With `λ` scaled so the pivot has `λ = −1`, `Σ λ_g g = 0`. The `k`-th
/// block member, multiplied by `λ`, goes to `e_a − e_b` for
/// `images[k] = (a, b)`: `(k, k+1)` for non-pivots, `(0, m−1)` for the pivot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub block: Vec<usize>,
    pub pivot: usize,
    pub lambda: Vec<i8>,
    pub images: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub circuit_blocks: Vec<Vec<usize>>,
    pub independent_block: Vec<usize>,
    /// Coordinate supports of the circuit blocks, then of the independent block.
    pub block_supports: Vec<Vec<usize>>,
    /// Cycles in block order, then one path with one edge per independent generator.
    pub components: Vec<Component>,
    pub graph: Graph,
    pub witnesses: Vec<CycleWitness>,
}

#[derive(Serialize)]
struct GraphWithComponents<'a> {
    components: &'a [Component],
    #[serde(flatten)]
    graph: &'a Graph,
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    circuit_blocks: &'a [Vec<usize>],
    independent_block: &'a [usize],
    block_supports: &'a [Vec<usize>],
    graph: GraphWithComponents<'a>,
    witness: &'a [CycleWitness],
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            circuit_blocks: &self.circuit_blocks,
            independent_block: &self.independent_block,
            block_supports: &self.block_supports,
            graph: GraphWithComponents {
                components: &self.components,
                graph: &self.graph,
            },
            witness: &self.witnesses,
        }
        .serialize(s)
    }
}

fn block_support<T: Scalar>(gs: &GeneratorSet<T>, block: &[usize]) -> Vec<usize> {
    let mut sup: Vec<usize> = block
        .iter()
        .flat_map(|&i| gs.generators[i].support())
        .collect();
    sup.sort_unstable();
    sup.dedup();
    sup
}

/// Splits the generators into minimal circuits and an independent rest,
/// checking that every circuit has `±1` coefficients and a coordinate
/// support untouched by the other generators.
///
/// Does not test half-integrality; both checks hold for half-integral input
/// and also for graphical generators of cycles.
pub fn decompose<T: Scalar>(gs: &GeneratorSet<T>) -> Result<Decomposition> {
    let mut remaining: Vec<usize> = (0..gs.len()).collect();
    let mut circuit_blocks = Vec::new();
    let mut witnesses = Vec::new();
    while let Some(c) = minimal_circuit(
        &remaining
            .iter()
            .map(|&i| gs.generators[i].clone())
            .collect::<Vec<_>>(),
    ) {
        let block: Vec<usize> = c.indices.iter().map(|&k| remaining[k]).collect();
        if c.coefficients.iter().any(|x| x.abs() != T::one()) {
            return Err(Error::CircuitNotUnimodular {
                block,
                coefficients: c.coefficients.iter().map(ToString::to_string).collect(),
            });
        }
        let support = block_support(gs, &block);
        for other in (0..gs.len()).filter(|i| !block.contains(i)) {
            if let Some(&coordinate) = support
                .iter()
                .find(|&&x| !gs.generators[other][x].is_zero())
            {
                return Err(Error::OverlappingSupport {
                    block,
                    other,
                    coordinate,
                });
            }
        }
        let m = block.len();
        let flip = if c.coefficients[m - 1].is_positive() { -1 } else { 1 };
        let lambda = c
            .coefficients
            .iter()
            .map(|x| if x.is_positive() { flip } else { -flip })
            .collect();
        let images = (0..m)
            .map(|k| if k + 1 < m { (k, k + 1) } else { (0, m - 1) })
            .collect();
        witnesses.push(CycleWitness {
            pivot: block[m - 1],
            block: block.clone(),
            lambda,
            images,
        });
        remaining.retain(|i| !block.contains(i));
        circuit_blocks.push(block);
    }

    let mut block_supports: Vec<Vec<usize>> = circuit_blocks
        .iter()
        .map(|b| block_support(gs, b))
        .collect();
    block_supports.push(block_support(gs, &remaining));

    let mut components: Vec<Component> = circuit_blocks
        .iter()
        .map(|b| Component::Cycle(b.len()))
        .collect();
    let mut parts: Vec<(String, Graph)> = circuit_blocks
        .iter()
        .enumerate()
        .map(|(b, block)| (format!("c{b}:"), Graph::cycle(block.len())))
        .collect();
    if !remaining.is_empty() {
        components.push(Component::Path(remaining.len()));
        parts.push(("p:".into(), Graph::path(remaining.len() + 1)));
    }
    Ok(Decomposition {
        circuit_blocks,
        independent_block: remaining,
        block_supports,
        components,
        graph: Graph::disjoint_union(&parts),
        witnesses,
    })
}

/// Recognizes a half-integral zonotope as the graphical zonotope of a
/// disjoint union of cycles and a path, up to an affine map.
pub fn recognize_graphical<T: Scalar>(gs: &GeneratorSet<T>) -> Result<Decomposition> {
    let budget = coordinate_budget(gs);
    if let Some(v) = budget.violations.first() {
        let rules: Vec<String> = v.rules.iter().map(ToString::to_string).collect();
        return Err(Error::NotHalfIntegral(format!(
            "coordinate {} breaks the at-most-two-generators-per-coordinate rule: {}",
            v.coordinate,
            rules.join("; ")
        )));
    }
    if !is_half_integral(gs)?.half_integral {
        return Err(Error::NotHalfIntegral(
            "vertex coordinates are not in {0, 1/2, 1} after translation".into(),
        ));
    }
    decompose(gs)
}

/// One generator `e_i − e_j` per edge `{i, j}`, in edge order.
pub fn graphical_generators<T: Scalar>(g: &Graph) -> GeneratorSet<T> {
    let n = g.n();
    let gens = g
        .edges()
        .iter()
        .map(|&(i, j)| Point::unit(n, i).sub(&Point::unit(n, j)))
        .collect();
    GeneratorSet::canonicalize(n, gens).expect("edges of a simple graph are canonical")
}

/// A half-integral generator set whose recognized graph has the components
/// of `g`: a cycle on `k` vertices becomes the halved cycle generators on
/// `k` fresh coordinates, a path with `k` edges becomes `k` fresh unit
/// vectors.
pub fn realize_half_integral<T: Scalar>(g: &Graph) -> Result<GeneratorSet<T>> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 2) {
        return Err(Error::DegreeTooHigh {
            vertex: v,
            degree: g.degree(v),
        });
    }
    // (first coordinate, size, is_cycle)
    let mut blocks = Vec::new();
    let mut dim = 0;
    for comp in g.components() {
        let degree_sum: usize = comp.iter().map(|&v| g.degree(v)).sum();
        let edges = degree_sum / 2;
        if edges == 0 {
            continue;
        }
        let cycle = edges == comp.len();
        blocks.push((dim, edges, cycle));
        dim += edges;
    }
    let half = T::half();
    let mut gens = Vec::new();
    for (off, k, cycle) in blocks {
        if cycle {
            let e = |i: usize| Point::<T>::unit(dim, off + i);
            for i in 0..k - 1 {
                gens.push(e(i).sub(&e(i + 1)).scale(&half));
            }
            gens.push(e(0).sub(&e(k - 1)).scale(&half));
        } else {
            gens.extend((0..k).map(|i| Point::unit(dim, off + i)));
        }
    }
    GeneratorSet::canonicalize(dim, gens)
}

/// Cycle lengths (ascending) and total path edges of a degree-≤2 graph.
pub fn component_signature(g: &Graph) -> (Vec<usize>, usize) {
    let mut cycles = Vec::new();
    let mut path_edges = 0;
    for comp in g.components() {
        let edges = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges == comp.len() && edges > 0 {
            cycles.push(edges);
        } else {
            path_edges += edges;
        }
    }
    cycles.sort_unstable();
    (cycles, path_edges)
}

/// Signature of recognized components, comparable with [`component_signature`].
pub fn components_signature(components: &[Component]) -> (Vec<usize>, usize) {
    let mut cycles = Vec::new();
    let mut path_edges = 0;
    for c in components {
        match *c {
            Component::Cycle(k) => cycles.push(k),
            Component::Path(k) => path_edges += k,
        }
    }
    cycles.sort_unstable();
    (cycles, path_edges)
}

/// Maps zonotope vertices of a single circuit onto cube vertices: bit `k`
/// of the image is `signs[k]` flipped wherever `λ_k = −1`.
///
/// For a cycle's generators the two unrealizable sign vectors are exactly
/// the ones landing on `0` and on the all-ones vertex.
pub fn cube_vertex_map(signs: &[Vec<bool>], witness: &CycleWitness) -> Vec<usize> {
    signs
        .iter()
        .map(|s| {
            witness
                .block
                .iter()
                .zip(&witness.lambda)
                .enumerate()
                .fold(0usize, |acc, (k, (&g, &l))| {
                    if s[g] != (l < 0) {
                        acc | 1 << k
                    } else {
                        acc
                    }
                })
        })
        .collect()
}
