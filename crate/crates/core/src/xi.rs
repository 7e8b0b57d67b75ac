//! A half-integral polytope with a sparse middle cut.
//!
//! For `d ≡ 3 (mod 4)`, the vertex set is made of the cube vertices on the
//! two middle levels (coordinate sum `(d-1)/2` or `(d+1)/2`) together with the
//! centers of the `(d-1)/2`-dimensional cube faces lying strictly outside the
//! slab between those levels. The cut separating the two halves of the slab
//! only uses cube edges between the two middle levels, which makes its ratio
//! decay like `d/√2^d`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::ratlin::rat_string;
use crate::scalar::Scalar;
use crate::skeleton::{self, PointSet};
use crate::{RatPoint, Rational};

/// Largest `d` for which the vertex set is materialized as rational points.
pub const MAX_BUILD_D: usize = 11;
/// Largest `d` for the counting enumeration and the crossing-edge list.
pub const MAX_ENUMERATE_D: usize = 19;
/// Largest `d` accepted by the closed forms (keeps counts within `u128`).
pub const MAX_CLOSED_FORM_D: usize = 63;

/// Lower end of the rational interval used to bound `π`.
pub fn pi_lower() -> Rational {
    Rational::from_frac(355, 113) - Rational::from_frac(1, 1_000_000)
}

/// Upper end of the rational interval used to bound `π`.
pub fn pi_upper() -> Rational {
    Rational::from_frac(355, 113)
}

/// The polytope's vertex set and its slab.
#[derive(Clone, Debug)]
pub struct XiInstance {
    pub d: usize,
    /// Sorted vertex list.
    pub vertices: PointSet,
    /// `(d-1)/2`
    pub slab_low: Rational,
    /// `(d+1)/2`
    pub slab_high: Rational,
}

impl XiInstance {
    /// Indices of the vertices with coordinate sum at most `(d-1)/2`.
    pub fn lower_side(&self) -> Vec<usize> {
        self.vertices
            .points()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.sum() <= self.slab_low)
            .map(|(i, _)| i)
            .collect()
    }

    /// The polytope graph by exact LP adjacency tests.
    pub fn skeleton(&self) -> Result<Graph> {
        skeleton::skeleton_graph(&self.vertices)
    }
}

pub fn validate_d(d: usize) -> Result<()> {
    if d >= 3 && d % 4 == 3 {
        Ok(())
    } else {
        Err(Error::InvalidXiDimension(d))
    }
}

fn guard(d: usize, max: usize, what: &'static str) -> Result<()> {
    validate_d(d)?;
    if d > max {
        return Err(Error::OutOfRange {
            what,
            value: d,
            min: 3,
            max,
        });
    }
    Ok(())
}

/// Visits every vertex in doubled coordinates (`0`, `1`, `2` for
/// `0`, `1/2`, `1`). Returns nothing; the caller accumulates.
fn for_each_doubled(d: usize, mut visit: impl FnMut(u32, u32)) {
    // visit(half_mask, one_mask)
    let k = (d - 1) / 2;
    let full: u32 = (1u32 << d) - 1;
    for ones in 0..=full {
        let c = ones.count_ones() as usize;
        if c == k || c == k + 1 {
            visit(0, ones);
        }
    }
    let lo2 = (d - 1) as u32;
    let hi2 = (d + 1) as u32;
    for half in masks_with_popcount(d, k) {
        let rest = full & !half;
        // iterate all submasks of `rest`, including the empty one
        let mut sub = rest;
        loop {
            let doubled_sum = k as u32 + 2 * sub.count_ones();
            if doubled_sum < lo2 || doubled_sum > hi2 {
                visit(half, sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
}

fn masks_with_popcount(d: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..(1u32 << d)).filter(move |m| m.count_ones() as usize == k)
}

fn doubled_to_point(d: usize, half: u32, ones: u32) -> RatPoint {
    let h = Rational::half();
    RatPoint::new(
        (0..d)
            .map(|i| {
                if ones & (1 << i) != 0 {
                    Rational::from_int(1)
                } else if half & (1 << i) != 0 {
                    h.clone()
                } else {
                    Rational::from_int(0)
                }
            })
            .collect(),
    )
}

/// Constructs the vertex set for `d ≡ 3 (mod 4)`, `3 ≤ d ≤ 11`.
pub fn build(d: usize) -> Result<XiInstance> {
    guard(d, MAX_BUILD_D, "d (build)")?;
    let mut pts = Vec::new();
    for_each_doubled(d, |half, ones| pts.push(doubled_to_point(d, half, ones)));
    let vertices = PointSet::from_unsorted(d, pts)?;
    Ok(XiInstance {
        d,
        vertices,
        slab_low: Rational::from_frac((d as i64 - 1) / 2, 1),
        slab_high: Rational::from_frac((d as i64 + 1) / 2, 1),
    })
}

/// Vertex counts by direct enumeration, without materializing points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumeratedCounts {
    pub integral: u64,
    pub centers: u64,
    /// Vertices with coordinate sum at most `(d-1)/2`.
    pub lower_side: u64,
}

pub fn count_by_enumeration(d: usize) -> Result<EnumeratedCounts> {
    guard(d, MAX_ENUMERATE_D, "d (enumeration)")?;
    let mut c = EnumeratedCounts {
        integral: 0,
        centers: 0,
        lower_side: 0,
    };
    let lo2 = (d - 1) as u32;
    for_each_doubled(d, |half, ones| {
        if half == 0 {
            c.integral += 1;
        } else {
            c.centers += 1;
        }
        if half.count_ones() + 2 * ones.count_ones() <= lo2 {
            c.lower_side += 1;
        }
    });
    Ok(c)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Closed-form vertex counts `(integral, centers)`:
/// `C(d+1, (d+1)/2)` and `C(d, (d-1)/2)·[2^((d+1)/2) − C((d+1)/2, (d+1)/4)]`.
pub fn vertex_count_closed_form(d: usize) -> Result<(u128, u128)> {
    guard(d, MAX_CLOSED_FORM_D, "d (closed form)")?;
    let d = d as u64;
    let integral = binomial(d + 1, (d + 1) / 2);
    let centers = binomial(d, (d - 1) / 2)
        * ((1u128 << ((d + 1) / 2)) - binomial((d + 1) / 2, (d + 1) / 4));
    Ok((integral, centers))
}

/// `C(d, (d-1)/2)·(d+1)/2`, the number of cube edges between the two middle levels.
pub fn crossing_edge_count(d: usize) -> Result<u128> {
    guard(d, MAX_CLOSED_FORM_D, "d (closed form)")?;
    let d = d as u64;
    Ok(binomial(d, (d - 1) / 2) * ((d + 1) / 2) as u128)
}

/// Cube edges from level `(d-1)/2` to level `(d+1)/2`, as sorted point pairs
/// `(lower, upper)`.
pub fn crossing_edges(d: usize) -> Result<Vec<(RatPoint, RatPoint)>> {
    guard(d, 15, "d (crossing edges)")?;
    let k = (d - 1) / 2;
    let mut out = Vec::new();
    for lower in masks_with_popcount(d, k) {
        for i in 0..d {
            if lower & (1 << i) == 0 {
                out.push((
                    doubled_to_point(d, 0, lower),
                    doubled_to_point(d, 0, lower | (1 << i)),
                ));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The middle cut and how it compares with `d/√2^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiCutReport {
    pub d: usize,
    /// True `|S|`: every vertex with coordinate sum `≤ (d-1)/2`.
    pub subset_size: u128,
    /// Half the number of face centers, i.e. the count that omits the
    /// integral vertices of `S`. Reported for comparison only.
    pub centers_only_subset_size: u128,
    pub boundary_size: u128,
    /// `boundary_size / subset_size`
    #[serde(with = "rat_string")]
    pub ratio: Rational,
    /// `ratio² · 2^d / d²`; below 1 iff `ratio < d/√2^d`.
    #[serde(with = "rat_string")]
    pub normalized_square: Rational,
    pub below_decay_bound: bool,
    /// `C(2m,m) ≤ 4^m/√(πm)` with `m = (d+1)/4`.
    pub central_binomial_standard_holds: bool,
    /// `C(2m,m) ≤ 2·√2^(d+1)/(√π·(d+1))`, the variant with `(d+1)` outside the root.
    pub central_binomial_variant_holds: bool,
}

/// Closed-form report on the cut `S = {x : Σx ≤ (d-1)/2}`.
pub fn cut_report(d: usize) -> Result<XiCutReport> {
    let (integral, centers) = vertex_count_closed_form(d)?;
    let boundary = crossing_edge_count(d)?;
    let subset_size = (integral + centers) / 2;
    let big = |v: u128| Rational::from_integer(BigInt::from(v));
    let ratio = big(boundary) / big(subset_size);
    let pow2 = |e: usize| Rational::from_integer(BigInt::from(1) << e);
    let dd = Rational::from_int(d as i64);
    let normalized_square = &ratio * &ratio * pow2(d) / (&dd * &dd);
    let below = normalized_square < Rational::from_int(1);

    let m = (d + 1) / 4;
    let central = big(binomial(2 * m as u64, m as u64));
    let c2 = &central * &central;
    let m_r = Rational::from_int(m as i64);
    let standard_rhs = pow2(4 * m);
    let standard_holds = decide(
        &c2 * &pi_upper() * &m_r <= standard_rhs,
        &c2 * &pi_lower() * &m_r > standard_rhs,
    );
    let dp1 = Rational::from_int(d as i64 + 1);
    let variant_rhs = pow2(d + 3);
    let variant_holds = decide(
        &c2 * &pi_upper() * &dp1 * &dp1 <= variant_rhs,
        &c2 * &pi_lower() * &dp1 * &dp1 > variant_rhs,
    );

    Ok(XiCutReport {
        d,
        subset_size,
        centers_only_subset_size: centers / 2,
        boundary_size: boundary,
        ratio,
        normalized_square,
        below_decay_bound: below,
        central_binomial_standard_holds: standard_holds,
        central_binomial_variant_holds: variant_holds,
    })
}

/// Combines a certified-true and a certified-false test over the `π` interval.
fn decide(certainly_holds: bool, certainly_fails: bool) -> bool {
    assert!(
        certainly_holds != certainly_fails,
        "π interval too wide to decide comparison"
    );
    certainly_holds
}
