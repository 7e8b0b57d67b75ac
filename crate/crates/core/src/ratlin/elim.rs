//! Exact Gaussian elimination: rank, kernels, minimal circuits.

use crate::ratlin::point::{Matrix, Point};
use crate::scalar::Scalar;

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row, in order.
pub(crate) fn rref<T: Scalar>(a: &mut [Vec<T>]) -> Vec<usize> {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = T::one().div_ref(&a[r][c]);
        for x in a[r].iter_mut().skip(c) {
            *x = x.mul_ref(&inv);
        }
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                x.sub_mul_assign(&f, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Dimension of the row span.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut a = m.to_dense();
    rref(&mut a).len()
}

/// Basis of `{λ : Σ λ_i m_i = 0}` where `m_i` are the rows of `m`.
///
/// Each basis vector has a 1 at one free generator index and zeros at
/// the other free indices, as produced by back substitution.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Vec<Point<T>> {
    let k = m.n_rows();
    let mut a = m.transpose().to_dense();
    if a.is_empty() {
        // zero-dimensional ambient space: every generator is zero
        return (0..k).map(|i| Point::unit(k, i)).collect();
    }
    let pivots = rref(&mut a);
    let mut is_pivot = vec![false; k];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..k)
        .filter(|&f| !is_pivot[f])
        .map(|f| kernel_vector(&a, &pivots, f, k))
        .collect()
}

fn kernel_vector<T: Scalar>(rref: &[Vec<T>], pivots: &[usize], free: usize, k: usize) -> Point<T> {
    let mut v = vec![T::zero(); k];
    v[free] = T::one();
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = -rref[r][free].clone();
    }
    Point::new(v)
}

/// An inclusion-minimal dependent subset with its dependence coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit<T> {
    /// Generator indices, ascending.
    pub indices: Vec<usize>,
    /// `coefficients[k]` multiplies `gens[indices[k]]`; all nonzero, first is `+1`.
    pub coefficients: Vec<T>,
}

/// Finds a minimal circuit among `gens`, or `None` if they are independent.
///
/// The circuit is the support of the kernel vector attached to the first
/// free column of the elimination, i.e. the first generator lying in the
/// span of its predecessors together with the predecessors it needs.
/// Coefficients are scaled so the lowest-index one is `+1`.
pub fn minimal_circuit<T: Scalar>(gens: &[Point<T>]) -> Option<Circuit<T>> {
    let k = gens.len();
    if k == 0 {
        return None;
    }
    let dim = gens[0].dim();
    if let Some(z) = gens.iter().position(Point::is_zero) {
        // a zero vector is a circuit on its own
        return Some(Circuit {
            indices: vec![z],
            coefficients: vec![T::one()],
        });
    }
    let mut a: Vec<Vec<T>> = (0..dim)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    let pivots = rref(&mut a);
    let mut is_pivot = vec![false; k];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free = (0..k).find(|&f| !is_pivot[f])?;
    let v = kernel_vector(&a, &pivots, free, k);
    let indices: Vec<usize> = (0..k).filter(|&i| !v[i].is_zero()).collect();
    let lead = v[indices[0]].clone();
    let coefficients = indices.iter().map(|&i| v[i].div_ref(&lead)).collect();
    Some(Circuit {
        indices,
        coefficients,
    })
}
