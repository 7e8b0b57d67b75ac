//! Exact phase-1 simplex for `A x = b, x ≥ 0`.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! leaving basic variable among ratio-test ties), so the method terminates on
//! degenerate systems without any perturbation.
//!
//! [`solve_phase_one`] runs an integer-preserving tableau: rows are scaled to
//! integers and every pivot divides exactly by the previous pivot, so stored
//! entries stay minors of the input. It runs on `i64`, retries on `i128` and
//! finally on `BigInt` if an intermediate overflows. [`solve_phase_one_rational`]
//! is the plain fraction tableau with the same pivot sequence, kept as an
//! independent reference.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlin::point::{Matrix, Point};
use crate::scalar::Scalar;

/// A standard-form system `A x = b, x ≥ 0`.
#[derive(Clone, Debug)]
pub struct StandardForm<T> {
    /// Dense constraint rows, each of length `n_vars`.
    pub rows: Vec<Vec<T>>,
    pub rhs: Vec<T>,
    pub n_vars: usize,
}

impl<T: Scalar> StandardForm<T> {
    pub fn new(a: &Matrix<T>, b: &Point<T>) -> Result<Self> {
        if a.n_rows() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.n_rows(),
                found: b.dim(),
            });
        }
        Ok(Self {
            rows: a.to_dense(),
            rhs: b.coords().to_vec(),
            n_vars: a.n_cols(),
        })
    }

    /// Checks a candidate solution exactly.
    pub fn is_satisfied_by(&self, x: &[T]) -> bool {
        x.len() == self.n_vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().zip(self.rhs.iter()).all(|(row, b)| {
                let lhs = row
                    .iter()
                    .zip(x.iter())
                    .fold(T::zero(), |acc, (a, v)| acc.add_ref(&a.mul_ref(v)));
                lhs == *b
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<T> {
    Feasible(Vec<T>),
    Infeasible,
}

impl<T> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[T]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides feasibility of `A x = b, x ≥ 0`; returns an exact witness when feasible.
pub fn lp_feasible<T: Scalar>(a: &Matrix<T>, b: &Point<T>) -> Result<Feasibility<T>> {
    Ok(solve_phase_one(StandardForm::new(a, b)?))
}

/// Phase-1 simplex on the integer-preserving tableau.
pub fn solve_phase_one<T: Scalar>(sys: StandardForm<T>) -> Feasibility<T> {
    let (rows, rhs) = integer_rows(&sys);
    let outcome = try_tier::<i64>(&rows, &rhs)
        .or_else(|| try_tier::<i128>(&rows, &rhs))
        .unwrap_or_else(|| {
            integer_phase_one::<BigInt>(rows, rhs).expect("BigInt arithmetic cannot overflow")
        });
    match outcome {
        None => Feasibility::Infeasible,
        Some((values, divisor)) => {
            let x = values
                .into_iter()
                .map(|v| {
                    let g = v.gcd(&divisor);
                    if g.is_zero() {
                        T::zero()
                    } else {
                        T::from_bigint_pair(&v / &g, &divisor / &g)
                    }
                })
                .collect();
            Feasibility::Feasible(x)
        }
    }
}

type Solution = Option<(Vec<BigInt>, BigInt)>;

fn try_tier<I: TableauInt>(rows: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Solution> {
    let rows: Vec<Vec<I>> = rows
        .iter()
        .map(|r| r.iter().map(I::from_big).collect::<Option<Vec<I>>>())
        .collect::<Option<_>>()?;
    let rhs: Vec<I> = rhs.iter().map(I::from_big).collect::<Option<_>>()?;
    integer_phase_one(rows, rhs)
}

/// Scales each row (with its right-hand side) by the lcm of its denominators
/// and makes the right-hand side nonnegative.
fn integer_rows<T: Scalar>(sys: &StandardForm<T>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(sys.rows.len());
    let mut rhs = Vec::with_capacity(sys.rows.len());
    for (row, b) in sys.rows.iter().zip(sys.rhs.iter()) {
        let pairs: Vec<(BigInt, BigInt)> = row.iter().map(Scalar::to_bigint_pair).collect();
        let b = b.to_bigint_pair();
        let lcm = pairs
            .iter()
            .chain(std::iter::once(&b))
            .fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
        let sign = if b.0.is_negative() { -BigInt::one() } else { BigInt::one() };
        rows.push(
            pairs
                .into_iter()
                .map(|(n, d)| n * (&lcm / d) * &sign)
                .collect(),
        );
        rhs.push(b.0 * (&lcm / &b.1) * &sign);
    }
    (rows, rhs)
}

/// Integer arithmetic used by the tableau; `None` signals overflow.
trait TableauInt: Clone + Ord + Zero {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    /// `(a·b − c·e) / div`, exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, e: &Self, div: &Self) -> Option<Self>;
    fn mul_checked(a: &Self, b: &Self) -> Option<Self>;
    fn add_checked(a: &Self, b: &Self) -> Option<Self>;
    fn neg_checked(a: &Self) -> Option<Self>;
    fn is_neg(&self) -> bool;
    fn is_pos(&self) -> bool;
}

macro_rules! impl_tableau_int {
    ($t:ty) => {
        impl TableauInt for $t {
            fn from_big(v: &BigInt) -> Option<Self> {
                <$t>::try_from(v).ok()
            }
            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
            #[inline]
            fn cross_div(a: &Self, b: &Self, c: &Self, e: &Self, div: &Self) -> Option<Self> {
                let lhs = a.checked_mul(*b)?;
                let rhs = c.checked_mul(*e)?;
                let num = lhs.checked_sub(rhs)?;
                debug_assert_eq!(num % div, 0, "inexact tableau division");
                Some(num / div)
            }
            fn mul_checked(a: &Self, b: &Self) -> Option<Self> {
                a.checked_mul(*b)
            }
            fn add_checked(a: &Self, b: &Self) -> Option<Self> {
                a.checked_add(*b)
            }
            fn neg_checked(a: &Self) -> Option<Self> {
                a.checked_neg()
            }
            fn is_neg(&self) -> bool {
                *self < 0
            }
            fn is_pos(&self) -> bool {
                *self > 0
            }
        }
    };
}

impl_tableau_int!(i64);
impl_tableau_int!(i128);

impl TableauInt for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, e: &Self, div: &Self) -> Option<Self> {
        Some((a * b - c * e) / div)
    }
    fn mul_checked(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn add_checked(a: &Self, b: &Self) -> Option<Self> {
        Some(a + b)
    }
    fn neg_checked(a: &Self) -> Option<Self> {
        Some(-a)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
}

/// Integer-preserving phase 1. The true tableau is `stored / divisor`.
///
/// Outer `None`: overflow in this integer type. Inner `None`: infeasible.
/// Otherwise the basic solution as `(numerators, divisor)`.
fn integer_phase_one<I: TableauInt>(mut rows: Vec<Vec<I>>, mut rhs: Vec<I>) -> Option<Solution> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of "minimize Σ artificials" and the negated objective.
    let mut cost = vec![I::zero(); n];
    let mut neg_obj = I::zero();
    for (row, b) in rows.iter().zip(rhs.iter()) {
        for (c, a) in cost.iter_mut().zip(row.iter()) {
            *c = I::add_checked(c, &I::neg_checked(a)?)?;
        }
        neg_obj = I::add_checked(&neg_obj, &I::neg_checked(b)?)?;
    }
    let mut divisor = I::from_big(&BigInt::one())?;

    loop {
        if neg_obj.is_zero() {
            break;
        }
        let Some(enter) = cost.iter().position(I::is_neg) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !rows[i][enter].is_pos() {
                continue;
            }
            leave = Some(match leave {
                None => i,
                Some(k) => {
                    // rhs_i / a_ie  vs  rhs_k / a_ke, both pivots positive
                    let lhs = I::mul_checked(&rhs[i], &rows[k][enter])?;
                    let rhs_k = I::mul_checked(&rhs[k], &rows[i][enter])?;
                    if lhs < rhs_k || (lhs == rhs_k && basis[i] < basis[k]) {
                        i
                    } else {
                        k
                    }
                }
            });
        }
        let p = leave.expect("phase-1 objective is bounded below");
        let pivot = rows[p][enter].clone();

        let (head, tail) = rows.split_at_mut(p);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        let pivot_rhs = rhs[p].clone();
        let others = head.iter_mut().chain(tail.iter_mut());
        let other_rhs = (0..m).filter(|&i| i != p);
        for (row, i) in others.zip(other_rhs) {
            let f = row[enter].clone();
            eliminate(row, pivot_row, &pivot, &f, &divisor)?;
            rhs[i] = I::cross_div(&rhs[i], &pivot, &f, &pivot_rhs, &divisor)?;
        }
        let f = cost[enter].clone();
        eliminate(&mut cost, pivot_row, &pivot, &f, &divisor)?;
        neg_obj = I::cross_div(&neg_obj, &pivot, &f, &pivot_rhs, &divisor)?;
        divisor = pivot;
        basis[p] = enter;
    }

    if !neg_obj.is_zero() {
        return Some(None);
    }
    let mut values = vec![BigInt::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            values[v] = rhs[i].to_big();
        }
    }
    Some(Some((values, divisor.to_big())))
}

#[inline]
fn eliminate<I: TableauInt>(row: &mut [I], pivot_row: &[I], pivot: &I, f: &I, divisor: &I) -> Option<()> {
    for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
        if x.is_zero() && (p.is_zero() || f.is_zero()) {
            continue;
        }
        *x = I::cross_div(x, pivot, f, p, divisor)?;
    }
    Some(())
}

/// Fraction-tableau phase 1 with Bland's rule, normalizing after every pivot.
pub fn solve_phase_one_rational<T: Scalar>(sys: StandardForm<T>) -> Feasibility<T> {
    let StandardForm {
        mut rows,
        mut rhs,
        n_vars,
    } = sys;
    let m = rows.len();

    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            *b = -b.clone();
        }
    }

    // Artificials are numbered n_vars + row and never re-enter, so their
    // columns are not stored.
    let mut basis: Vec<usize> = (n_vars..n_vars + m).collect();
    let mut cost: Vec<T> = (0..n_vars)
        .map(|j| rows.iter().fold(T::zero(), |acc, r| acc.sub_ref(&r[j])))
        .collect();
    let mut neg_obj: T = rhs.iter().fold(T::zero(), |acc, b| acc.sub_ref(b));

    let mut pivot_support: Vec<usize> = Vec::with_capacity(n_vars);
    loop {
        if neg_obj.is_zero() {
            break;
        }
        let Some(enter) = cost.iter().position(|c| c.is_negative()) else {
            break;
        };

        let mut leave: Option<(usize, T)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = rhs[i].div_ref(&row[enter]);
            leave = match leave {
                Some((li, lr)) if !(ratio < lr || (ratio == lr && basis[i] < basis[li])) => {
                    Some((li, lr))
                }
                _ => Some((i, ratio)),
            };
        }
        let (p, _) = leave.expect("phase-1 objective is bounded below");

        let inv = T::one().div_ref(&rows[p][enter]);
        pivot_support.clear();
        for (j, x) in rows[p].iter_mut().enumerate() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
                pivot_support.push(j);
            }
        }
        rhs[p] = rhs[p].mul_ref(&inv);

        let (head, tail) = rows.split_at_mut(p);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        let (rhs_head, rhs_tail) = rhs.split_at_mut(p);
        let (pivot_rhs, rhs_tail) = rhs_tail.split_first_mut().expect("pivot rhs exists");
        for (row, b) in head
            .iter_mut()
            .zip(rhs_head.iter_mut())
            .chain(tail.iter_mut().zip(rhs_tail.iter_mut()))
        {
            let f = row[enter].clone();
            if f.is_zero() {
                continue;
            }
            for &j in &pivot_support {
                row[j].sub_mul_assign(&f, &pivot_row[j]);
            }
            b.sub_mul_assign(&f, pivot_rhs);
        }
        let f = cost[enter].clone();
        for &j in &pivot_support {
            cost[j].sub_mul_assign(&f, &pivot_row[j]);
        }
        neg_obj.sub_mul_assign(&f, pivot_rhs);
        basis[p] = enter;
    }

    if !neg_obj.is_zero() {
        return Feasibility::Infeasible;
    }
    let mut x = vec![T::zero(); n_vars];
    for (i, &v) in basis.iter().enumerate() {
        if v < n_vars {
            x[v] = rhs[i].clone();
        }
    }
    Feasibility::Feasible(x)
}

/// The system `Σ λ_k p_k = target, Σ λ_k = 1, λ ≥ 0`.
pub fn convex_combination_system<T: Scalar>(points: &[&Point<T>], target: &Point<T>) -> StandardForm<T> {
    let dim = target.dim();
    let n = points.len();
    let mut rows: Vec<Vec<T>> = (0..dim)
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect();
    rows.push(vec![T::one(); n]);
    let mut rhs = target.coords().to_vec();
    rhs.push(T::one());
    StandardForm {
        rows,
        rhs,
        n_vars: n,
    }
}

/// Is `target` a convex combination of `points`? Returns the weights if so.
pub fn convex_combination<T: Scalar>(points: &[&Point<T>], target: &Point<T>) -> Feasibility<T> {
    solve_phase_one(convex_combination_system(points, target))
}
