use std::fmt;
use std::marker::PhantomData;
use std::ops::Index;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of `T^d`. The dimension is fixed at construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point<T> {
    coords: Box<[T]>,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self {
            coords: coords.into_boxed_slice(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![T::zero(); dim])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut c = vec![T::zero(); dim];
        c[i] = T::one();
        Self::new(c)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| T::from_int(x)).collect())
    }

    /// Builds a point from `(numer, denom)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        Self::new(v.iter().map(|&(n, d)| T::from_frac(n, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<T> {
        self.coords.into_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim(), rhs.dim());
        Self::new(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.dim(), rhs.dim());
        Self::new(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coords.iter().map(|a| a.mul_ref(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a.clone()).collect())
    }

    pub fn dot(&self, rhs: &Self) -> T {
        self.coords
            .iter()
            .zip(rhs.coords.iter())
            .fold(T::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
    }

    pub fn sum(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, a| acc.add_ref(a))
    }

    /// `(self + rhs) / 2`
    pub fn midpoint(&self, rhs: &Self) -> Self {
        self.add(rhs).scale(&T::half())
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn first_nonzero(&self) -> Option<&T> {
        self.coords.iter().find(|c| !c.is_zero())
    }

    /// Canonical string form, e.g. `(1/2,0,1)`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn parse(items: &[impl AsRef<str>]) -> Result<Self> {
        items
            .iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<T>()
                    .map_err(|_| Error::Parse(format!("bad rational {:?}", s.as_ref())))
            })
            .collect::<Result<Vec<T>>>()
            .map(Self::new)
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<T: Scalar> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl<T: Scalar> Serialize for Point<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for c in self.coords.iter() {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

struct PointVisitor<T>(PhantomData<T>);

impl<'de, T: Scalar> Visitor<'de> for PointVisitor<T> {
    type Value = Point<T>;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an array of rational strings \"p/q\"")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Point<T>, A::Error> {
        let mut coords = Vec::new();
        while let Some(raw) = seq.next_element::<RatToken>()? {
            let v = raw
                .0
                .parse::<T>()
                .map_err(|_| de::Error::custom(format!("bad rational {:?}", raw.0)))?;
            coords.push(v);
        }
        Ok(Point::new(coords))
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Point<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_seq(PointVisitor(PhantomData))
    }
}

/// A rational token: accepts `"p/q"` strings and bare JSON integers.
struct RatToken(String);

impl<'de> Deserialize<'de> for RatToken {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TokVisitor;
        impl<'de> Visitor<'de> for TokVisitor {
            type Value = RatToken;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RatToken, E> {
                Ok(RatToken(v.to_owned()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RatToken, E> {
                Ok(RatToken(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RatToken, E> {
                Ok(RatToken(v.to_string()))
            }
        }
        deserializer.deserialize_any(TokVisitor)
    }
}

/// Serde adapter for a single scalar as a `"p/q"` string.
pub mod rat_string {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(
        v: &T,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<T, D::Error> {
        let tok = RatToken::deserialize(d)?;
        tok.0
            .parse::<T>()
            .map_err(|_| de::Error::custom(format!("bad rational {:?}", tok.0)))
    }
}

/// A dense row-major matrix; rows are points of a common dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: Vec<Point<T>>,
    cols: usize,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Point<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Point::dim);
        if let Some(bad) = rows.iter().position(|r| r.dim() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: rows[bad].dim(),
            });
        }
        Ok(Self { rows, cols })
    }

    /// An empty matrix with a known column count.
    pub fn empty(cols: usize) -> Self {
        Self {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| Point::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![Point::zeros(cols); rows],
            cols,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Point<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Point<T> {
        &self.rows[i]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| Point::new(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        Self {
            rows,
            cols: self.rows.len(),
        }
    }

    /// Sub-matrix made of the selected rows.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self {
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: self.cols,
        }
    }

    pub(crate) fn to_dense(&self) -> Vec<Vec<T>> {
        self.rows.iter().map(|r| r.coords().to_vec()).collect()
    }
}
