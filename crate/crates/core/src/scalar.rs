//! Exact ordered-field scalars.
//!
//! All linear algebra in this crate is written against [`Scalar`], which is
//! implemented for the arbitrary-precision [`BigRational`] (the default,
//! re-exported as [`crate::Rational`]) and for the machine-word rationals
//! `Ratio<i64>` / `Ratio<i128>`. The machine-word variants are exact as long
//! as no intermediate overflows; they exist for small fixtures and
//! cross-checks, not for the certified paths.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed};

/// An exact ordered field with by-reference arithmetic.
pub trait Scalar:
    Clone + Ord + Num + Signed + Debug + Display + FromStr + Send + Sync + 'static
{
    fn from_frac(numer: i64, denom: i64) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.sub_ref(&a.mul_ref(b));
    }

    fn from_int(n: i64) -> Self {
        Self::from_frac(n, 1)
    }

    fn half() -> Self {
        Self::from_frac(1, 2)
    }

    fn is_integral(&self) -> bool;

    /// Numerator and positive denominator in lowest terms.
    fn to_bigint_pair(&self) -> (BigInt, BigInt);

    /// `numer / denom`; panics if the value does not fit the representation.
    fn from_bigint_pair(numer: BigInt, denom: BigInt) -> Self;
}

macro_rules! impl_scalar_for_ratio {
    ($t:ty, $int:ty, $conv:expr, $back:expr) => {
        impl Scalar for $t {
            fn from_frac(numer: i64, denom: i64) -> Self {
                let conv = $conv;
                Ratio::new(conv(numer), conv(denom))
            }
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn div_ref(&self, rhs: &Self) -> Self {
                self / rhs
            }
            fn is_integral(&self) -> bool {
                self.denom().is_one()
            }
            fn to_bigint_pair(&self) -> (BigInt, BigInt) {
                (BigInt::from(self.numer().clone()), BigInt::from(self.denom().clone()))
            }
            fn from_bigint_pair(numer: BigInt, denom: BigInt) -> Self {
                let back = $back;
                Ratio::new(back(numer), back(denom))
            }
        }
    };
}

impl_scalar_for_ratio!(BigRational, BigInt, BigInt::from, |v: BigInt| v);
impl_scalar_for_ratio!(Ratio<i64>, i64, |v: i64| v, |v: BigInt| {
    i64::try_from(v).expect("value exceeds i64")
});
impl_scalar_for_ratio!(Ratio<i128>, i128, |v: i64| v as i128, |v: BigInt| {
    i128::try_from(v).expect("value exceeds i128")
});

/// `1` if positive, `-1` if negative, `0` otherwise.
pub fn sign<T: Scalar>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact `a / b` over integers.
pub fn ratio<T: Scalar>(numer: i64, denom: i64) -> T {
    T::from_frac(numer, denom)
}

/// Converts an unsigned count into a scalar.
pub fn from_u64<T: Scalar>(n: u64) -> T {
    T::from_int(i64::try_from(n).expect("count exceeds i64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn frac_is_reduced() {
        let x: BigRational = Scalar::from_frac(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        let y: Ratio<i64> = Scalar::from_frac(4, 2);
        assert_eq!(y.to_string(), "2");
        assert!(y.is_integral());
    }

    #[test]
    fn sub_mul_assign_matches_owned_ops() {
        let mut x: BigRational = Scalar::from_frac(1, 3);
        x.sub_mul_assign(&Scalar::from_frac(1, 2), &Scalar::from_frac(2, 3));
        assert_eq!(x, BigRational::zero());
    }
}
