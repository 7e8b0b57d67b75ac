//! Exact constructions around half-integral polytopes.
//!
//! * [`xi`]: a half-integral polytope family with a sparse cut across the
//!   middle of the cube, with closed-form counts.
//! * [`zonotope`]: generator algebra for zonotopes and recognition of
//!   half-integral zonotopes as graphical zonotopes of degree-≤2 graphs.
//! * [`flows`]: explicit multicommodity routings whose congestion certifies
//!   lower bounds on edge expansion.
//! * [`graphs`], [`skeleton`], [`ratlin`]: exact cut analysis, LP-based
//!   polytope skeletons and rational linear algebra underneath.
//!
//! Every computation is exact. The linear algebra is generic over
//! [`Scalar`]; the rest of the crate works with the arbitrary-precision
//! aliases below.

pub mod error;
pub mod flows;
pub mod graphs;
pub mod ratlin;
pub mod scalar;
pub mod skeleton;
pub mod xi;
pub mod zonotope;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;
/// A point of `Q^d`.
pub type RatPoint = ratlin::Point<Rational>;
/// A dense rational matrix.
pub type RatMatrix = ratlin::Matrix<Rational>;
