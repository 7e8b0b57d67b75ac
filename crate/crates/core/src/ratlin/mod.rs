//! Exact rational linear algebra and LP feasibility.

pub mod elim;
pub mod lp;
pub mod point;

pub use elim::{kernel_basis, minimal_circuit, rank, Circuit};
pub use lp::{
    convex_combination, convex_combination_system, lp_feasible, solve_phase_one,
    solve_phase_one_rational, Feasibility, StandardForm,
};
pub use point::{rat_string, Matrix, Point};
