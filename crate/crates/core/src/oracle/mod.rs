//! Independent verifiers for the minimizers.
//!
//! These solve the same problems by a different route (Lagrange multipliers
//! on the saddle-point system, or an explicit parametrization of `N(T)^⊥`)
//! so that agreement with the pseudoinverse formulas is real evidence.

pub mod instances;
mod kkt;
mod refute;

pub use kkt::{kkt_solve, reduced_solve, OracleResult};
pub use refute::{feasible_directions, grid_refute, worst_increment};
