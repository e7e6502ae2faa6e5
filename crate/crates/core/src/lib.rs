//! Exact solvers for the fractional knapsack problem and its inverse.
//!
//! Given items, a budget and a 0/1 target vector `x*`, the inverse problem
//! asks for the cheapest integer changes to profits and costs (within
//! per-item caps) that make `x*` an optimal fractional solution. This crate
//! provides:
//!
//! * [`fkp`]: greedy forward solver and the optimality test,
//! * [`inverse_l1`]: profit-only inverse problem under a weighted l1 cost,
//! * [`inverse_linf`]: inverse problem under the l-infinity cost,
//! * [`reduction`]: the Partition gadget showing the general l1 case is hard,
//! * [`oracle`]: exhaustive ground-truth solvers,
//! * [`io`], [`generate`], [`bench`]: files, seeded generators, timing.
//!
//! All arithmetic is exact.

pub mod bench;
pub mod error;
pub mod fixtures;
pub mod fkp;
pub mod generate;
pub mod inverse_l1;
pub mod inverse_linf;
pub mod io;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod reduction;

pub use error::{Error, Result};
pub use fkp::{check_optimality, solve_greedy, OptimalityReport, Verdict};
pub use inverse_l1::{solve_fifkp, CandidateMode};
pub use inverse_linf::{feasible_at, solve_linf, CaseKind};
pub use model::{
    apply_modifications, BinarySolution, CostWeights, FkpInstance, FractionalSolution,
    InverseInstance, InverseSolution, Item, ModificationBounds, ModificationVector, Norm,
};
pub use oracle::{brute_fkp, brute_inverse, OracleConfig};
pub use rational::Rational;
