//! Exact arithmetic: rationals, polynomials, rational functions, the cubic
//! extension holding `n^(-1/3)`, and exact linear solving.

pub mod cubic;
pub mod gcd;
pub mod json;
pub mod linsolve;
pub mod mpoly;
pub mod rat;
pub mod ratfn;

pub use cubic::CubicExt;
pub use gcd::gcd;
pub use linsolve::{solve_linear_exact, ExactMatrix, LinearSolution, SparseSystem};
pub use mpoly::{mpoly_arith, ArithKind, MPoly, Monomial, Vars};
pub use rat::{format_rat, parse_rat, rat, ratio, Rat};
pub use ratfn::{ratfn_eval, ratfn_normalize, ratfn_sum, swap_xz, RatFn};
