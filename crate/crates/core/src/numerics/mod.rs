//! Floating-point evaluation: Airy functions, eigenfunction values and
//! finite-difference checks of the exact identities.

pub mod airy;
pub mod check;
pub mod eval;
pub mod fd;

pub use airy::{airy_ai, AiryMethod, AiryValue};
pub use check::{fd_batch, fd_check, relative_error, residual_csv, NumericResidual, SafeSampler};
pub use eval::{eval_function, psi_value, sigma_value, NumFn};
pub use fd::{airy_ode_residual, fd_apply, DEFAULT_STEP};
