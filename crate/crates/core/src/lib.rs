//! Symbolic-numeric workbench for exact traveling-wave solutions of the
//! modified Degasperis–Procesi (mDP) equation
//!
//! ```text
//! u_t - u_xxt + (b+1) u^2 u_x = b u_x u_xx + u u_xxx
//! ```
//!
//! The crate builds the closed-form solution families, checks them by exact
//! symbolic differentiation and pointwise residual evaluation, regenerates
//! the algebraic systems behind the three construction methods, audits the
//! Riccati closed forms, and cross-checks smooth solutions with an independent
//! periodic time integrator.

pub mod expr;
pub mod residual;
pub mod riccati;
pub mod zeros;
pub mod catalog;
pub mod ansatz;
pub mod sim;
pub mod cli;
