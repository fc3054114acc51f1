//! Stirling's formula by way of linear difference equations.
//!
//! The crate follows the classical derivation of the Stirling series from
//! `log Γ(x+1) - log Γ(x) = log x`:
//!
//! * [`bernoulli`]: exact Bernoulli numbers and `ζ(2n)/π^{2n}`.
//! * [`euler_maclaurin`]: the operator `(e^D - 1)^{-1}` and the
//!   antidifference / summation it defines.
//! * [`charpoly`]: finite constant-coefficient operators, their roots, and
//!   the simple-root solution formula; Taylor reduction of difference
//!   operators.
//! * [`oscillatory`]: the modes attached to the roots `2kπi` of `e^z - 1`
//!   and their resummation into Bernoulli terms.
//! * [`asymptotic`]: the Stirling series in the historically flawed form and
//!   the corrected form, with optimal truncation.
//! * [`oracle`]: independent reference values.
//!
//! Constructing the solution from the zeros of `e^z - 1` alone drops the
//! `-g(x)/2` term of the Euler–Maclaurin operator; for `g = log` that is
//! the `½ log x` the flawed Stirling series is missing. The
//! [`asymptotic::discrepancy`] and
//! [`euler_maclaurin::em_antidifference_without_constant`] functions make
//! that gap measurable.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod asymptotic;
pub mod bernoulli;
pub mod charpoly;
pub mod error;
pub mod euler_maclaurin;
pub mod function;
pub mod oracle;
pub mod oscillatory;
pub mod polynomial;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use function::{Forcing, SmoothFunction};
pub use rational::Rational;
pub use report::EvalReport;
