//! Numerical toolkit for the two-parameter weight sequences `M_p = p^(tau * p^sigma)`
//! (`tau > 0`, `sigma > 1`), the function classes they control, and the phase-space
//! transforms acting on those classes.
//!
//! The crate is organized around five compute modules and a reporting layer:
//!
//! * [`weights`] — overflow-safe log-domain evaluation of the sequences and
//!   numerical verification of their structural inequalities,
//! * [`lambertw`] — principal-branch Lambert W with certified residuals,
//! * [`associated`] — the associated function `T(x) = sup_p ln(x^p / M_p)`, its
//!   Lambert-type sandwich bounds, and the weight-matrix spot checks,
//! * [`testfn`] — analytic test functions with exact derivative oracles, seminorm
//!   tables, and membership-parameter fitting,
//! * [`tfr`] — Grossmann-Royer, short-time Fourier, Wigner, and ambiguity
//!   transforms behind a common kernel trait, with property verification,
//! * [`report`] / [`verify`] — machine-readable check records and the named
//!   verification suites driven by the CLI.
//!
//! All sequence arithmetic is done on `ln M_p`; the sequences themselves overflow
//! `f64` near `p = 40` already for `tau = 1`, `sigma = 2`.

// Parameter guards use the negated form on purpose: `!(x > 0.0)` rejects NaN,
// `x <= 0.0` accepts it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod associated;
pub mod lambertw;
pub mod report;
pub mod testfn;
pub mod tfr;
pub mod verify;
pub mod weights;

pub use weights::{LogWeightTable, WeightParams};
