//! Exact travelling-wave workbench.
//!
//! The crate is `no_std` with `alloc`. It contains:
//!
//! * [`symcore`]: exact rationals, multivariate polynomials over named
//!   parameters and rational functions in `E = exp(alpha * xi)`.
//! * [`model`]: the hyperbolic transport equation
//!   `tau*u_tt + A*u*u_x + B*u_t - kappa*u_xx = sum lambda_nu * u^nu`
//!   and its travelling frames.
//! * [`reducer`]: substitution of an exp-rational ansatz, collection of
//!   the algebraic system, exact verification, numeric solving and
//!   residual scanning of closed-form profiles.
//! * [`catalog`]: the published solution families with a verification
//!   harness that adjudicates each printed condition table.
//! * [`hydro`]: phase-plane analysis of the travelling-wave reduction of a
//!   nonlocal hydrodynamic model.
//!
//! IO, file formats and the command line live in the `twkit` crate.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod catalog;
pub mod hydro;
pub mod model;
pub mod reducer;
pub mod symcore;

mod linalg;
mod ode;
mod quad;
mod roots;

pub use symcore::{Assignment, EPoly, ExpRational, ParamPoly, Rational, Value};
