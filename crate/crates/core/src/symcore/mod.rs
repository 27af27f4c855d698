//! Exact computer-algebra kernel.
//!
//! Coefficients are exact rationals; floats only appear when a value is
//! evaluated at a float point. Half-integer powers never reach this layer.

mod exprat;
mod poly;
pub mod rational;
mod text;
mod value;

use alloc::string::String;

pub use exprat::{BoundRational, EPoly, ExpRational, E_VAR};
pub use poly::{CompiledPoly, Monomial, ParamPoly};
pub use rational::Rational;
pub use text::{parse_exp_rational, parse_poly};
pub use value::{Assignment, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no value for parameter `{0}`")]
    MissingParameter(String),
    #[error("denominator vanishes at the evaluation point")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
