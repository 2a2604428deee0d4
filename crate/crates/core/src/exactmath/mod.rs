//! Exact rational, polynomial, rational-function and ε-polynomial arithmetic.

mod epspoly;
mod intpoly;
mod poly;
mod ratfunc;
mod rational;
mod scalar;

pub use epspoly::EpsPoly;
pub use intpoly::IntPoly;
pub use poly::{Poly, Var};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial variables differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("cannot parse number: {0:?}")]
    Parse(String),
}
