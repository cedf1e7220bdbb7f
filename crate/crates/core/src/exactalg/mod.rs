//! Exact arithmetic in Q(u, w1, ..., w15), with `v = u^2` and `z_k = w_k^2`.

pub mod gcd;
pub mod monomial;
pub mod ratfun;
pub mod serial;
pub mod zpoly;

pub use monomial::{Monomial, Var, MAX_VARS};
pub use ratfun::{equal, EqualityMode, Point, RatFun, DEFAULT_PROBABILISTIC_POINTS};
pub use serial::{from_json, from_json_value, parse_human, to_human, to_json, to_json_value};
pub use zpoly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("no value given for variable {0}")]
    MissingVariable(String),
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
}
