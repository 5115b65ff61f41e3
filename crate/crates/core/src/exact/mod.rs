//! Exact arithmetic over ℚ: rationals, dense matrices, polynomials.

mod forms;
mod matrix;
mod multipoly;
mod poly;
mod rational;

pub use forms::{LinForm, LinFormMatrix};
pub use matrix::RatMatrix;
pub use multipoly::{char_poly_poly_entries, CharPoly, MultiPoly, PolyMatrix};
pub use poly::{twisted_euler_cubic, UniPoly};
pub use rational::{binomial, format_rational, parse_rational, rat, ratio, to_i64, JsonRational, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}
