//! Exact scalars: rationals and rational functions in one indeterminate `q`.

mod parse;
mod poly;
mod ratfunc;
mod rational;
mod scalar;

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use scalar::{FieldMode, FieldSpec, Scalar};
