//! Exact rationals, binary big floats, error-carrying approximations and
//! elementary functions.

pub mod approx;
pub mod bigfloat;
pub mod elem;
pub mod rational;

pub use approx::{bits_for_digits, tolerance, with_digits, Approx};
pub use bigfloat::{BigFloat, Round};
pub use elem::{elem, ElemArg, ElemFn};
pub use rational::{int, parse_rational, rat, rat_arith, RatOp, Rational};
