//! Series evaluation: exact terms, finite sums, tolerance-driven sums with
//! rigorous tail bounds, and parameter derivatives through dual numbers.

pub mod expr;
pub mod field;
pub mod spec;
pub mod sum;

pub use expr::{k, num, q, sym, Bindings, Expr};
pub use field::{dual_pochhammer, Dual, Field, Fraction, Poly, RatFunc};
pub use spec::{HarmonicCombo, HarmonicTerm, PochFactor, TermSpec, WeightPart};
pub use sum::{derivative_series, derivative_series_detailed, sum_terminating, sum_to_digits, term, SumResult};
