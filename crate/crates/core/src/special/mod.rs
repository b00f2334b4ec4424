//! Special functions and named constants.

pub mod bernoulli;
pub mod combinat;
pub mod constants;
pub mod gamma;
pub mod polygamma;

pub use bernoulli::bernoulli;
pub use combinat::{binomial, gen_harmonic, harmonic, pochhammer, HarmonicKind};
pub use constants::{constant, constant_prec, cross_check, ConstantName};
pub use gamma::{gamma, gamma_prec};
pub use polygamma::{digamma, polygamma, polygamma_prec};
