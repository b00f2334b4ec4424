//! The catalog of identities and the verification driver.

pub mod catalog;
pub mod closed;
pub mod identity;
pub mod verify;

pub use catalog::{catalog, find, wei_t_printed};
pub use closed::{evaluate_closed_form, evaluate_detailed, ClosedForm, ClosedValue, ConstKind};
pub use identity::{parse_binding, Constraint, Identity, IdentityKind, Lhs, Param, RegistryRecord};
pub use verify::{limit_errors, sweep, verify, verify_all, verify_identity, Status, VerificationReport};
