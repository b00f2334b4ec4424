pub mod congruence;
pub mod error;
pub mod numeric;
pub mod registry;
pub mod report;
pub mod series;
pub mod special;

pub use error::{Error, Result};
