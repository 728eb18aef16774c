pub mod algebra;
pub mod arith;
pub mod braid;
pub mod error;
pub mod invariants;
pub mod tensor;

pub use error::{Error, Result};
