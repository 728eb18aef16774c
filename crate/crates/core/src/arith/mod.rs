//! Exact scalars and dense matrices.

mod laurent;
mod matrix;
mod rational;
mod ring;
pub mod sample;

pub use laurent::LaurentPoly;
pub use matrix::RingMatrix;
pub use rational::Rational;
pub use ring::Ring;
