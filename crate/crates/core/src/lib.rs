//! Degroupoidification of finite groupoids and spans.
//!
//! Groupoids over a base become rational vectors indexed by isomorphism
//! classes; spans of groupoids become rational matrices. Everything is exact.

pub mod degroupoidify;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod hecke;
pub mod interchange;
pub mod oscillator;
pub mod random;
pub mod rational;
pub mod selftest;
pub mod span;

pub use error::{Error, Result};
pub use rational::Rational;
