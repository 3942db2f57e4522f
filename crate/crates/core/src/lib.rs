//! Exact computation of the class of caustics by reflection of plane curves.

pub mod arith;
pub mod caustic;
pub mod curve;
pub mod error;
pub mod parse;
pub mod puiseux;

pub use error::{CausticError, Fail, Res};
