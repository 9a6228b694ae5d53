pub mod automorphism;
pub mod calculus;
pub mod curves;
pub mod error;
pub mod fibration;
pub mod homology;
pub mod parse;
pub mod realize;
pub mod surface;
pub mod twist;
pub mod word;

pub use error::{Error, Result};
