//! Exact computations with finite complex reflection groups and their good
//! normal subgroups.

pub mod arrangement;
pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod linalg;
pub mod polynomials;
pub mod presentations;
pub mod quotients;

pub use cyclotomic::{CycNum, Rational};
pub use error::{Error, Result};
pub use groups::MatGroup;
pub use linalg::Mat;
pub use polynomials::MPoly;
