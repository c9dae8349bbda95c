//! Almost holomorphic and vector-valued modular forms of symmetric-power
//! type, real-analytic Eisenstein series, and a registry of numerical and
//! exact identity checks between them.

pub mod cli;
pub mod eisenstein;
pub mod error;
pub mod identities;
pub mod qyseries;
pub mod specfun;
pub mod symframe;

pub use error::{Error, Result};
pub use qyseries::{EvalPoint, Evaluation, ScalarExpansion};
pub use specfun::C64;
