pub mod bridge;
pub mod clifford;
pub mod dirac;
pub mod error;
pub mod exec;
pub mod liealg;
pub mod numlin;
pub mod random;
pub mod spheremodel;

pub use error::{Error, Result};
pub use exec::Exec;
pub use numlin::{ComplexMatrix, C64};
