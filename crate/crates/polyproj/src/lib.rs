pub mod duals;
pub mod error;
pub mod angles;
pub mod bounds;
pub mod cli;
pub mod experiments;
pub mod exponents;
pub mod linprog;
pub mod quad;
pub mod specfun;
pub mod thresholds;

pub use error::{Error, Result};
pub use exponents::{ExponentPoint, Family};
