//! High-precision evaluation of the E-Harmonic family of approximations to
//! the Euler-Mascheroni constant, together with the tooling to measure how
//! fast each approximation converges.

pub mod error;
pub mod precision;

pub use error::{Error, Result};
pub use precision::{make_context, PrecisionContext, Real};
pub mod analysis;
pub mod formulas;
pub mod report;

pub use analysis::{ConvergenceReport, TableCheckResult};
pub use formulas::{Approximation, FormulaId};
