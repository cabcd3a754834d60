pub mod cli;
pub mod error;
pub mod harrison;
pub mod homcat;
pub mod intmat;
pub mod laurent;
mod monomial_solve;
pub mod quasibialgebra;
pub mod quasitriangular;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
