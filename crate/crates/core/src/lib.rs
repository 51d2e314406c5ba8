//! Exact symbolic engine for full toroidal Lie algebras, their map algebras
//! over finite-dimensional coefficient algebras, and the weight modules
//! built on them.

pub mod cli;
pub mod coeffalg;
pub mod error;
pub mod exactlin;
pub mod maptoroidal;
pub mod report;
pub mod reps;
pub mod sampling;
pub mod suites;
pub mod tensormod;
pub mod toroidal;
pub mod verma;

pub use error::{Error, Result};
