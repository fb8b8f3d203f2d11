//! Exact q-deformed Picard-Lefschetz theory: Laurent polynomial matrices,
//! the q-intersection data of Lefschetz fibrations, basis moves and Dehn
//! twists, and the algebraic obstructions to Lagrangian spheres.

pub mod catalog;
pub mod error;
pub mod io;
pub mod laurent;
pub mod lefschetz;
pub mod matrix;
pub mod moves;
pub mod obstructions;

pub use error::{Error, Result};
pub use io::{render, ClassSpecFile, FibrationFile};
pub use laurent::LaurentPoly;
pub use lefschetz::{ClassicalData, DoubleCover, LefschetzAlgebra};
pub use matrix::{IntMatrix, KClass, LaurentMatrix};
pub use moves::{Move, TwistLetter, TwistWord};
pub use obstructions::{SphereTestResult, SphereVerdict};
