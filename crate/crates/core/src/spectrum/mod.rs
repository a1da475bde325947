//! Discrete parts of the spectrum: integer bases and quadratic units.

pub mod forbidden;
pub mod integer;
pub mod quadratic;
