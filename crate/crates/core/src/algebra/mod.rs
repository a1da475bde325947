//! Exact and certified number arithmetic.

pub mod ball;
pub mod contfrac;
pub mod pisot;
pub mod surd;
pub mod unit;

pub use ball::{Ball, ComplexBall};
pub use contfrac::{negative_cf, NegativeCf};
pub use pisot::{complete_homogeneous, GeneralPisot, DEFAULT_BITS};
pub use surd::QuadraticSurd;
pub use unit::{PisotQuadraticUnit, UnitSign};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
