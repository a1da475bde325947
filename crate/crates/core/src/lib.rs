pub mod algebra;
pub mod beta;
pub mod dimension;
pub mod error;
pub mod format;
pub mod interval;
pub mod limsup;
pub mod spectrum;
pub mod verify;
pub mod words;

pub use algebra::{
    Ball, BigInt, BigRational, GeneralPisot, PisotQuadraticUnit, QuadraticSurd, UnitSign,
};
pub use error::{Error, Result};
