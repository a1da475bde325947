use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::surd::QuadraticSurd;
use crate::error::{Error, Result};

/// Which quadratic unit family: `x^2 - b x + 1` (plus) or `x^2 - b x - 1` (minus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitSign {
    Plus,
    Minus,
}

impl UnitSign {
    /// Constant term of the minimal polynomial.
    pub fn constant(self) -> i64 {
        match self {
            UnitSign::Plus => 1,
            UnitSign::Minus => -1,
        }
    }
}

impl fmt::Display for UnitSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitSign::Plus => "plus",
            UnitSign::Minus => "minus",
        })
    }
}

impl FromStr for UnitSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(UnitSign::Plus),
            "minus" | "-" => Ok(UnitSign::Minus),
            _ => Err(Error::Parse(format!(
                "sign must be plus or minus, got {s:?}"
            ))),
        }
    }
}

/// The dominant root of `x^2 - b x + 1` (b >= 3) or `x^2 - b x - 1` (b >= 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PisotQuadraticUnit {
    pub b: u64,
    pub sign: UnitSign,
}

impl PisotQuadraticUnit {
    pub fn new(b: u64, sign: UnitSign) -> Result<Self> {
        let min = match sign {
            UnitSign::Plus => 3,
            UnitSign::Minus => 1,
        };
        if b < min {
            return Err(Error::InvalidParameter(format!(
                "b = {b} gives no Pisot unit in the {sign} family (need b >= {min})"
            )));
        }
        Ok(PisotQuadraticUnit { b, sign })
    }

    pub fn plus(b: u64) -> Result<Self> {
        Self::new(b, UnitSign::Plus)
    }

    pub fn minus(b: u64) -> Result<Self> {
        Self::new(b, UnitSign::Minus)
    }

    /// `b^2 - 4` or `b^2 + 4`.
    pub fn discriminant(&self) -> u64 {
        match self.sign {
            UnitSign::Plus => self.b * self.b - 4,
            UnitSign::Minus => self.b * self.b + 4,
        }
    }

    pub fn radicand(&self) -> u64 {
        QuadraticSurd::sqrt(self.discriminant()).radicand()
    }

    pub fn alpha(&self) -> QuadraticSurd {
        let half = BigRational::new(1.into(), 2.into());
        (QuadraticSurd::sqrt(self.discriminant()) + QuadraticSurd::from_int(self.b as i64))
            .scale(&half)
    }

    /// The conjugate root `b - alpha`, equal to `1/alpha` or `-1/alpha`.
    pub fn alpha2(&self) -> QuadraticSurd {
        QuadraticSurd::from_int(self.b as i64) - self.alpha()
    }

    /// `alpha - alpha2 = sqrt(discriminant)`.
    pub fn alpha_gap(&self) -> QuadraticSurd {
        QuadraticSurd::sqrt(self.discriminant())
    }

    pub fn alpha_pow(&self, n: i64) -> QuadraticSurd {
        self.alpha().pow(n)
    }

    /// The unit `alpha^2`, which always lies in the plus family with trace `b^2 + 2`
    /// in the minus case.
    pub fn squared(&self) -> PisotQuadraticUnit {
        let c = self.sign.constant();
        // alpha^2 + alpha2^2 = b^2 - 2 * (alpha * alpha2)
        let t = (self.b * self.b) as i64 - 2 * c;
        PisotQuadraticUnit {
            b: t as u64,
            sign: UnitSign::Plus,
        }
    }

    /// Recurrence `s_n = u_{n+1} - b u_n + c u_{n-1}` coefficients `(1, -b, c)`.
    pub fn recurrence(&self) -> [i64; 3] {
        [1, -(self.b as i64), self.sign.constant()]
    }
}

impl fmt::Display for PisotQuadraticUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quad:{}:{}", self.b, self.sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_satisfy_min_poly() {
        for b in 3..15 {
            for sign in [UnitSign::Plus, UnitSign::Minus] {
                let u = PisotQuadraticUnit::new(b, sign).unwrap();
                let a = u.alpha();
                let bb = QuadraticSurd::from_int(b as i64);
                let c = QuadraticSurd::from_int(sign.constant());
                assert!((&a * &a - &bb * &a + &c).is_zero());
                let prod = &a * &u.alpha2();
                assert_eq!(prod, c);
                assert!(a > QuadraticSurd::one());
                assert!(u.alpha2().abs() < QuadraticSurd::one());
            }
        }
    }

    #[test]
    fn squared_unit_matches() {
        for b in 1..10 {
            let u = PisotQuadraticUnit::minus(b).unwrap();
            let sq = u.squared();
            assert_eq!(sq.alpha(), u.alpha().pow(2));
        }
    }

    #[test]
    fn rejects_non_pisot() {
        assert!(PisotQuadraticUnit::plus(2).is_err());
        assert!(PisotQuadraticUnit::minus(0).is_err());
    }
}
