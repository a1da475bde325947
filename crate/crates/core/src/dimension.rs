//! Hausdorff-dimension upper bounds for `L(alpha) ∩ [0, t]`.
//!
//! Integer base: `log(2 ceil(a^l t)) / log(a^l)`, minimized over `l`.
//! Quadratic unit: `log(4m + 1) / log(alpha)` with `m = floor((2 + b) t)`.
//!
//! Every comparison (the minimizing `l`, "bound < 1", monotonicity) is decided
//! on integers or in `Q(alpha)`; logarithms only enter the reported value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{pow, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{BigRational, PisotQuadraticUnit, QuadraticSurd};
use crate::error::{Error, Result};
use crate::format::{ser_bigint, ser_rational};

/// A logarithm quotient with a guaranteed enclosure. `ln` is faithful to a
/// few ulps, so the enclosure is widened by a relative `1e-14`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogQuotient {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl LogQuotient {
    fn new(num: f64, den: f64) -> LogQuotient {
        let value = num / den;
        let slack = value.abs() * 1e-14 + f64::MIN_POSITIVE;
        LogQuotient {
            value,
            lo: (value - slack).max(0.0),
            hi: value + slack,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DimCase {
    Integer { a: u64 },
    Quadratic { unit: PisotQuadraticUnit },
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegerBound {
    pub a: u64,
    /// Minimizing `l` in `1..=search_limit`.
    pub ell: u32,
    /// `ceil(a^l t)`.
    #[serde(serialize_with = "ser_bigint")]
    pub count: BigInt,
    pub bound: LogQuotient,
    /// Smallest `l` with `a^l (1 - 2t) > 2`.
    pub threshold_ell: u32,
    /// `2 ceil(a^l t) < a^l` at `threshold_ell`, decided exactly.
    pub below_one_at_threshold: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadraticBound {
    pub unit: PisotQuadraticUnit,
    /// `floor((2 + b) t)`.
    #[serde(serialize_with = "ser_bigint")]
    pub m: BigInt,
    pub bound: LogQuotient,
    /// `4m + 1 < alpha`, exact.
    pub below_one: bool,
    /// `(alpha - 1) / (4(b + 2))`.
    pub t0: QuadraticSurd,
    pub t0_approx: f64,
    pub t0_below_quarter: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimBound {
    #[serde(serialize_with = "ser_rational")]
    pub t: BigRational,
    pub integer: Option<IntegerBound>,
    pub quadratic: Option<QuadraticBound>,
}

impl DimBound {
    pub fn value(&self) -> LogQuotient {
        match (&self.integer, &self.quadratic) {
            (Some(i), _) => i.bound,
            (_, Some(q)) => q.bound,
            _ => unreachable!("one case is always filled"),
        }
    }
}

fn ln_big(n: &BigInt) -> f64 {
    // ln of a positive integer that may exceed f64 range
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ceil_rat(q: &BigRational) -> BigInt {
    let (d, r) = q.numer().div_mod_floor(q.denom());
    if r.is_zero() {
        d
    } else {
        d + 1
    }
}

/// Smallest `l >= 1` with `a^l (1 - 2t) > 2`.
pub fn ell_threshold(a: u64, t: &BigRational) -> Result<u32> {
    let gap = BigRational::one() - t * BigRational::from_integer(2.into());
    if !gap.is_positive() {
        return Err(Error::OutOfRange("t must be below 1/2".into()));
    }
    let two = BigRational::from_integer(2.into());
    let mut p = BigRational::from_integer(a.into());
    for ell in 1..=4096u32 {
        if &p * &gap > two {
            return Ok(ell);
        }
        p *= BigRational::from_integer(a.into());
    }
    Err(Error::Insufficient("threshold l above 4096".into()))
}

fn count_at(a: u64, t: &BigRational, ell: u32) -> BigInt {
    let p: BigInt = pow(BigInt::from(a), ell as usize);
    ceil_rat(&(t * BigRational::from_integer(p)))
}

/// `ceil(a^l t)` and the quotient at one fixed `l`.
pub fn bound_at(a: u64, t: &BigRational, ell: u32) -> (BigInt, LogQuotient) {
    let c = count_at(a, t, ell);
    let q = if c.is_zero() {
        LogQuotient {
            value: 0.0,
            lo: 0.0,
            hi: 0.0,
        }
    } else {
        LogQuotient::new(ln_big(&(&c * 2)), ell as f64 * (a as f64).ln())
    };
    (c, q)
}

/// Integer-base bound.
pub fn integer_bound(a: u64, t: &BigRational, search_limit: u32) -> Result<IntegerBound> {
    if a < 2 {
        return Err(Error::InvalidParameter("base must be at least 2".into()));
    }
    if t.is_negative() || *t >= BigRational::new(1.into(), 2.into()) {
        return Err(Error::OutOfRange(format!("t = {t} is outside [0, 1/2)")));
    }
    if search_limit == 0 {
        return Err(Error::InvalidParameter(
            "search limit must be positive".into(),
        ));
    }
    let count_at = |ell: u32| count_at(a, t, ell);

    // log(2c)/(l log a): compare (2c_i)^{l_j} against (2c_j)^{l_i}.
    // A zero count means t = 0 and the set is a single point.
    let mut best = (1u32, count_at(1));
    for ell in 2..=search_limit {
        let c = count_at(ell);
        if c.is_zero() {
            best = (ell, c);
            break;
        }
        if best.1.is_zero() {
            continue;
        }
        let lhs: BigInt = pow(&c * 2, best.0 as usize);
        let rhs: BigInt = pow(&best.1 * 2, ell as usize);
        if lhs < rhs {
            best = (ell, c);
        }
    }
    let (ell, count) = best;
    let bound = bound_at(a, t, ell).1;

    let threshold_ell = ell_threshold(a, t)?;
    let pt: BigInt = pow(BigInt::from(a), threshold_ell as usize);
    let below_one_at_threshold = count_at(threshold_ell) * 2 < pt;
    Ok(IntegerBound {
        a,
        ell,
        count,
        bound,
        threshold_ell,
        below_one_at_threshold,
    })
}

/// `(alpha - 1) / (4(b + 2))`.
pub fn t0(unit: PisotQuadraticUnit) -> QuadraticSurd {
    let alpha = unit.alpha();
    (&alpha - &QuadraticSurd::one()).scale(&BigRational::new(1.into(), (4 * (unit.b + 2)).into()))
}

pub fn quadratic_bound(unit: PisotQuadraticUnit, t: &BigRational) -> Result<QuadraticBound> {
    if t.is_negative() {
        return Err(Error::OutOfRange(format!("t = {t} is negative")));
    }
    let m = (t * BigRational::from_integer((unit.b + 2).into()))
        .floor()
        .to_integer();
    let k: BigInt = &m * 4 + 1;
    let alpha = unit.alpha();
    let bound = LogQuotient::new(ln_big(&k), alpha.to_f64().ln());
    let below_one = QuadraticSurd::from_rational(BigRational::from_integer(k)) < alpha;
    let t0 = t0(unit);
    let t0_below_quarter = t0 < QuadraticSurd::from_ratio(1, 4);
    Ok(QuadraticBound {
        unit,
        m,
        bound,
        below_one,
        t0_approx: t0.to_f64(),
        t0,
        t0_below_quarter,
    })
}

pub fn dimension_bounds(case: &DimCase, t: &BigRational, search_limit: u32) -> Result<DimBound> {
    Ok(match case {
        DimCase::Integer { a } => DimBound {
            t: t.clone(),
            integer: Some(integer_bound(*a, t, search_limit)?),
            quadratic: None,
        },
        DimCase::Quadratic { unit } => DimBound {
            t: t.clone(),
            integer: None,
            quadratic: Some(quadratic_bound(*unit, t)?),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn base_two_example() {
        // a = 2, t = 2/5, l = 5: ceil(12.8) = 13, log 26 / log 32.
        let b = integer_bound(2, &r(2, 5), 5).unwrap();
        let direct = 26f64.ln() / 32f64.ln();
        assert!((direct - 0.9401).abs() < 1e-4);
        let (count, five) = bound_at(2, &r(2, 5), 5);
        assert_eq!(count, BigInt::from(13));
        assert!((five.value - direct).abs() < 1e-15);
        assert!(b.bound.value <= five.value);
        assert!(b.bound.lo <= b.bound.value && b.bound.value <= b.bound.hi);
        // log(2 / (1 - 4/5)) / log 2 = log2 10 = 3.32...
        assert_eq!(ell_threshold(2, &r(2, 5)).unwrap(), 4);
        assert!(b.below_one_at_threshold);
    }

    #[test]
    fn argmin_matches_float_scan() {
        for a in 2..=6u64 {
            for tn in 1..10 {
                let t = r(tn, 20);
                let got = integer_bound(a, &t, 12).unwrap();
                let scan = (1..=12u32)
                    .map(|l| {
                        let c = ((a as f64).powi(l as i32) * tn as f64 / 20.0).ceil();
                        (2.0 * c).ln() / (l as f64 * (a as f64).ln())
                    })
                    .fold(f64::INFINITY, f64::min);
                assert!((got.bound.value - scan).abs() < 1e-12, "a={a} t={t}");
            }
        }
    }

    #[test]
    fn quadratic_examples() {
        let u = PisotQuadraticUnit::plus(4).unwrap();
        let q = quadratic_bound(u, &r(1, 25)).unwrap();
        assert_eq!(q.m, BigInt::zero());
        assert_eq!(q.bound.value, 0.0);
        let expect = (&QuadraticSurd::one() + &QuadraticSurd::sqrt(3)).scale(&r(1, 24));
        assert_eq!(q.t0, expect);
        assert!(q.t0_below_quarter);
    }

    #[test]
    fn out_of_range() {
        assert!(integer_bound(2, &r(1, 2), 5).is_err());
        assert!(integer_bound(2, &r(-1, 5), 5).is_err());
        assert!(quadratic_bound(PisotQuadraticUnit::plus(4).unwrap(), &r(-1, 5)).is_err());
    }
}
