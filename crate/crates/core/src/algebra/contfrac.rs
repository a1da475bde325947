//! Negative (backward) continued fractions `x = 1/(a1 - 1/(a2 - ...))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::surd::QuadraticSurd;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCf {
    /// Partial quotients `a1, a2, ...`, each at least 2.
    pub digits: Vec<BigInt>,
    /// Convergents `P_k / Q_k` for `k = 1..=digits.len()`.
    pub convergents: Vec<(BigInt, BigInt)>,
    /// True when the expansion ended with a zero remainder.
    pub terminated: bool,
}

impl NegativeCf {
    pub fn convergent_values(&self) -> Vec<BigRational> {
        self.convergents
            .iter()
            .map(|(p, q)| BigRational::new(p.clone(), q.clone()))
            .collect()
    }
}

/// Expands `x` in `(0, 1)` into at most `max_terms` partial quotients.
pub fn negative_cf(x: &QuadraticSurd, max_terms: usize) -> Result<NegativeCf> {
    let zero = QuadraticSurd::zero();
    if *x <= zero || *x >= QuadraticSurd::one() {
        return Err(Error::OutOfRange(format!("{x} is not in (0, 1)")));
    }
    let mut digits = Vec::new();
    let mut convergents = Vec::new();
    let (mut p_prev, mut p) = (-BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut r = x.clone();
    let mut terminated = false;
    while digits.len() < max_terms {
        let inv = r.try_recip()?;
        let a = inv.ceil();
        r = QuadraticSurd::from_rational(BigRational::from_integer(a.clone())) - inv;
        let p_next = &a * &p - &p_prev;
        let q_next = &a * &q - &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        digits.push(a);
        convergents.push((p.clone(), q.clone()));
        if r.is_zero() {
            terminated = true;
            break;
        }
    }
    Ok(NegativeCf {
        digits,
        convergents,
        terminated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_expansion() {
        let x = (QuadraticSurd::from_int(3) + QuadraticSurd::sqrt(3))
            .try_recip()
            .unwrap();
        let cf = negative_cf(&x, 6).unwrap();
        let d: Vec<i64> = cf.digits.iter().map(|a| a.try_into().unwrap()).collect();
        assert_eq!(d, vec![5, 4, 4, 4, 4, 4]);
        assert_eq!(cf.convergents[0], (1.into(), 5.into()));
        let v = cf.convergent_values();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rational_terminates() {
        let cf = negative_cf(&QuadraticSurd::from_ratio(1, 2), 10).unwrap();
        assert_eq!(cf.digits, vec![BigInt::from(2)]);
        assert!(cf.terminated);
        let cf = negative_cf(&QuadraticSurd::from_ratio(3, 7), 10).unwrap();
        let last = cf.convergent_values().pop().unwrap();
        assert_eq!(last, BigRational::new(3.into(), 7.into()));
    }

    #[test]
    fn out_of_range() {
        assert!(negative_cf(&QuadraticSurd::from_int(1), 3).is_err());
        assert!(negative_cf(&QuadraticSurd::zero(), 3).is_err());
    }
}
