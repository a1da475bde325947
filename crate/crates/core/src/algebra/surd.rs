//! Exact arithmetic in real quadratic fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Splits `n` as `k^2 * m` with `m` square-free.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut m = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
    }
    (k, m * rest)
}

/// A number `a + b*sqrt(d)` with rational `a`, `b` and square-free `d > 1`.
///
/// Rationals are stored with `b = 0` and `d = 1`, so structural equality is
/// numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl QuadraticSurd {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        if d < 2 || squarefree_split(d).0 != 1 {
            return Err(Error::BadRadicand(d));
        }
        Ok(QuadraticSurd { a, b, d })
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadraticSurd {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(p.into(), q.into()))
    }

    /// `sqrt(n)` reduced to `k*sqrt(m)`.
    pub fn sqrt(n: u64) -> Self {
        let (k, m) = squarefree_split(n);
        if m == 1 {
            Self::from_int(k as i64)
        } else {
            QuadraticSurd {
                a: BigRational::zero(),
                b: rat(k as i64),
                d: m,
            }
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or 1 for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d as i64)
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, e) | (e, 1) => Ok(e),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(Error::MixedRadicands(d, e)),
        }
    }

    fn build(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            QuadraticSurd { a, b, d }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::build(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::build(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dd = rat(d as i64);
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::build(a, b, d))
    }

    pub fn try_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::build(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.try_recip()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::build(&self.a * q, &self.b * q, self.d)
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        Self::build(&self.a + q, self.b.clone(), self.d)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.try_recip().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d as i64);
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Sign of `self - other`, valid across different radicands.
    fn cmp_general(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.try_sub(other) {
            return diff.signum().cmp(&0);
        }
        // u - v with u = self - other.a in Q(sqrt d), v = other.b*sqrt(e).
        let u = self.add_rational(&-other.a.clone());
        let v = QuadraticSurd {
            a: BigRational::zero(),
            b: other.b.clone(),
            d: other.d,
        };
        let (su, sv) = (u.signum(), v.signum());
        if su != sv {
            return su.cmp(&sv);
        }
        let u2 = &u * &u;
        let v2 = v.norm().abs();
        let s = u2.add_rational(&-v2).signum();
        (s * su).cmp(&0)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let l = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * BigRational::from_integer(l.clone())).to_integer();
        let q = (&self.b * BigRational::from_integer(l.clone())).to_integer();
        let s = if q.is_zero() {
            BigInt::zero()
        } else {
            let m = (&q * &q * BigInt::from(self.d)).sqrt();
            if q.is_positive() {
                m
            } else {
                -m - 1
            }
        };
        (p + s).div_floor(&l)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `(u, eps)` with `u = floor(x + 1/2)` and `eps = x - u` in `[-1/2, 1/2)`.
    pub fn nearest_integer(&self) -> (BigInt, QuadraticSurd) {
        let half = BigRational::new(1.into(), 2.into());
        let u = self.add_rational(&half).floor();
        let eps = self.add_rational(&-BigRational::from_integer(u.clone()));
        (u, eps)
    }

    /// Distance to the nearest integer.
    pub fn dist_to_int(&self) -> QuadraticSurd {
        self.nearest_integer().1.abs()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let direct = a + b * (self.d as f64).sqrt();
        let cancels =
            self.a.is_negative() != self.b.is_negative() && !self.a.is_zero() && !self.b.is_zero();
        // Relative error of the direct sum is about 1e-16 |a| / |result|.
        if !cancels || (direct.is_finite() && direct.abs() > a.abs() * 1e-3) {
            return direct;
        }
        // Large coefficients of opposite sign: evaluate with enough bits to
        // survive the cancellation.
        let size = [
            self.a.numer(),
            self.a.denom(),
            self.b.numer(),
            self.b.denom(),
        ]
        .iter()
        .map(|n| n.bits())
        .max()
        .unwrap_or(0);
        super::Ball::from_surd(self, 96 + 2 * size as u32).to_f64()
    }

    /// Writes the value as `(p + q sqrt d) / r` with integer `p`, `q` and `r > 0`.
    pub fn to_integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let r = self.a.denom().lcm(self.b.denom());
        let rr = BigRational::from_integer(r.clone());
        let p = (&self.a * &rr).to_integer();
        let q = (&self.b * &rr).to_integer();
        (p, q, r)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let (p, q, r) = self.to_integer_form();
        let sign = if q.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", p, sign, q.abs(), self.d, r)
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [~{:.12}]", self, self.to_f64())
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_general(other)
    }
}

impl From<BigRational> for QuadraticSurd {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for QuadraticSurd {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&QuadraticSurd> for &QuadraticSurd {
            type Output = QuadraticSurd;
            fn $m(self, rhs: &QuadraticSurd) -> QuadraticSurd {
                self.$f(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<QuadraticSurd> for QuadraticSurd {
            type Output = QuadraticSurd;
            fn $m(self, rhs: QuadraticSurd) -> QuadraticSurd {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadraticSurd> for QuadraticSurd {
            type Output = QuadraticSurd;
            fn $m(self, rhs: &QuadraticSurd) -> QuadraticSurd {
                (&self).$m(rhs)
            }
        }
        impl $tr<QuadraticSurd> for &QuadraticSurd {
            type Output = QuadraticSurd;
            fn $m(self, rhs: QuadraticSurd) -> QuadraticSurd {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        -&self
    }
}

impl Zero for QuadraticSurd {
    fn zero() -> Self {
        QuadraticSurd::zero()
    }
    fn is_zero(&self) -> bool {
        QuadraticSurd::is_zero(self)
    }
}

impl One for QuadraticSurd {
    fn one() -> Self {
        QuadraticSurd::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64, d: u64) -> QuadraticSurd {
        QuadraticSurd::new(rat(a), rat(b), d).unwrap()
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(45), (3, 5));
        assert_eq!(squarefree_split(32), (4, 2));
        assert_eq!(squarefree_split(49), (7, 1));
        assert_eq!(squarefree_split(1), (1, 1));
    }

    #[test]
    fn equal_surds_from_different_forms() {
        let r3 = QuadraticSurd::sqrt(3);
        let lhs = (&r3 + QuadraticSurd::one()) / QuadraticSurd::from_int(12);
        let rhs = (&r3 + QuadraticSurd::from_int(2))
            / (QuadraticSurd::from_int(6) * (&r3 + QuadraticSurd::one()));
        assert_eq!(lhs.cmp(&rhs), Ordering::Equal);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn nearest_integer_half_points() {
        let (u, e) = QuadraticSurd::from_ratio(3, 2).nearest_integer();
        assert_eq!(u, BigInt::from(2));
        assert_eq!(e, QuadraticSurd::from_ratio(-1, 2));
        let (u, e) = QuadraticSurd::from_ratio(-1, 2).nearest_integer();
        assert_eq!(u, BigInt::from(0));
        assert_eq!(e, QuadraticSurd::from_ratio(-1, 2));
    }

    #[test]
    fn nearest_integer_of_half_alpha() {
        // alpha = 2 + sqrt 3
        let x = s(2, 1, 3).scale(&BigRational::new(1.into(), 2.into()));
        let (u, e) = x.nearest_integer();
        assert_eq!(u, BigInt::from(2));
        assert_eq!(e, s(-2, 1, 3).scale(&BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn floor_negative_surd_part() {
        // 1 - sqrt 2 = -0.414...
        assert_eq!(s(1, -1, 2).floor(), BigInt::from(-1));
        assert_eq!(s(0, -3, 5).floor(), BigInt::from(-7));
        assert_eq!(s(0, 3, 5).floor(), BigInt::from(6));
    }

    #[test]
    fn mixed_radicands_rejected_but_comparable() {
        let a = QuadraticSurd::sqrt(2);
        let b = QuadraticSurd::sqrt(3);
        assert_eq!(a.try_add(&b), Err(Error::MixedRadicands(2, 3)));
        assert!(a < b);
        assert!(s(1, 1, 2) > s(0, 1, 5)); // 2.414 > 2.236
        assert!(s(-3, 1, 2) > s(0, -1, 7)); // -1.586 > -2.645
        assert!(s(-3, 1, 2) < s(-1, 0, 7));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            QuadraticSurd::one().try_div(&QuadraticSurd::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn display_form() {
        assert_eq!(s(2, 1, 3).to_string(), "(2+1*sqrt(3))/1");
        assert_eq!(QuadraticSurd::from_ratio(2, 4).to_string(), "1/2");
        let x = s(1, -1, 5).scale(&BigRational::new(1.into(), 6.into()));
        assert_eq!(x.to_string(), "(1-1*sqrt(5))/6");
    }
}
