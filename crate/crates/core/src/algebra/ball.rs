//! Fixed-point interval ("ball") arithmetic with outward rounding.
//!
//! A [`Ball`] with `bits = p` stands for the closed interval
//! `[(mid - rad) / 2^p, (mid + rad) / 2^p]`. Every operation rounds so the
//! result interval contains the exact result for all inputs in the operands.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::surd::QuadraticSurd;

fn shift_floor(x: &BigInt, bits: u32) -> BigInt {
    // floor(x / 2^bits)
    x >> bits as usize
}

fn shift_ceil(x: &BigInt, bits: u32) -> BigInt {
    -((-x) >> bits as usize)
}

fn scale(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// A real interval in fixed-point representation.
#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    pub mid: BigInt,
    pub rad: BigInt,
    pub bits: u32,
}

impl Ball {
    pub fn exact_int(n: &BigInt, bits: u32) -> Ball {
        Ball {
            mid: n << bits as usize,
            rad: BigInt::zero(),
            bits,
        }
    }

    pub fn from_i64(n: i64, bits: u32) -> Ball {
        Self::exact_int(&BigInt::from(n), bits)
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Ball {
        let num = q.numer() << bits as usize;
        let (mid, rem) = num.div_mod_floor(q.denom());
        let rad = if rem.is_zero() {
            BigInt::zero()
        } else {
            BigInt::one()
        };
        Ball { mid, rad, bits }
    }

    pub fn from_surd(x: &QuadraticSurd, bits: u32) -> Ball {
        let a = Ball::from_rational(x.rational_part(), bits);
        if x.is_rational() {
            return a;
        }
        // sqrt(d) to bits + 8 guard bits, then scale.
        let g = bits + 8;
        let root = (BigInt::from(x.radicand()) << (2 * g) as usize).sqrt();
        let sqrt_d = Ball {
            mid: root,
            rad: BigInt::one(),
            bits: g,
        };
        let b = Ball::from_rational(x.surd_part(), g);
        a.add(&b.mul(&sqrt_d).with_bits(bits))
    }

    /// Ball from an `f64`, treating the float as exact.
    pub fn from_f64(v: f64, bits: u32) -> Ball {
        let q = BigRational::from_float(v).expect("finite float");
        Self::from_rational(&q, bits)
    }

    pub fn zero(bits: u32) -> Ball {
        Self::from_i64(0, bits)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Re-express at a different number of fractional bits, rounding outward.
    pub fn with_bits(&self, bits: u32) -> Ball {
        match bits.cmp(&self.bits) {
            std::cmp::Ordering::Equal => self.clone(),
            std::cmp::Ordering::Greater => {
                let k = (bits - self.bits) as usize;
                Ball {
                    mid: &self.mid << k,
                    rad: &self.rad << k,
                    bits,
                }
            }
            std::cmp::Ordering::Less => {
                let k = self.bits - bits;
                let exact = (&self.mid % scale(k)).is_zero();
                let mid = shift_floor(&self.mid, k);
                let mut rad = shift_ceil(&self.rad, k);
                if !exact {
                    rad += 1;
                }
                Ball { mid, rad, bits }
            }
        }
    }

    fn align(&self, other: &Ball) -> (Ball, Ball) {
        let bits = self.bits.max(other.bits);
        (self.with_bits(bits), other.with_bits(bits))
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let (x, y) = self.align(other);
        Ball {
            mid: &x.mid + &y.mid,
            rad: &x.rad + &y.rad,
            bits: x.bits,
        }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let (x, y) = self.align(other);
        let bits = x.bits;
        let prod = &x.mid * &y.mid;
        let exact = (&prod % scale(bits)).is_zero();
        let mid = shift_floor(&prod, bits);
        let err = x.mid.abs() * &y.rad + y.mid.abs() * &x.rad + &x.rad * &y.rad;
        let mut rad = shift_ceil(&err, bits);
        if !exact {
            rad += 1;
        }
        Ball { mid, rad, bits }
    }

    pub fn mul_int(&self, k: i64) -> Ball {
        Ball {
            mid: &self.mid * k,
            rad: &self.rad * k.unsigned_abs(),
            bits: self.bits,
        }
    }

    /// Reciprocal, or `None` when the ball contains zero.
    pub fn recip(&self) -> Option<Ball> {
        let m = self.mid.abs();
        if m <= self.rad {
            return None;
        }
        let s2 = scale(2 * self.bits);
        let (mid, rem) = s2.div_mod_floor(&self.mid);
        let lo = &m - &self.rad;
        let err_num = &s2 * &self.rad;
        let err_den = &m * &lo;
        let mut rad = err_num.div_ceil(&err_den);
        if !rem.is_zero() {
            rad += 1;
        }
        Some(Ball {
            mid,
            rad,
            bits: self.bits,
        })
    }

    pub fn div(&self, other: &Ball) -> Option<Ball> {
        Some(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: u32) -> Ball {
        let mut acc = Ball::from_i64(1, self.bits);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn abs(&self) -> Ball {
        if self.mid.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(&self.mid - &self.rad, scale(self.bits))
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(&self.mid + &self.rad, scale(self.bits))
    }

    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(self.mid.clone(), scale(self.bits))
    }

    pub fn rad_rational(&self) -> BigRational {
        BigRational::new(self.rad.clone(), scale(self.bits))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo() <= *q && *q <= self.hi()
    }

    pub fn contains_surd(&self, x: &QuadraticSurd) -> bool {
        let lo = QuadraticSurd::from_rational(self.lo());
        let hi = QuadraticSurd::from_rational(self.hi());
        lo <= *x && *x <= hi
    }

    /// True when every point is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Ball) -> bool {
        let (x, y) = self.align(other);
        &x.mid + &x.rad < &y.mid - &y.rad
    }

    pub fn certainly_le(&self, other: &Ball) -> bool {
        let (x, y) = self.align(other);
        &x.mid + &x.rad <= &y.mid - &y.rad
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        !self.certainly_lt(other) && !other.certainly_lt(self)
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_hi(&self) -> BigRational {
        BigRational::new(self.mid.abs() + &self.rad, scale(self.bits))
    }

    /// Certified `floor`, or `None` when the ball straddles an integer.
    pub fn floor(&self) -> Option<BigInt> {
        let lo = shift_floor(&(&self.mid - &self.rad), self.bits);
        let hi = shift_floor(&(&self.mid + &self.rad), self.bits);
        (lo == hi).then_some(lo)
    }

    /// Certified `floor(x + 1/2)` and `x - floor(x + 1/2)`.
    pub fn nearest_integer(&self) -> Option<(BigInt, Ball)> {
        let half = Ball {
            mid: BigInt::one() << (self.bits.max(1) - 1) as usize,
            rad: BigInt::zero(),
            bits: self.bits.max(1),
        };
        let u = self.add(&half).floor()?;
        let eps = self.sub(&Ball::exact_int(&u, self.bits));
        Some((u, eps))
    }

    /// Interval maximum: contains `max(x, y)` for all `x`, `y` in the operands.
    pub fn max(&self, other: &Ball) -> Ball {
        let (x, y) = self.align(other);
        let hi = (&x.mid + &x.rad).max(&y.mid + &y.rad);
        let lo = (&x.mid - &x.rad).max(&y.mid - &y.rad);
        Self::from_bounds(lo, hi, x.bits)
    }

    /// Smallest ball at `bits` containing the rational interval `[lo, hi]`.
    pub fn from_interval(lo: &BigRational, hi: &BigRational, bits: u32) -> Ball {
        let s = BigRational::from_integer(scale(bits));
        let l = (lo * &s).floor().to_integer();
        let h = (hi * &s).ceil().to_integer();
        Self::from_bounds(l, h, bits)
    }

    fn from_bounds(lo: BigInt, hi: BigInt, bits: u32) -> Ball {
        let sum = &lo + &hi;
        let mid = sum.div_floor(&BigInt::from(2));
        let rad = (&hi - &mid).max(&mid - &lo);
        Ball { mid, rad, bits }
    }

    /// Enlarges the radius by `extra` (a nonnegative rational).
    pub fn inflate(&self, extra: &BigRational) -> Ball {
        let e = (extra * BigRational::from_integer(scale(self.bits)))
            .ceil()
            .to_integer();
        Ball {
            mid: self.mid.clone(),
            rad: &self.rad + e,
            bits: self.bits,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.mid_rational();
        m.to_f64().unwrap_or(f64::NAN)
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad_rational().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Serialize for Ball {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ball", 3)?;
        st.serialize_field("mid", &crate::format::decimal(&self.mid_rational(), 30))?;
        st.serialize_field("rad", &format!("{:.3e}", self.rad_f64()))?;
        st.serialize_field("bits", &self.bits)?;
        st.end()
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.15e} +/- {:.3e}", self.to_f64(), self.rad_f64())
    }
}

/// A disk in the complex plane in the same fixed-point representation.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: BigInt,
    pub im: BigInt,
    pub rad: BigInt,
    pub bits: u32,
}

fn hypot_hi(a: &BigInt, b: &BigInt) -> BigInt {
    (a * a + b * b).sqrt() + 1
}

fn hypot_lo(a: &BigInt, b: &BigInt) -> BigInt {
    (a * a + b * b).sqrt()
}

impl ComplexBall {
    pub fn real(x: &Ball) -> ComplexBall {
        ComplexBall {
            re: x.mid.clone(),
            im: BigInt::zero(),
            rad: x.rad.clone(),
            bits: x.bits,
        }
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> ComplexBall {
        let r = Ball::from_f64(re, bits);
        let i = Ball::from_f64(im, bits);
        ComplexBall {
            re: r.mid,
            im: i.mid,
            rad: r.rad + i.rad,
            bits,
        }
    }

    pub fn from_i64(n: i64, bits: u32) -> ComplexBall {
        Self::real(&Ball::from_i64(n, bits))
    }

    pub fn re_ball(&self) -> Ball {
        Ball {
            mid: self.re.clone(),
            rad: self.rad.clone(),
            bits: self.bits,
        }
    }

    pub fn im_ball(&self) -> Ball {
        Ball {
            mid: self.im.clone(),
            rad: self.rad.clone(),
            bits: self.bits,
        }
    }

    pub fn center(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.clone(),
            rad: BigInt::zero(),
            bits: self.bits,
        }
    }

    pub fn add(&self, o: &ComplexBall) -> ComplexBall {
        debug_assert_eq!(self.bits, o.bits);
        ComplexBall {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &ComplexBall) -> ComplexBall {
        self.add(&o.neg())
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.clone(),
            im: -&self.im,
            rad: self.rad.clone(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &ComplexBall) -> ComplexBall {
        debug_assert_eq!(self.bits, o.bits);
        let bits = self.bits;
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let err = hypot_hi(&self.re, &self.im) * &o.rad
            + hypot_hi(&o.re, &o.im) * &self.rad
            + &self.rad * &o.rad;
        ComplexBall {
            re: shift_floor(&re, bits),
            im: shift_floor(&im, bits),
            rad: shift_ceil(&err, bits) + 2,
            bits,
        }
    }

    pub fn recip(&self) -> Option<ComplexBall> {
        let bits = self.bits;
        let n2 = &self.re * &self.re + &self.im * &self.im;
        let lo = hypot_lo(&self.re, &self.im);
        if lo <= self.rad {
            return None;
        }
        let s2 = scale(2 * bits);
        let re = (&s2 * &self.re).div_floor(&n2);
        let im = (-(&s2 * &self.im)).div_floor(&n2);
        let err = (&s2 * &self.rad).div_ceil(&(&lo * (&lo - &self.rad)));
        Some(ComplexBall {
            re,
            im,
            rad: err + 2,
            bits,
        })
    }

    pub fn div(&self, o: &ComplexBall) -> Option<ComplexBall> {
        Some(self.mul(&o.recip()?))
    }

    /// `z^e` for any integer `e`.
    pub fn powi(&self, e: i64) -> Option<ComplexBall> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = ComplexBall::from_i64(1, self.bits);
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    /// Upper bound of `|z|`.
    pub fn abs_hi(&self) -> BigRational {
        BigRational::new(hypot_hi(&self.re, &self.im) + &self.rad, scale(self.bits))
    }

    /// Lower bound of `|z|` (may be zero).
    pub fn abs_lo(&self) -> BigRational {
        let v = hypot_lo(&self.re, &self.im) - &self.rad;
        if v.sign() == Sign::Minus {
            BigRational::zero()
        } else {
            BigRational::new(v, scale(self.bits))
        }
    }

    pub fn rad_rational(&self) -> BigRational {
        BigRational::new(self.rad.clone(), scale(self.bits))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let s = scale(self.bits);
        (
            BigRational::new(self.re.clone(), s.clone())
                .to_f64()
                .unwrap_or(f64::NAN),
            BigRational::new(self.im.clone(), s)
                .to_f64()
                .unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_f64();
        let rad = self.rad_rational().to_f64().unwrap_or(f64::INFINITY);
        write!(f, "({r:.15e} {i:+.15e}i) +/- {rad:.3e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn rational_enclosure() {
        let b = Ball::from_rational(&q(1, 3), 64);
        assert!(b.contains(&q(1, 3)));
        assert!(b.rad_f64() < 1e-18);
        let t = b.mul_int(3);
        assert!(t.contains(&q(1, 1)));
    }

    #[test]
    fn mul_and_recip_contain_exact() {
        let x = Ball::from_rational(&q(-7, 11), 80);
        let y = Ball::from_rational(&q(5, 13), 80);
        assert!(x.mul(&y).contains(&q(-35, 143)));
        assert!(x.recip().unwrap().contains(&q(-11, 7)));
        assert!(x.div(&y).unwrap().contains(&q(-91, 55)));
    }

    #[test]
    fn surd_enclosure() {
        let s = QuadraticSurd::sqrt(3) + QuadraticSurd::from_int(2);
        let b = Ball::from_surd(&s, 100);
        assert!(b.contains_surd(&s));
        assert!(b.rad_f64() < 1e-28);
    }

    #[test]
    fn floor_detects_straddle() {
        let b = Ball {
            mid: BigInt::from(1) << 10usize,
            rad: BigInt::from(1),
            bits: 10,
        };
        assert_eq!(b.floor(), None);
        assert_eq!(Ball::from_rational(&q(5, 2), 10).floor(), Some(2.into()));
    }

    #[test]
    fn complex_ops() {
        let z = ComplexBall::from_f64(0.5, -1.25, 96);
        let w = z.recip().unwrap().mul(&z);
        let (re, im) = w.to_f64();
        assert!((re - 1.0).abs() < 1e-20 && im.abs() < 1e-20);
        let z3 = z.powi(3).unwrap();
        let z3b = z.mul(&z).mul(&z);
        assert!(z3.sub(&z3b).abs_hi() < q(1, 1 << 40));
    }
}
