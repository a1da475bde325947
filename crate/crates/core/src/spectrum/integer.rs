//! The discrete part of the spectrum for an integer base `a >= 2`.
//!
//! Points are `(1/a) E^(k)(1/a)` for `k = 0, 1, ...`, accumulating at
//! `(1/a) E(1/a)`. Each point is also `(1/a) f(A_k^inf; 1/a)` where `A_k`
//! comes from the substitution `1 -> 2, 2 -> 211`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::Ball;
use crate::error::{Error, Result};
use crate::format::ser_rational;
use crate::words::EpWord;

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn check_base(a: u64) -> Result<()> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!(
            "base must be at least 2, got {a}"
        )));
    }
    Ok(())
}

/// `E^(k)(X) = (1 + X^{2^k} - (1 - X) prod_{m<k} (1 - X^{2^m})) / (2X (1 + X^{2^k}))`.
pub fn e_k(x: &BigRational, k: u32) -> BigRational {
    let one = BigRational::one();
    let mut prod = one.clone();
    let mut pw = x.clone();
    for _ in 0..k {
        prod *= &one - &pw;
        pw = &pw * &pw;
    }
    let num = &one + &pw - (&one - x) * prod;
    num / (BigRational::from_integer(2.into()) * x * (&one + &pw))
}

/// The spectrum point `(1/a) E^(k)(1/a)`.
pub fn point(a: u64, k: u32) -> Result<BigRational> {
    check_base(a)?;
    let x = ratio(1, a as i64);
    Ok(&x * e_k(&x, k))
}

/// Certified enclosure of the accumulation point `(1/a) E(1/a)`.
#[derive(Debug, Clone, Serialize)]
pub struct LimitEnclosure {
    pub ball: Ball,
    /// Number of product factors used before bounding the tail.
    pub factors: u32,
    #[serde(skip)]
    pub lo: BigRational,
    #[serde(skip)]
    pub hi: BigRational,
}

/// Encloses `(1/a) E(1/a) = (1 - (1 - X) prod_{n>=0} (1 - X^{2^n})) / 2` at
/// `X = 1/a` to within `2^-bits`.
///
/// With `P_K` the partial product and `d = X^{2^K} / (1 - X)`, the full
/// product lies in `[P_K (1 - d), P_K]`.
pub fn limit_enclosure(a: u64, bits: u32) -> Result<LimitEnclosure> {
    check_base(a)?;
    let x = ratio(1, a as i64);
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let mut k = 0u32;
    let mut pk = one.clone();
    let mut pw = x.clone();
    let target = BigRational::new(BigInt::one(), BigInt::one() << (bits as usize + 1));
    loop {
        pk *= &one - &pw;
        pw = &pw * &pw;
        k += 1;
        if pw < target {
            break;
        }
    }
    let delta = &pw / (&one - &x);
    let lo = (&one - (&one - &x) * &pk) / &two;
    let hi = (&one - (&one - &x) * &pk * (&one - &delta)) / &two;
    let ball = Ball::from_interval(&lo, &hi, bits + 8);
    Ok(LimitEnclosure {
        ball,
        factors: k,
        lo,
        hi,
    })
}

/// `tau(1) = 2`, `tau(2) = 211`.
pub fn tau(w: &[u8]) -> Vec<u8> {
    w.iter()
        .flat_map(|&c| match c {
            1 => vec![2],
            2 => vec![2, 1, 1],
            _ => panic!("tau is defined on {{1, 2}}"),
        })
        .collect()
}

/// `A_0 = 1`, `A_k = tau(A_{k-1})`.
pub fn a_word(k: u32) -> Vec<u8> {
    (0..k).fold(vec![1], |w, _| tau(&w))
}

/// Prefix of the fixed point `w = lim A_k`.
pub fn w_prefix(len: usize) -> Vec<u8> {
    let mut k = 1;
    loop {
        let a = a_word(k);
        if a.len() >= len {
            return a[..len].to_vec();
        }
        k += 1;
    }
}

fn check_two_letter(y: &[u8]) -> Result<()> {
    if y.iter().any(|&c| c != 1 && c != 2) {
        return Err(Error::InvalidParameter(
            "expected letters 1 and 2 only".into(),
        ));
    }
    Ok(())
}

/// `f(y; X) = sum_{i>=0} (-1)^i X^{y_1 + ... + y_i}`, exactly, for an
/// eventually periodic word over `{1, 2}` and `|X| < 1`.
pub fn f_eval(y: &EpWord<u8>, x: &BigRational) -> Result<BigRational> {
    check_two_letter(&y.prefix)?;
    check_two_letter(&y.period)?;
    if x.abs() >= BigRational::one() {
        return Err(Error::OutOfRange("need |X| < 1".into()));
    }
    // Alternating sum over a block and the factor `(-1)^L X^{|w|}` it leaves.
    // Horner from the right on integers: `T <- 1 - X^c T` with `T = P / d^k`.
    let (n, d) = (x.numer(), x.denom());
    let block = |w: &[u8]| {
        let Some((_, init)) = w.split_last() else {
            return (BigRational::zero(), BigRational::one());
        };
        let (n2, d2) = (n * n, d * d);
        let mut p = BigInt::one();
        let mut dk = BigInt::one();
        for &c in init.iter().rev() {
            let (nc, dc) = if c == 1 { (n, d) } else { (&n2, &d2) };
            dk *= dc;
            p = &dk - nc * p;
        }
        let total: u32 = w.iter().map(|&c| c as u32).sum();
        let sign = if w.len().is_multiple_of(2) { 1 } else { -1 };
        (
            BigRational::new(p, dk),
            BigRational::new(n.pow(total) * sign, d.pow(total)),
        )
    };
    let (head, scale) = block(&y.prefix);
    let (body, ratio) = block(&y.period);
    Ok(head + scale * body / (BigRational::one() - ratio))
}

/// Compares under the alternating order: `y > y'` when at the first
/// difference `h` (1-based) we have `(-1)^{h+1} (y_h - y'_h) > 0`.
/// Returns `None` when one word is a proper prefix of the other.
pub fn alt_cmp(y: &[u8], z: &[u8]) -> Option<Ordering> {
    for (i, (&a, &b)) in y.iter().zip(z).enumerate() {
        if a != b {
            let ord = a.cmp(&b);
            return Some(if i % 2 == 0 { ord } else { ord.reverse() });
        }
    }
    (y.len() == z.len()).then_some(Ordering::Equal)
}

/// The alternating order on eventually periodic words (a total order).
pub fn alt_cmp_ep(y: &EpWord<u8>, z: &EpWord<u8>) -> Ordering {
    let n = y.comparison_horizon(z);
    alt_cmp(&y.take(n), &z.take(n)).expect("equal lengths are comparable")
}

/// `limsup_N sigma^N(y)` under the alternating order: the largest rotation
/// of the period.
pub fn limsup_shift(y: &EpWord<u8>) -> EpWord<u8> {
    let tail = EpWord::periodic(y.period.clone()).expect("nonempty period");
    (0..y.period.len())
        .map(|r| tail.shift(r))
        .max_by(alt_cmp_ep)
        .expect("nonempty period")
        .canonical()
}

/// `sum_{i>=1} s_{n+i} a^{-i}` where `s_1` is the first letter of `s`.
pub fn eval_signed_base(s: &EpWord<i64>, a: u64, n: usize) -> Result<BigRational> {
    check_base(a)?;
    let s = s.shift(n);
    let x = ratio(1, a as i64);
    let block = |w: &[i64]| {
        let mut sum = BigRational::zero();
        let mut pw = x.clone();
        for &d in w {
            sum += BigRational::from_integer(d.into()) * &pw;
            pw *= &x;
        }
        (sum, pw / &x)
    };
    let (head, scale) = block(&s.prefix);
    let (body, ratio) = block(&s.period);
    Ok(head + scale * body / (BigRational::one() - ratio))
}

/// `limsup_n ||xi a^n||` for rational `xi`, from the eventual cycle of
/// fractional parts. Also returns the cycle length.
pub fn rational_orbit_limsup(xi: &BigRational, a: u64) -> (BigRational, usize) {
    let a = BigRational::from_integer(a.into());
    let frac = |q: &BigRational| q - q.floor();
    let mut seen: HashMap<BigRational, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut x = frac(xi);
    while !seen.contains_key(&x) {
        seen.insert(x.clone(), orbit.len());
        orbit.push(x.clone());
        x = frac(&(&x * &a));
    }
    let start = seen[&x];
    let half = ratio(1, 2);
    let dist = |q: &BigRational| {
        if *q > half {
            BigRational::one() - q
        } else {
            q.clone()
        }
    };
    let best = orbit[start..]
        .iter()
        .map(dist)
        .max()
        .expect("nonempty cycle");
    (best, orbit.len() - start)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumPoint {
    pub index: u32,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    /// The period `A_k` of the two-letter word.
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegerSpectrum {
    pub base: u64,
    pub points: Vec<SpectrumPoint>,
    pub limit: LimitEnclosure,
    pub checks: Vec<Check>,
}

impl IntegerSpectrum {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Points `k = 0..=k_max` with the identities that tie them together.
pub fn enumerate_spectrum(a: u64, k_max: u32, bits: u32) -> Result<IntegerSpectrum> {
    check_base(a)?;
    let x = ratio(1, a as i64);
    let limit = limit_enclosure(a, bits)?;
    let mut points = Vec::new();
    let mut checks = Vec::new();
    let mut check = |name: String, passed: bool| checks.push(Check { name, passed });
    let mut prev: Option<BigRational> = None;
    for k in 0..=k_max {
        let ak = a_word(k);
        let weight: usize = ak.iter().map(|&c| c as usize).sum();
        check(
            format!("|A_{k}| odd and weight 2^{k}"),
            ak.len() % 2 == 1 && weight == 1 << k,
        );
        let word = EpWord::periodic(ak.clone())?;
        let f = f_eval(&word, &x)?;
        let e = e_k(&x, k);
        check(format!("f(A_{k}^inf; 1/{a}) = E^({k})(1/{a})"), f == e);
        check(
            format!("A_{k}^inf is its own limsup shift"),
            limsup_shift(&word) == word.canonical(),
        );
        let value = &x * e;
        let (orbit_max, _) = rational_orbit_limsup(&value, a);
        check(
            format!("limsup ||p_{k} {a}^n|| = p_{k}"),
            orbit_max == value,
        );
        if let Some(p) = &prev {
            check(format!("p_{} < p_{k}", k - 1), *p < value);
        }
        // The points increase to the limit, so this only guards against drift.
        check(format!("p_{k} below the limit"), value < limit.hi);
        prev = Some(value.clone());
        points.push(SpectrumPoint {
            index: k,
            value,
            witness: ak.iter().map(|c| char::from(b'0' + c)).collect(),
        });
    }
    Ok(IntegerSpectrum {
        base: a,
        points,
        limit,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_points_base_two() {
        assert_eq!(point(2, 0).unwrap(), ratio(1, 3));
        assert_eq!(point(2, 1).unwrap(), ratio(2, 5));
        assert_eq!(point(2, 2).unwrap(), ratio(7, 17));
    }

    #[test]
    fn limit_base_two() {
        let e = limit_enclosure(2, 64).unwrap();
        assert!(e.ball.rad_f64() < 1e-15);
        // Every point of the enclosure rounds to 0.4124540.
        assert!(e.ball.lo() >= BigRational::new(41245395.into(), 100_000_000.into()));
        assert!(e.ball.hi() < BigRational::new(41245405.into(), 100_000_000.into()));
        let coarse = limit_enclosure(2, 20).unwrap();
        assert!(coarse.ball.rad_f64() <= 1e-6);
        let target = BigRational::new(4124540.into(), 10_000_000.into());
        let off = (coarse.ball.mid_rational() - &target).abs() + coarse.ball.rad_rational();
        assert!(off <= BigRational::new(1.into(), 1_000_000.into()));
    }

    #[test]
    fn words_and_f() {
        assert_eq!(a_word(0), vec![1]);
        assert_eq!(a_word(2), vec![2, 1, 1]);
        assert_eq!(a_word(3), vec![2, 1, 1, 2, 2]);
        let x = ratio(1, 2);
        let f = |p: Vec<u8>| f_eval(&EpWord::periodic(p).unwrap(), &x).unwrap();
        assert_eq!(f(vec![2, 1, 1]), ratio(14, 17));
        assert_eq!(f(vec![1]), ratio(2, 3));
        assert_eq!(f(vec![2]), ratio(4, 5));
    }

    #[test]
    fn alternating_order_examples() {
        let w = w_prefix(12);
        assert_eq!(alt_cmp(&[2, 1, 2], &w[..3]), Some(Ordering::Greater));
        assert_eq!(alt_cmp(&[2, 1, 1, 1], &w[..4]), Some(Ordering::Greater));
        assert_eq!(alt_cmp(&[2, 1, 1], &[2, 2]), Some(Ordering::Greater));
        assert_eq!(alt_cmp(&[2], &[2, 1]), None);
    }

    #[test]
    fn signed_base() {
        let s = EpWord::periodic(vec![1i64, -1]).unwrap();
        assert_eq!(eval_signed_base(&s, 3, 0).unwrap(), ratio(1, 4));
        let t = EpWord::periodic(vec![0i64, 1]).unwrap();
        assert_eq!(eval_signed_base(&t, 2, 0).unwrap(), ratio(1, 3));
        let z = EpWord::periodic(vec![0i64]).unwrap();
        assert_eq!(eval_signed_base(&z, 5, 3).unwrap(), BigRational::zero());
    }

    #[test]
    fn orbits() {
        assert_eq!(rational_orbit_limsup(&ratio(1, 3), 2), (ratio(1, 3), 2));
        assert_eq!(rational_orbit_limsup(&ratio(2, 5), 2), (ratio(2, 5), 4));
        assert_eq!(rational_orbit_limsup(&ratio(7, 17), 2).0, ratio(7, 17));
    }

    #[test]
    fn table_checks_pass() {
        let t = enumerate_spectrum(3, 6, 64).unwrap();
        for c in &t.checks {
            assert!(c.passed, "{}", c.name);
        }
    }
}
