//! Christoffel words, central words and mechanical (Sturmian) words.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algebra::QuadraticSurd;
use crate::error::{Error, Result};

/// Lower (`upper = false`) or upper Christoffel word of slope `p/q`.
pub fn christoffel(p: u64, q: u64, upper: bool) -> Result<Vec<u8>> {
    if q == 0 || p > q || p.gcd(&q) != 1 || ((p == 0 || p == q) && q != 1) {
        return Err(Error::InvalidParameter(format!(
            "Christoffel words need coprime 0 <= p <= q, q >= 1 (got {p}/{q})"
        )));
    }
    let step = |i: u64| -> u64 {
        if upper {
            (p * i).div_ceil(q)
        } else {
            p * i / q
        }
    };
    Ok((0..q).map(|i| (step(i + 1) - step(i)) as u8).collect())
}

/// The palindrome `v` with lower Christoffel word `0v1` (for `q >= 2`).
pub fn central_word(p: u64, q: u64) -> Result<Vec<u8>> {
    if q < 2 {
        return Err(Error::InvalidParameter("central words need q >= 2".into()));
    }
    let c = christoffel(p, q, false)?;
    Ok(c[1..c.len() - 1].to_vec())
}

/// True when `v` is a rotation of `u`.
pub fn is_conjugate<T: Eq>(u: &[T], v: &[T]) -> bool {
    u.len() == v.len()
        && (0..u.len().max(1)).any(|r| (0..u.len()).all(|i| u[(i + r) % u.len()] == v[i]))
}

/// Whether `w` is a rotation of some Christoffel word.
pub fn christoffel_class(w: &[u8]) -> Option<(u64, u64)> {
    let q = w.len() as u64;
    let p = w.iter().filter(|&&x| x == 1).count() as u64;
    let c = christoffel(p, q, false).ok()?;
    is_conjugate(&c, w).then_some((p, q))
}

/// Letters `floor(a(n+1)+b) - floor(an+b)` (or with ceilings) for
/// `n = start..start+len`, with `0 <= a <= 1`.
pub fn mechanical_word(
    slope: &QuadraticSurd,
    intercept: &QuadraticSurd,
    start: i64,
    len: usize,
    upper: bool,
) -> Result<Vec<u8>> {
    if *slope < QuadraticSurd::zero() || *slope > QuadraticSurd::one() {
        return Err(Error::OutOfRange("slope must lie in [0, 1]".into()));
    }
    let at = |n: i64| {
        let x = &(slope * &QuadraticSurd::from_int(n)) + intercept;
        if upper {
            x.ceil()
        } else {
            x.floor()
        }
    };
    let mut prev = at(start);
    let mut out = Vec::with_capacity(len);
    for n in start + 1..=start + len as i64 {
        let cur = at(n);
        out.push((&cur - &prev).to_u8().expect("binary letter"));
        prev = cur;
    }
    Ok(out)
}

/// Prefix of length `len` of the characteristic word of slope
/// `[0; a1, a2, ...]`, built from standard words.
pub fn characteristic_word(cf: &[u64], len: usize) -> Result<Vec<u8>> {
    if cf.len() < 2 || cf[0] != 0 || cf[1..].contains(&0) {
        return Err(Error::InvalidParameter(
            "expected digits [0; a1, a2, ...] with every a_i >= 1".into(),
        ));
    }
    let mut prev: Vec<u8> = vec![1];
    let mut cur: Vec<u8> = vec![0];
    for (k, &a) in cf[1..].iter().enumerate() {
        let d = if k == 0 { a - 1 } else { a };
        let mut next = Vec::new();
        for _ in 0..d {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
        if cur.len() >= len && k >= 1 {
            return Ok(cur[..len].to_vec());
        }
    }
    Err(Error::Insufficient(format!(
        "{} partial quotients give only {} letters, {} requested",
        cf.len() - 1,
        cur.len(),
        len
    )))
}

/// Rational slope `p/q` as a surd, for convenience.
pub fn slope(p: i64, q: i64) -> QuadraticSurd {
    QuadraticSurd::from_rational(BigRational::new(p.into(), q.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{binary_string, parse_binary};

    #[test]
    fn small_christoffel_words() {
        assert_eq!(binary_string(&christoffel(2, 5, false).unwrap()), "00101");
        assert_eq!(binary_string(&christoffel(2, 5, true).unwrap()), "10100");
        assert_eq!(binary_string(&christoffel(1, 3, false).unwrap()), "001");
        assert_eq!(binary_string(&christoffel(0, 1, false).unwrap()), "0");
        assert_eq!(binary_string(&christoffel(1, 1, false).unwrap()), "1");
        assert!(christoffel(2, 4, false).is_err());
        assert!(christoffel(0, 3, false).is_err());
        assert_eq!(binary_string(&central_word(3, 8).unwrap()), "010010");
    }

    #[test]
    fn fibonacci_prefix() {
        let w = characteristic_word(&[0, 2, 1, 1, 1, 1, 1, 1, 1], 13).unwrap();
        assert_eq!(binary_string(&w), "0100101001001");
        let golden = characteristic_word(&[0, 1, 1, 1, 1, 1, 1, 1, 1], 13).unwrap();
        let flipped: Vec<u8> = w.iter().map(|x| 1 - x).collect();
        assert_eq!(golden, flipped);
        assert!(characteristic_word(&[0, 2, 1], 13).is_err());
    }

    #[test]
    fn mechanical_matches_characteristic() {
        // (3 - sqrt 5)/2 = [0; 2, 1, 1, ...]
        let a = (QuadraticSurd::from_int(3) - QuadraticSurd::sqrt(5))
            .scale(&BigRational::new(1.into(), 2.into()));
        let m = mechanical_word(&a, &a, 0, 40, false).unwrap();
        let c = characteristic_word(&[0, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1], 40).unwrap();
        assert_eq!(m, c);
    }

    #[test]
    fn rational_mechanical_is_christoffel_power() {
        let w = mechanical_word(&slope(2, 5), &QuadraticSurd::zero(), 0, 10, false).unwrap();
        assert_eq!(w, parse_binary("0010100101").unwrap());
        let u = mechanical_word(&slope(2, 5), &QuadraticSurd::zero(), 0, 5, true).unwrap();
        assert_eq!(u, parse_binary("10100").unwrap());
    }
}
