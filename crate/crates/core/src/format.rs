//! Text forms of exact values: `p/q` for rationals and `(p+q*sqrt(D))/r` for surds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serializer;

use crate::algebra::QuadraticSurd;
use crate::error::{Error, Result};

/// `p/q`, or `p` when the denominator is 1.
pub fn rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational(q))
}

pub fn ser_rationals<S: Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational))
}

pub fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Decimal expansion of `q` truncated toward zero after `digits` places.
pub fn decimal(q: &BigRational, digits: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let (int, frac) = a.numer().div_rem(a.denom());
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        s.push('.');
        let scaled = frac * BigInt::from(10u32).pow(digits as u32) / a.denom();
        let f = scaled.to_string();
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    s
}

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q = parse_bigint(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(parse_bigint(p)?, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let int = if ip.is_empty() {
            BigInt::zero()
        } else {
            parse_bigint(ip)?
        };
        let den = BigInt::from(10u32).pow(fp.len() as u32);
        let num = int * &den + parse_bigint(fp)?;
        let v = BigRational::new(num, den);
        return Ok(if neg { -v } else { v });
    }
    Ok(BigRational::from_integer(parse_bigint(s)?))
}

/// Parses a surd written as `(p+q*sqrt(D))/r`, `(p-q*sqrt(D))/r`,
/// `p+q*sqrt(D)`, or a plain rational.
pub fn parse_surd(s: &str) -> Result<QuadraticSurd> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if !t.contains("sqrt(") {
        return Ok(QuadraticSurd::from_rational(parse_rational(&t)?));
    }
    let bad = || Error::Parse(format!("bad surd {s:?}"));
    let (body, den) = match t.strip_prefix('(') {
        Some(rest) => {
            let close = rest.rfind(")/").ok_or_else(bad)?;
            (&rest[..close], parse_bigint(&rest[close + 2..])?)
        }
        None => (t.as_str(), BigInt::from(1)),
    };
    let start = body.find("sqrt(").ok_or_else(bad)?;
    let end = body[start..].find(')').ok_or_else(bad)? + start;
    let d: u64 = body[start + 5..end].parse().map_err(|_| bad())?;
    let before = &body[..start];
    let before = before.strip_suffix('*').unwrap_or(before);
    // Split `before` into rational part and signed coefficient.
    let split = before
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (p, q) = match split {
        Some(i) => (&before[..i], &before[i..]),
        None => ("0", before),
    };
    let q = match q {
        "" | "+" => BigInt::from(1),
        "-" => BigInt::from(-1),
        x => parse_bigint(x.trim_start_matches('+'))?,
    };
    let p = if p.is_empty() {
        BigInt::zero()
    } else {
        parse_bigint(p)?
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = BigRational::new(BigInt::from(1), den);
    let base = QuadraticSurd::sqrt(d).scale(&BigRational::from_integer(q));
    Ok(base.add_rational(&BigRational::from_integer(p)).scale(&r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_round_trip() {
        for (p, q, d, r) in [(1, 1, 3, 12), (2, -1, 3, 6), (0, 3, 5, 7), (-4, 2, 13, 1)] {
            let x = QuadraticSurd::sqrt(d)
                .scale(&BigRational::from_integer(q.into()))
                .add_rational(&BigRational::from_integer(p.into()))
                .scale(&BigRational::new(1.into(), r.into()));
            assert_eq!(parse_surd(&x.to_string()).unwrap(), x);
        }
        assert_eq!(
            parse_surd("2+sqrt(3)").unwrap(),
            QuadraticSurd::sqrt(3) + QuadraticSurd::from_int(2)
        );
        assert_eq!(
            parse_surd("-3/4").unwrap(),
            QuadraticSurd::from_ratio(-3, 4)
        );
    }

    #[test]
    fn decimals() {
        assert_eq!(
            parse_rational("-0.125").unwrap(),
            BigRational::new((-1).into(), 8.into())
        );
        assert_eq!(decimal(&BigRational::new(1.into(), 3.into()), 5), "0.33333");
        assert_eq!(
            decimal(&BigRational::new((-1).into(), 40.into()), 3),
            "-0.025"
        );
    }
}
