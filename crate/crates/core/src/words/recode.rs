//! Run-length recoding `phi` of words in `(1(0^a + 0^{a+1}))^Z`.

use serde::Serialize;

use super::word::{BiEpWord, EpWord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recoded<W> {
    pub word: W,
    /// The shorter run length; runs of `a` zeros become `0`, runs of `a + 1` become `1`.
    pub a: usize,
    /// True when the input was complemented first (it had isolated zeros).
    pub complemented: bool,
}

fn has_factor(w: &[u8], f: &[u8]) -> bool {
    w.windows(f.len()).any(|x| x == f)
}

/// Splits a word that starts with 1 into run lengths of `1 0^e` blocks.
fn runs(w: &[u8]) -> Vec<usize> {
    debug_assert!(w.is_empty() || w[0] == 1);
    let mut out = Vec::new();
    for &x in w {
        if x == 1 {
            out.push(0);
        } else {
            *out.last_mut().unwrap() += 1;
        }
    }
    out
}

fn letters(exps: &[usize], a: usize) -> Result<Vec<u8>> {
    exps.iter()
        .map(|&e| match e.checked_sub(a) {
            Some(0) => Ok(0),
            Some(1) => Ok(1),
            _ => Err(Error::NotRecodable(format!(
                "run length {e} is not {a} or {}",
                a + 1
            ))),
        })
        .collect()
}

/// Shared checks: decides on complementing and rejects the class K.
fn orient(sample: &[u8], ones: Option<usize>, zeros: Option<usize>) -> Result<bool> {
    if ones.is_some_and(|n| n <= 1) || zeros.is_some_and(|n| n <= 1) {
        return Err(Error::NotRecodable(
            "word has at most one 0 or at most one 1".into(),
        ));
    }
    let c11 = has_factor(sample, &[1, 1]);
    let c00 = has_factor(sample, &[0, 0]);
    if c11 && c00 {
        return Err(Error::NotRecodable(
            "both 00 and 11 occur, so no run decomposition exists".into(),
        ));
    }
    Ok(c11)
}

/// Recodes a bi-infinite eventually periodic word. The new origin is the
/// block containing the old origin.
pub fn phi(x: &BiEpWord<u8>) -> Result<Recoded<BiEpWord<u8>>> {
    let count = |v: &[u8], c: u8| v.iter().filter(|&&y| y == c).count();
    let finite =
        |c: u8| (count(&x.left, c) == 0 && count(&x.right, c) == 0).then(|| count(&x.middle, c));
    let (lo, hi) = x.core_range();
    let span = 2 * (x.left.len() + x.right.len()) as i64;
    let sample = x.window(lo - span, hi + span);
    let complemented = orient(&sample, finite(1), finite(0))?;
    let mut w = if complemented {
        x.map(|y| 1 - y)
    } else {
        x.clone()
    };

    let first_one = |v: &[u8]| v.iter().position(|&y| y == 1);
    let j = first_one(&w.left).ok_or_else(|| Error::NotRecodable("left tail has no 1".into()))?;
    let (a_part, b_part) = w.left.split_at(j);
    let mut middle = b_part.to_vec();
    middle.extend_from_slice(&w.middle);
    let left: Vec<u8> = b_part.iter().chain(a_part).copied().collect();
    w.origin += b_part.len() as i64;
    let j = first_one(&w.right).ok_or_else(|| Error::NotRecodable("right tail has no 1".into()))?;
    let (c_part, d_part) = w.right.split_at(j);
    middle.extend_from_slice(c_part);
    let right: Vec<u8> = d_part.iter().chain(c_part).copied().collect();
    let w = BiEpWord::new(left, middle, right, w.origin)?.normalized();

    let (le, me, re) = (runs(&w.left), runs(&w.middle), runs(&w.right));
    let a = *le.iter().chain(&me).chain(&re).min().unwrap();
    let mut origin = 0usize;
    let mut pos = 0usize;
    for (k, e) in me.iter().enumerate() {
        if (w.origin as usize) < pos + 1 + e {
            origin = k;
            break;
        }
        pos += 1 + e;
    }
    let word = BiEpWord::new(
        letters(&le, a)?,
        letters(&me, a)?,
        letters(&re, a)?,
        origin as i64,
    )?;
    Ok(Recoded {
        word,
        a,
        complemented,
    })
}

/// Recodes a one-sided word `0^* (1 (0^a + 0^{a+1}))^N`; the leading zeros are dropped.
pub fn phi_one_sided(y: &EpWord<u8>) -> Result<Recoded<EpWord<u8>>> {
    let count =
        |c: u8| (!y.period.contains(&c)).then(|| y.prefix.iter().filter(|&&v| v == c).count());
    let sample = y.take(y.prefix.len() + 2 * y.period.len());
    let complemented = orient(&sample, count(1), count(0))?;
    let y = if complemented {
        y.map(|v| 1 - v)
    } else {
        y.clone()
    };
    let j = y
        .period
        .iter()
        .position(|&v| v == 1)
        .ok_or_else(|| Error::NotRecodable("tail has no 1".into()))?;
    let (c_part, d_part) = y.period.split_at(j);
    let mut prefix = y.prefix.clone();
    prefix.extend_from_slice(c_part);
    let period: Vec<u8> = d_part.iter().chain(c_part).copied().collect();
    let start = prefix.iter().position(|&v| v == 1).unwrap_or(prefix.len());
    let (pe, re) = (runs(&prefix[start..]), runs(&period));
    let a = *pe.iter().chain(&re).min().unwrap();
    Ok(Recoded {
        word: EpWord::new(letters(&pe, a)?, letters(&re, a)?)?,
        a,
        complemented,
    })
}

/// Inverse recoding: `0 -> 1 0^a`, `1 -> 1 0^{a+1}`.
pub fn phi_inverse(x: &BiEpWord<u8>, a: usize) -> BiEpWord<u8> {
    x.substitute(|c| {
        let mut v = vec![1u8];
        v.extend(std::iter::repeat_n(0, a + c as usize));
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_binary;

    fn periodic(s: &str) -> BiEpWord<u8> {
        BiEpWord::periodic(parse_binary(s).unwrap()).unwrap()
    }

    #[test]
    fn two_block_period() {
        let r = phi(&periodic("10010")).unwrap();
        assert_eq!(r.a, 1);
        assert!(!r.complemented);
        assert_eq!(r.word.window(0, 4), vec![1, 0, 1, 0]);
    }

    #[test]
    fn alternating_goes_to_zero() {
        let r = phi(&periodic("01")).unwrap();
        assert_eq!(r.word.window(-3, 3), vec![0; 6]);
    }

    #[test]
    fn complemented_input() {
        let r = phi(&periodic("01101")).unwrap();
        assert!(r.complemented);
        assert_eq!(r.a, 1);
    }

    #[test]
    fn k_is_rejected() {
        let w = BiEpWord::new(vec![0], vec![1], vec![0], 0).unwrap();
        assert!(matches!(phi(&w), Err(Error::NotRecodable(_))));
        assert!(phi(&periodic("0")).is_err());
        assert!(phi(&periodic("0011")).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let x = BiEpWord::new(vec![0, 1], vec![1, 0, 0], vec![0], 1).unwrap();
        for a in 1..4 {
            let y = phi_inverse(&x, a);
            let r = phi(&y).unwrap();
            assert_eq!(r.a, a);
            assert_eq!(r.word.window(-12, 12), x.window(-12, 12));
        }
    }

    #[test]
    fn one_sided() {
        let y = EpWord::new(
            parse_binary("000100").unwrap(),
            parse_binary("1000100").unwrap(),
        )
        .unwrap();
        let r = phi_one_sided(&y).unwrap();
        assert_eq!(r.a, 2);
        assert_eq!(r.word.take(5), vec![0, 1, 0, 1, 0]);
    }
}
