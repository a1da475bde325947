use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Signed digit used by expansions and two-sided digit words.
pub type Digit = i64;

/// An eventually periodic one-sided word `prefix period period ...`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpWord<T> {
    pub prefix: Vec<T>,
    pub period: Vec<T>,
}

impl<T: Copy + Eq> EpWord<T> {
    pub fn new(prefix: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameter("empty period".into()));
        }
        Ok(EpWord { prefix, period })
    }

    pub fn periodic(period: Vec<T>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn at(&self, i: usize) -> T {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn take(&self, n: usize) -> Vec<T> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// The suffix starting at index `k`.
    pub fn shift(&self, k: usize) -> EpWord<T> {
        if k <= self.prefix.len() {
            EpWord {
                prefix: self.prefix[k..].to_vec(),
                period: self.period.clone(),
            }
        } else {
            let r = (k - self.prefix.len()) % self.period.len();
            let mut period = self.period[r..].to_vec();
            period.extend_from_slice(&self.period[..r]);
            EpWord {
                prefix: Vec::new(),
                period,
            }
        }
    }

    /// Shortest prefix and primitive period describing the same word.
    pub fn canonical(&self) -> EpWord<T> {
        let period = primitive_root(&self.period).to_vec();
        let mut prefix = self.prefix.clone();
        let mut period = period;
        while let Some(&last) = prefix.last() {
            if last != *period.last().unwrap() {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        EpWord { prefix, period }
    }

    /// Index past which the word is purely periodic, plus the period length.
    pub fn bounds(&self) -> (usize, usize) {
        (self.prefix.len(), self.period.len())
    }

    pub fn map<U: Copy + Eq>(&self, f: impl Fn(T) -> U) -> EpWord<U> {
        EpWord {
            prefix: self.prefix.iter().map(|&x| f(x)).collect(),
            period: self.period.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Applies a substitution letter by letter.
    pub fn substitute<U: Copy + Eq>(&self, h: impl Fn(T) -> Vec<U>) -> EpWord<U> {
        EpWord {
            prefix: self.prefix.iter().flat_map(|&x| h(x)).collect(),
            period: self.period.iter().flat_map(|&x| h(x)).collect(),
        }
    }

    /// Length after which two eventually periodic words agree forever if
    /// they agree up to it.
    pub fn comparison_horizon(&self, other: &EpWord<T>) -> usize {
        let (p1, l1) = self.bounds();
        let (p2, l2) = other.bounds();
        p1.max(p2) + num_integer::lcm(l1, l2)
    }
}

/// The shortest word `u` with `w = u^k`.
pub fn primitive_root<T: Eq>(w: &[T]) -> &[T] {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return &w[..p];
        }
    }
    w
}

/// A bi-infinite eventually periodic word `... left left middle right right ...`.
///
/// Position `n` of the word is index `n + origin` of `middle`; indices past
/// either end of `middle` continue into the periods, so that position
/// `-origin - 1` is the last letter of `left`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiEpWord<T> {
    pub left: Vec<T>,
    pub middle: Vec<T>,
    pub right: Vec<T>,
    pub origin: i64,
}

impl<T: Copy + Eq> BiEpWord<T> {
    pub fn new(left: Vec<T>, middle: Vec<T>, right: Vec<T>, origin: i64) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidParameter("empty period".into()));
        }
        Ok(BiEpWord {
            left,
            middle,
            right,
            origin,
        })
    }

    /// `period^Z` with position 0 at the first letter of `period`.
    pub fn periodic(period: Vec<T>) -> Result<Self> {
        Self::new(period.clone(), Vec::new(), period, 0)
    }

    pub fn at(&self, n: i64) -> T {
        let p = n + self.origin;
        let m = self.middle.len() as i64;
        if p < 0 {
            self.left[p.rem_euclid(self.left.len() as i64) as usize]
        } else if p < m {
            self.middle[p as usize]
        } else {
            self.right[(p - m) as usize % self.right.len()]
        }
    }

    /// Letters at positions `lo..hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<T> {
        (lo..hi).map(|n| self.at(n)).collect()
    }

    /// The shifted word with position `k` moved to 0.
    pub fn shift(&self, k: i64) -> BiEpWord<T> {
        let mut w = self.clone();
        w.origin += k;
        w
    }

    /// Lowest and highest positions (exclusive) outside which the word is
    /// periodic on each side.
    pub fn core_range(&self) -> (i64, i64) {
        (-self.origin, self.middle.len() as i64 - self.origin)
    }

    /// The word read rightward from position `k`.
    pub fn right_ray(&self, k: i64) -> EpWord<T> {
        let (_, hi) = self.core_range();
        if k >= hi {
            let r = ((k - hi) as usize) % self.right.len();
            let mut period = self.right[r..].to_vec();
            period.extend_from_slice(&self.right[..r]);
            return EpWord {
                prefix: Vec::new(),
                period,
            };
        }
        EpWord {
            prefix: self.window(k, hi),
            period: self.right.clone(),
        }
    }

    /// The word read leftward from position `k` (so index 0 is position `k`).
    pub fn left_ray(&self, k: i64) -> EpWord<T> {
        let (lo, _) = self.core_range();
        let l = self.left.len();
        let period_from =
            |start: i64| -> Vec<T> { (0..l as i64).map(|i| self.at(start - i)).collect() };
        if k < lo {
            return EpWord {
                prefix: Vec::new(),
                period: period_from(k),
            };
        }
        EpWord {
            prefix: (lo..=k).rev().map(|n| self.at(n)).collect(),
            period: period_from(lo - 1),
        }
    }

    /// Moves the origin inside `middle` by unrolling periods.
    pub fn normalized(&self) -> BiEpWord<T> {
        let mut w = self.clone();
        while w.origin < 0 {
            let mut m = w.left.clone();
            m.extend_from_slice(&w.middle);
            w.middle = m;
            w.origin += w.left.len() as i64;
        }
        while w.origin >= w.middle.len() as i64 {
            let r = w.right.clone();
            w.middle.extend_from_slice(&r);
        }
        w
    }

    pub fn map<U: Copy + Eq>(&self, f: impl Fn(T) -> U) -> BiEpWord<U> {
        BiEpWord {
            left: self.left.iter().map(|&x| f(x)).collect(),
            middle: self.middle.iter().map(|&x| f(x)).collect(),
            right: self.right.iter().map(|&x| f(x)).collect(),
            origin: self.origin,
        }
    }

    /// Applies a non-erasing substitution; position 0 of the image is the
    /// first letter of the image of the old letter at position 0.
    pub fn substitute<U: Copy + Eq>(&self, h: impl Fn(T) -> Vec<U>) -> BiEpWord<U> {
        let w = self.normalized();
        let img = |v: &[T]| -> Vec<U> { v.iter().flat_map(|&x| h(x)).collect() };
        let origin = img(&w.middle[..w.origin as usize]).len() as i64;
        BiEpWord {
            left: img(&w.left),
            middle: img(&w.middle),
            right: img(&w.right),
            origin,
        }
    }

    /// The bi-infinite periodic word built from the right tail, with position 0
    /// at position `k` of this word (for `k` inside the periodic tail).
    pub fn right_periodization(&self) -> BiEpWord<T> {
        let (_, hi) = self.core_range();
        BiEpWord {
            left: self.right.clone(),
            middle: Vec::new(),
            right: self.right.clone(),
            origin: -hi.rem_euclid(self.right.len() as i64),
        }
        .shift(0)
    }
}

fn fmt_letters<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
    for x in v {
        write!(f, "{}", letter_str(x))?;
    }
    Ok(())
}

fn letter_str<T: fmt::Display>(x: &T) -> String {
    let s = x.to_string();
    if let Some(rest) = s.strip_prefix('-') {
        format!("{rest}\u{304}")
    } else {
        s
    }
}

impl<T: fmt::Display> fmt::Display for EpWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(f, &self.prefix)?;
        f.write_str("(")?;
        fmt_letters(f, &self.period)?;
        f.write_str(")^inf")
    }
}

impl<T: fmt::Display> fmt::Debug for EpWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: fmt::Display + Copy + Eq> fmt::Display for BiEpWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.normalized();
        f.write_str("(")?;
        fmt_letters(f, &w.left)?;
        f.write_str(")^inf ")?;
        let o = w.origin as usize;
        fmt_letters(f, &w.middle[..o])?;
        f.write_str(".")?;
        fmt_letters(f, &w.middle[o..])?;
        f.write_str(" (")?;
        fmt_letters(f, &w.right)?;
        f.write_str(")^inf")
    }
}

impl<T: fmt::Display + Copy + Eq> fmt::Debug for BiEpWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a binary word such as `"0110"`.
pub fn parse_binary(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("not a binary letter: {c:?}"))),
        })
        .collect()
}

pub fn binary_string(w: &[u8]) -> String {
    w.iter().map(|&b| char::from(b'0' + b)).collect()
}

/// Parses signed digits written as `1,-1,0` or `1 -1 0`.
pub fn parse_digits(s: &str) -> Result<Vec<Digit>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Digit>()
                .map_err(|_| Error::Parse(format!("bad digit {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ep_access_and_shift() {
        let w = EpWord::new(vec![5, 6], vec![1, 2, 3]).unwrap();
        assert_eq!(w.take(8), vec![5, 6, 1, 2, 3, 1, 2, 3]);
        assert_eq!(w.shift(4).take(4), vec![3, 1, 2, 3]);
        assert_eq!(w.shift(1).take(4), vec![6, 1, 2, 3]);
    }

    #[test]
    fn canonical_form() {
        let w = EpWord::new(vec![1, 2, 1, 2], vec![1, 2, 1, 2]).unwrap();
        let c = w.canonical();
        assert!(c.prefix.is_empty());
        assert_eq!(c.period, vec![1, 2]);
        assert_eq!(w.take(20), c.take(20));
        let w = EpWord::new(vec![0, 3, 1], vec![2, 3, 1]).unwrap();
        let c = w.canonical();
        assert_eq!(c.prefix, vec![0]);
        assert_eq!(w.take(20), c.take(20));
    }

    #[test]
    fn bi_rays_agree_with_at() {
        let w = BiEpWord::new(vec![1, 2], vec![7, 8, 9], vec![3, 4, 5], 1).unwrap();
        for k in -7..9 {
            let r = w.right_ray(k);
            let l = w.left_ray(k);
            for i in 0..12 {
                assert_eq!(r.at(i), w.at(k + i as i64));
                assert_eq!(l.at(i), w.at(k - i as i64));
            }
        }
    }

    #[test]
    fn substitution_keeps_origin_letter() {
        let w = BiEpWord::new(vec![0], vec![1, 0, 1], vec![0], 2).unwrap();
        let g = w.substitute(|x: u8| if x == 1 { vec![1i64, -1] } else { vec![0] });
        assert_eq!(g.window(-3, 4), vec![1, -1, 0, 1, -1, 0, 0]);
        assert_eq!(g.at(0), 1);
        assert_eq!(g.at(-1), 0);
    }

    #[test]
    fn periodization() {
        let w = BiEpWord::new(vec![0], vec![9, 9], vec![1, 2, 3], 0).unwrap();
        let p = w.right_periodization();
        for n in -6..6 {
            assert_eq!(p.at(n), w.at(n + 30));
        }
    }

    #[test]
    fn display() {
        let w = BiEpWord::new(vec![0], vec![1, -1], vec![0], 1).unwrap();
        assert_eq!(w.to_string(), "(0)^inf 1.1\u{304} (0)^inf");
    }
}
