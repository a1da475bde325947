//! Balance of binary words and the forbidden factors `0v01~v1`, `1~v10v0`.

use serde::Serialize;

/// Result of a balance test on a finite word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    /// For unbalanced words: a palindrome `p` with `0p0` and `1p1` both factors.
    pub witness: Option<Vec<u8>>,
}

fn ones_prefix(w: &[u8]) -> Vec<usize> {
    let mut acc = vec![0];
    for &x in w {
        acc.push(acc.last().unwrap() + x as usize);
    }
    acc
}

fn contains(w: &[u8], f: &[u8]) -> bool {
    f.len() <= w.len() && w.windows(f.len()).any(|x| x == f)
}

fn is_palindrome(p: &[u8]) -> bool {
    p.iter().eq(p.iter().rev())
}

/// Shortest factor length at which the number of 1s varies by two or more,
/// with the positions of a lightest and a heaviest window.
fn first_imbalance(w: &[u8]) -> Option<(usize, usize, usize)> {
    let pre = ones_prefix(w);
    for n in 1..=w.len() {
        let counts = (0..=w.len() - n).map(|i| (pre[i + n] - pre[i], i));
        let lo = counts.clone().min()?;
        let hi = counts.max()?;
        if hi.0 - lo.0 >= 2 {
            return Some((n, lo.1, hi.1));
        }
    }
    None
}

/// Balance test with a palindromic witness for unbalanced words.
pub fn is_balanced(w: &[u8]) -> BalanceReport {
    let Some((n, lo, hi)) = first_imbalance(w) else {
        return BalanceReport {
            balanced: true,
            witness: None,
        };
    };
    // Minimal unbalanced windows have the shape 0p0 and 1p1.
    let p = &w[lo + 1..lo + n - 1];
    let witness = if w[lo] == 0 && w[hi] == 1 && &w[hi + 1..hi + n - 1] == p && is_palindrome(p) {
        p.to_vec()
    } else {
        search_witness(w).expect("unbalanced words have a palindromic witness")
    };
    BalanceReport {
        balanced: false,
        witness: Some(witness),
    }
}

fn search_witness(w: &[u8]) -> Option<Vec<u8>> {
    for len in 0..w.len() {
        for i in 0..=w.len() - len {
            let p = &w[i..i + len];
            if !is_palindrome(p) {
                continue;
            }
            let mut a = vec![0];
            a.extend_from_slice(p);
            a.push(0);
            let mut b = vec![1];
            b.extend_from_slice(p);
            b.push(1);
            if contains(w, &a) && contains(w, &b) {
                return Some(p.to_vec());
            }
        }
    }
    None
}

/// Whether `nu^Z` is balanced. Every factor of `nu^Z` has the same weight as
/// one of length at most `|nu|`, and those all occur in `nu nu`.
pub fn is_balanced_periodic(nu: &[u8]) -> bool {
    let w: Vec<u8> = nu.iter().chain(nu).chain(nu).copied().collect();
    is_balanced(&w).balanced
}

/// Which member of the forbidden family occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ForbiddenKind {
    /// `0 v 0 1 ~v 1`
    ZeroOne,
    /// `1 ~v 1 0 v 0`
    OneZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenHit {
    /// Index of the first letter of the factor.
    pub position: usize,
    pub v: Vec<u8>,
    pub kind: ForbiddenKind,
}

impl ForbiddenHit {
    pub fn factor(&self) -> Vec<u8> {
        let rv: Vec<u8> = self.v.iter().rev().copied().collect();
        let (a, b) = match self.kind {
            ForbiddenKind::ZeroOne => ((0, &self.v), (1, &rv)),
            ForbiddenKind::OneZero => ((1, &rv), (0, &self.v)),
        };
        let mut f = vec![a.0];
        f.extend_from_slice(a.1);
        f.extend_from_slice(&[a.0, b.0]);
        f.extend_from_slice(b.1);
        f.push(b.0);
        f
    }
}

/// Length of the mirror extension around the centre between `c` and `c + 1`,
/// and whether it stopped inside the word (rather than at an edge).
pub(crate) fn mirror_extent(w: &[u8], c: usize) -> (usize, bool) {
    let mut m = 0;
    loop {
        if m + 1 > c || c + 2 + m >= w.len() {
            return (m, false);
        }
        if w[c - 1 - m] != w[c + 2 + m] {
            return (m, true);
        }
        m += 1;
    }
}

/// All occurrences of factors `0v01~v1` and `1~v10v0`.
///
/// Around each centre `ab` with `a != b`, the mirror extension is maximal and
/// the letters just outside it decide membership, so each centre contributes
/// at most one occurrence.
pub fn forbidden_scan(w: &[u8]) -> Vec<ForbiddenHit> {
    let mut hits = Vec::new();
    for c in 0..w.len().saturating_sub(1) {
        if w[c] == w[c + 1] {
            continue;
        }
        let (m, stopped) = mirror_extent(w, c);
        if !stopped {
            continue;
        }
        let (l, r) = (w[c - 1 - m], w[c + 2 + m]);
        if l == w[c] && r == w[c + 1] {
            let position = c - 1 - m;
            let (kind, v) = if w[c] == 0 {
                (ForbiddenKind::ZeroOne, w[c - m..c].to_vec())
            } else {
                (ForbiddenKind::OneZero, w[c + 2..c + 2 + m].to_vec())
            };
            hits.push(ForbiddenHit { position, v, kind });
        }
    }
    hits
}
