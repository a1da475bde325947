//! The mirror index `iota(x) = sup { |v| : v01~v or v10~v is a factor of x }`.

use serde::Serialize;

use super::balance::mirror_extent;
use super::word::BiEpWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IotaReport {
    /// The supremum, or the best lower bound when `exact` is false.
    pub value: usize,
    pub infinite: bool,
    /// False when computed from a finite window that may under-report.
    pub exact: bool,
    /// Constant words have no `01`/`10` centre; their value is set to 0.
    pub degenerate: bool,
    /// Centres (index of the left letter) where the value is attained.
    pub attained_at: Vec<usize>,
}

/// Lower bound from a finite window: every centre, truncated or not,
/// certifies a factor `v01~v` or `v10~v`.
pub fn iota_window(w: &[u8]) -> IotaReport {
    let mut best = 0;
    let mut at = Vec::new();
    let mut any = false;
    for c in 0..w.len().saturating_sub(1) {
        if w[c] == w[c + 1] {
            continue;
        }
        any = true;
        let (m, _) = mirror_extent(w, c);
        if m > best || at.is_empty() {
            best = m;
            at.clear();
        }
        if m == best {
            at.push(c);
        }
    }
    IotaReport {
        value: best,
        infinite: false,
        exact: false,
        degenerate: !any,
        attained_at: at,
    }
}

/// Exact value for `nu^Z`. A mirror of length `|nu|` around a centre
/// forces a mirror of every length there.
pub fn iota_periodic(nu: &[u8]) -> IotaReport {
    let p = nu.len();
    let at = |i: i64| nu[i.rem_euclid(p as i64) as usize];
    let mut best = 0;
    let mut infinite = false;
    let mut attained = Vec::new();
    let mut any = false;
    for c in 0..p {
        let c = c as i64;
        if at(c) == at(c + 1) {
            continue;
        }
        any = true;
        let mut m = 0usize;
        while m < p && at(c - 1 - m as i64) == at(c + 2 + m as i64) {
            m += 1;
        }
        if m == p {
            infinite = true;
            continue;
        }
        if m > best || attained.is_empty() {
            best = m;
            attained.clear();
        }
        if m == best {
            attained.push(c as usize);
        }
    }
    IotaReport {
        value: best,
        infinite,
        exact: true,
        degenerate: !any,
        attained_at: if infinite { Vec::new() } else { attained },
    }
}

/// Exact value for a bi-infinite eventually periodic word. Reported centres
/// are offsets from the lowest scanned position.
pub fn iota_bi(x: &BiEpWord<u8>) -> IotaReport {
    let left = iota_periodic(&x.left);
    let right = iota_periodic(&x.right);
    let (lo, hi) = x.core_range();
    let (l, r) = (x.left.len() as i64, x.right.len() as i64);
    let bound = (hi - lo) + num_integer::lcm(l, r) + l + r + 2;
    let mut best = left.value.max(right.value);
    let mut infinite = left.infinite || right.infinite;
    let mut any = !left.degenerate || !right.degenerate;
    let start = lo - l - 1;
    let mut attained = Vec::new();
    for c in start..hi + r + 1 {
        if x.at(c) == x.at(c + 1) {
            continue;
        }
        any = true;
        let mut m = 0i64;
        while m < bound && x.at(c - 1 - m) == x.at(c + 2 + m) {
            m += 1;
        }
        if m == bound {
            infinite = true;
            continue;
        }
        let m = m as usize;
        if m > best {
            best = m;
            attained.clear();
        }
        if m == best {
            attained.push((c - start) as usize);
        }
    }
    IotaReport {
        value: best,
        infinite,
        exact: true,
        degenerate: !any,
        attained_at: attained,
    }
}
