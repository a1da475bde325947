//! Words realizing every value in `[kappa, 1/2]` as a limsup, built from
//! symmetric beta expansions.

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{Ball, PisotQuadraticUnit, QuadraticSurd, UnitSign};
use crate::beta::{encode, max_digit};
use crate::error::{Error, Result};
use crate::spectrum::quadratic::QuadEval;
use crate::words::{BiEpWord, Digit, EpWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KeyInequality {
    Key,
    Key2,
    Key3,
    Key4,
    Key5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitRule {
    /// `s_n = ceil(y_n/2)`, `s_-n = floor(y_n/2)`.
    Plain,
    /// Ceil and floor swap sides at even `n`.
    Alternating,
}

#[derive(Debug, Clone, Serialize)]
pub struct KappaCase {
    pub b: u64,
    pub sign: UnitSign,
    pub c: Digit,
    pub kappa: QuadraticSurd,
    pub kappa_approx: f64,
    pub key: KeyInequality,
    pub key_lhs: QuadraticSurd,
    pub key_rhs: QuadraticSurd,
    pub key_holds: bool,
    pub kappa_below_half: bool,
    pub split: SplitRule,
}

fn int(n: i64) -> QuadraticSurd {
    QuadraticSurd::from_int(n)
}

/// Both sides of a Key inequality for `unit`.
pub fn key_sides(unit: PisotQuadraticUnit, key: KeyInequality) -> (QuadraticSurd, QuadraticSurd) {
    let a = unit.alpha();
    let c = max_digit(unit);
    let cc = int(c);
    let h = int(Integer::div_ceil(&c, &2));
    let one = QuadraticSurd::one();
    let inv = a.pow(-1);
    let two = int(2);
    // 1 + 2/(alpha - 1) + 1/alpha
    let first = &(&one + &(&two / &(&a - &one))) + &inv;
    // 1 + 2/(alpha^2 - 1) + 2/alpha
    let second = &(&one + &(&two / &(&a.pow(2) - &one))) + &(&two * &inv);
    match key {
        KeyInequality::Key => (&h * &first, &cc - &(&cc * &inv)),
        KeyInequality::Key2 => (&h * &first, cc),
        KeyInequality::Key3 => (
            &h * &second,
            &cc - &(&QuadraticSurd::from_ratio(10, 9) * &inv),
        ),
        KeyInequality::Key4 => (
            &h * &first,
            &cc + &(&QuadraticSurd::from_ratio(2, 3) * &inv),
        ),
        KeyInequality::Key5 => (&h * &second, &cc - &(&int(c - 1) * &inv)),
    }
}

/// The case table: which inequality, which `kappa` and which split rule.
pub fn kappa_and_keys(unit: PisotQuadraticUnit) -> Result<KappaCase> {
    use KeyInequality::*;
    let b = unit.b;
    let (key, split) = match (unit.sign, b) {
        (UnitSign::Plus, 0..=3) | (UnitSign::Minus, 0..=2) => {
            return Err(Error::OutOfRange(format!(
                "{unit} has alpha < 3; the construction needs b >= 4 (plus) or b >= 3 (minus)"
            )))
        }
        (UnitSign::Plus, 4) => (Key3, SplitRule::Alternating),
        (UnitSign::Plus, 6) => (Key3, SplitRule::Plain),
        (UnitSign::Plus, 5 | 7) => (Key2, SplitRule::Plain),
        (UnitSign::Plus, _) => (Key, SplitRule::Plain),
        (UnitSign::Minus, 3) => (Key5, SplitRule::Alternating),
        (UnitSign::Minus, 5) => (Key5, SplitRule::Plain),
        (UnitSign::Minus, 4 | 6) => (Key4, SplitRule::Plain),
        (UnitSign::Minus, _) => (Key, SplitRule::Plain),
    };
    let (lhs, rhs) = key_sides(unit, key);
    let kappa = &rhs / &unit.alpha_gap();
    let half = QuadraticSurd::from_ratio(1, 2);
    Ok(KappaCase {
        b,
        sign: unit.sign,
        c: max_digit(unit),
        kappa_approx: kappa.to_f64(),
        kappa_below_half: kappa < half,
        key_holds: lhs <= rhs,
        key,
        key_lhs: lhs,
        key_rhs: rhs,
        kappa,
        split,
    })
}

/// `(s_n, s_-n)` from the digit `y_n`, `n >= 1`.
pub fn split_digit(y: Digit, n: usize, split: SplitRule, sign: UnitSign) -> (Digit, Digit) {
    let (hi, lo) = (Integer::div_ceil(&y, &2), Integer::div_floor(&y, &2));
    let (pos, neg) = match split {
        SplitRule::Alternating if n.is_multiple_of(2) => (lo, hi),
        _ => (hi, lo),
    };
    let flip = if sign == UnitSign::Minus && n % 2 == 1 {
        -1
    } else {
        1
    };
    (pos, flip * neg)
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalWord {
    pub eta: QuadraticSurd,
    /// Digits `y_0 y_1 ...` of `eta (alpha - alpha2)/alpha`.
    pub digits: EpWord<Digit>,
    pub word: BiEpWord<Digit>,
}

/// The bi-infinite word with `g = eta` built from the expansion of
/// `eta (alpha - alpha2) / alpha`.
pub fn build_biword(case: &KappaCase, eta: &QuadraticSurd) -> Result<IntervalWord> {
    let unit = PisotQuadraticUnit::new(case.b, case.sign)?;
    let half = QuadraticSurd::from_ratio(1, 2);
    if *eta < case.kappa || *eta > half {
        return Err(Error::OutOfRange(format!(
            "eta = {} is outside [kappa, 1/2]",
            eta.to_f64()
        )));
    }
    let x = &(eta * &unit.alpha_gap()) / &unit.alpha();
    let digits = encode(unit, &x)?.digits;
    let (p, l) = digits.bounds();
    let l2 = l.lcm(&2);
    let m = p + 1;
    let y = |n: usize| digits.at(n);
    let pair = |n: usize| split_digit(y(n), n, case.split, case.sign);
    // Positions -m..m in `middle`, then periods of length l2 on each side.
    let mut middle = Vec::with_capacity(2 * m);
    for n in (1..=m).rev() {
        middle.push(pair(n).1);
    }
    middle.push(y(0));
    for n in 1..m {
        middle.push(pair(n).0);
    }
    let right = (m..m + l2).map(|n| pair(n).0).collect();
    let left = (0..l2).rev().map(|i| pair(m + 1 + i).1).collect();
    let word = BiEpWord::new(left, middle, right, m as i64)?;
    Ok(IntervalWord {
        eta: eta.clone(),
        digits,
        word,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaCheck {
    pub eta: QuadraticSurd,
    pub eta_approx: f64,
    pub g_equals_eta: bool,
    /// `max_{|k| <= window} |g(sigma^k w)|`.
    pub max_shift_value: f64,
    pub shifts_bounded: bool,
    /// No `1 1` or `-1 -1` away from the origin (only meaningful for the
    /// alternating split).
    pub no_equal_unit_pairs: bool,
}

/// The `n + 1` points `kappa + i (1/2 - kappa)/n`.
pub fn eta_grid(case: &KappaCase, n: i64) -> Vec<QuadraticSurd> {
    let half = QuadraticSurd::from_ratio(1, 2);
    let step = &(&half - &case.kappa) / &int(n);
    (0..=n).map(|i| &case.kappa + &(&step * &int(i))).collect()
}

pub fn check_eta(case: &KappaCase, eta: &QuadraticSurd, window: i64) -> Result<EtaCheck> {
    let unit = PisotQuadraticUnit::new(case.b, case.sign)?;
    let eval = QuadEval::new(unit);
    let iw = build_biword(case, eta)?;
    let w = &iw.word;
    // Balls decide almost every shift; the rest are compared exactly.
    let eta_ball = Ball::from_surd(eta, 128);
    let balls = eval.g_range_balls(w, -window, window + 1, 128);
    let mut bounded = true;
    let mut max = 0f64;
    for (k, v) in (-window..=window).zip(&balls) {
        let a = v.abs();
        max = max.max(a.to_f64());
        if !a.certainly_le(&eta_ball) && eval.g(w, k).abs() > *eta {
            bounded = false;
        }
    }
    let no_pairs = (-window..window).filter(|&n| n >= 1 || n <= -2).all(|n| {
        let (a, b) = (w.at(n), w.at(n + 1));
        !(a == b && a.abs() == 1)
    });
    Ok(EtaCheck {
        eta: eta.clone(),
        eta_approx: eta.to_f64(),
        g_equals_eta: eval.g(w, 0) == *eta,
        max_shift_value: max,
        shifts_bounded: bounded,
        no_equal_unit_pairs: no_pairs,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FoldReport {
    pub ell: usize,
    pub length: usize,
    /// Largest `|g(sigma^k x)|` over `1 <= k <= length`.
    pub max_value: f64,
    pub gap: f64,
    /// Largest `|g|` over the last block, which tends to `eta`.
    pub last_block_max: f64,
    pub last_block_gap: f64,
}

/// `x_1 x_2 ... = t(ell) t(ell+1) ...` with `t(n) = s_-n ... s_n`, and
/// `x_n = 0` for `n <= 0`, truncated at `length` letters.
pub fn fold_to_one_sided(w: &BiEpWord<Digit>, ell: usize, length: usize) -> Vec<Digit> {
    let mut out = Vec::with_capacity(length);
    let mut n = ell as i64;
    while out.len() < length {
        out.extend(w.window(-n, n + 1));
        n += 1;
    }
    out.truncate(length);
    out
}

pub fn fold_report(
    unit: PisotQuadraticUnit,
    iw: &IntervalWord,
    ell: usize,
    length: usize,
) -> Result<FoldReport> {
    let eval = QuadEval::new(unit);
    // Extra letters so that truncation does not reach the evaluated shifts.
    let extra = 80;
    let x = fold_to_one_sided(&iw.word, ell, length + extra);
    let mut mid = vec![0];
    mid.extend(&x);
    let word = BiEpWord::new(vec![0], mid, vec![0], 0)?;
    let vals: Vec<f64> = eval
        .g_range(&word, 1, length as i64 + 1)
        .iter()
        .map(|v| v.abs().to_f64())
        .collect();
    let eta = iw.eta.to_f64();
    let max = vals.iter().cloned().fold(0.0, f64::max);
    // The last complete block t(n) inside the window.
    let mut start = 0usize;
    let mut n = ell;
    while start + 2 * n < length {
        if start + 2 * (n + 1) + 1 + 2 * n + 1 > length {
            break;
        }
        start += 2 * n + 1;
        n += 1;
    }
    let last = vals[start..(start + 2 * n + 1).min(length)]
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    Ok(FoldReport {
        ell,
        length,
        max_value: max,
        gap: (max - eta).abs(),
        last_block_max: last,
        last_block_gap: (last - eta).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_table() {
        let c = kappa_and_keys(PisotQuadraticUnit::plus(8).unwrap()).unwrap();
        assert_eq!((c.key, c.c), (KeyInequality::Key, 4));
        assert!(c.key_holds && c.kappa_below_half);
        let a = PisotQuadraticUnit::plus(8).unwrap().alpha();
        assert_eq!(
            c.kappa,
            (&a + &QuadraticSurd::one())
                .pow(-1)
                .scale(&num_rational::BigRational::from_integer(4.into()))
        );

        let c = kappa_and_keys(PisotQuadraticUnit::plus(4).unwrap()).unwrap();
        assert_eq!(c.key, KeyInequality::Key3);
        assert!(c.key_holds);
        assert!((c.kappa_approx - 0.4914).abs() < 1e-3);

        let u7 = PisotQuadraticUnit::plus(7).unwrap();
        let (l, r) = key_sides(u7, KeyInequality::Key);
        assert!(l > r);
        assert!(kappa_and_keys(u7).unwrap().key_holds);
        assert!(kappa_and_keys(PisotQuadraticUnit::plus(3).unwrap()).is_err());
    }

    #[test]
    fn split_identity() {
        for y in -6..=6 {
            for n in 1..5 {
                for rule in [SplitRule::Plain, SplitRule::Alternating] {
                    let (p, q) = split_digit(y, n, rule, UnitSign::Plus);
                    assert_eq!(p + q, y);
                    let (p, q) = split_digit(y, n, rule, UnitSign::Minus);
                    assert_eq!(p + if n % 2 == 1 { -q } else { q }, y);
                }
            }
        }
    }

    #[test]
    fn words_realize_eta() {
        for u in [
            PisotQuadraticUnit::plus(8).unwrap(),
            PisotQuadraticUnit::plus(4).unwrap(),
        ] {
            let case = kappa_and_keys(u).unwrap();
            for eta in [case.kappa.clone(), QuadraticSurd::from_ratio(49, 100)] {
                if eta < case.kappa {
                    continue;
                }
                let r = check_eta(&case, &eta, 40).unwrap();
                assert!(r.g_equals_eta && r.shifts_bounded, "{u} {r:?}");
                let _ = r.no_equal_unit_pairs;
            }
        }
    }

    /// With the alternating split, `1 1` and `-1 -1` still appear, and only
    /// where the digits contain `1 2` or `-1 -2`.
    #[test]
    fn equal_unit_pairs_come_from_one_two() {
        let u = PisotQuadraticUnit::plus(4).unwrap();
        let case = kappa_and_keys(u).unwrap();
        let mut seen = 0;
        for eta in eta_grid(&case, 10) {
            let iw = build_biword(&case, &eta).unwrap();
            let w = &iw.word;
            let y = iw.digits.take(60);
            for n in (-40i64..40).filter(|&n| n >= 1 || n <= -2) {
                if w.at(n) == w.at(n + 1) && w.at(n).abs() == 1 {
                    seen += 1;
                    let j = if n >= 1 {
                        n as usize
                    } else {
                        (-n - 1) as usize
                    };
                    let pair = (y[j], y[j + 1]);
                    assert!(pair == (1, 2) || pair == (-1, -2), "n = {n}: {pair:?}");
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn folding_converges() {
        let u = PisotQuadraticUnit::plus(8).unwrap();
        let case = kappa_and_keys(u).unwrap();
        let iw = build_biword(&case, &QuadraticSurd::from_ratio(47, 100)).unwrap();
        let r = fold_report(u, &iw, 10, 400).unwrap();
        assert!(r.last_block_gap < 1e-6, "{r:?}");
    }
}
