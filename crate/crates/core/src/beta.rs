//! Symmetric beta expansions `x = sum_{i>=1} d_i alpha^-i` generated by
//! `T(x) = alpha x - floor(alpha x + 1/2)`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{PisotQuadraticUnit, QuadraticSurd, UnitSign};
use crate::error::{Error, Result};
use crate::spectrum::quadratic::series;
use crate::words::{Digit, EpWord};

/// `c = floor((alpha + 1)/2)`, the largest digit.
pub fn max_digit(unit: PisotQuadraticUnit) -> Digit {
    let a = unit.alpha();
    let half = QuadraticSurd::from_ratio(1, 2);
    (&a.scale(&half.to_rational().expect("rational")) + &half)
        .floor()
        .to_i64()
        .expect("small digit")
}

#[derive(Debug, Clone, Serialize)]
pub struct SymBetaExpansion {
    pub unit: PisotQuadraticUnit,
    pub source: QuadraticSurd,
    pub digits: EpWord<Digit>,
}

fn half() -> QuadraticSurd {
    QuadraticSurd::from_ratio(1, 2)
}

/// One step of the map: the digit and the image.
pub fn t_step(alpha: &QuadraticSurd, x: &QuadraticSurd) -> (Digit, QuadraticSurd) {
    let ax = alpha * x;
    let d = (&ax + &half()).floor();
    let next = &ax - &QuadraticSurd::from_rational(d.clone().into());
    (d.to_i64().expect("digit fits"), next)
}

/// `[-(c + 1/2)/alpha, (c + 1/2)/alpha)`.
pub fn in_extended_domain(unit: PisotQuadraticUnit, x: &QuadraticSurd) -> bool {
    let c = QuadraticSurd::from_int(max_digit(unit));
    let bound = &(&c + &half()) / &unit.alpha();
    -bound.clone() <= *x && *x < bound
}

/// The first `n` digits by iterating the map.
pub fn digits_prefix(unit: PisotQuadraticUnit, x: &QuadraticSurd, n: usize) -> Result<Vec<Digit>> {
    if !in_extended_domain(unit, x) {
        return Err(Error::OutOfRange(format!(
            "{x} is outside the domain of the digit map"
        )));
    }
    let alpha = unit.alpha();
    let mut x = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (d, next) = t_step(&alpha, &x);
        out.push(d);
        x = next;
    }
    Ok(out)
}

/// Full expansion of `x` in the field of `alpha`; the period is found by an
/// exact repeat of the orbit.
pub fn encode(unit: PisotQuadraticUnit, x: &QuadraticSurd) -> Result<SymBetaExpansion> {
    if !x.is_rational() && x.radicand() != unit.radicand() {
        return Err(Error::MixedRadicands(x.radicand(), unit.radicand()));
    }
    if !in_extended_domain(unit, x) {
        return Err(Error::OutOfRange(format!(
            "{x} is outside the domain of the digit map"
        )));
    }
    let alpha = unit.alpha();
    let mut seen: HashMap<QuadraticSurd, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(&start) = seen.get(&cur) {
            let period = digits.split_off(start);
            return Ok(SymBetaExpansion {
                unit,
                source: x.clone(),
                digits: EpWord::new(digits, period)?,
            });
        }
        if seen.len() > 1_000_000 {
            return Err(Error::Insufficient("orbit longer than 10^6 steps".into()));
        }
        seen.insert(cur.clone(), digits.len());
        let (d, next) = t_step(&alpha, &cur);
        digits.push(d);
        cur = next;
    }
}

/// `sum_{i>=1} d_i alpha^-i`, exact.
pub fn reconstruct(unit: PisotQuadraticUnit, digits: &EpWord<Digit>) -> QuadraticSurd {
    let inv = unit.alpha().pow(-1);
    &inv * &series(digits, &inv)
}

/// Closed forms for `d(1/2)` and `d(-1/2)`.
pub fn boundary_expansions(unit: PisotQuadraticUnit) -> (EpWord<Digit>, EpWord<Digit>) {
    let c = max_digit(unit);
    let even = unit.b.is_multiple_of(2);
    let ep = |p: Vec<Digit>, q: Vec<Digit>| EpWord::new(p, q).expect("nonempty period");
    match (unit.sign, even) {
        (UnitSign::Plus, true) => (ep(vec![c, 0], vec![-c, 1]), ep(vec![], vec![-c, 1])),
        (UnitSign::Plus, false) => (
            ep(vec![c, c, 0], vec![-c, -c, 1]),
            ep(vec![], vec![-c, -c, 1]),
        ),
        (UnitSign::Minus, true) => (ep(vec![c, 1], vec![-c, 0]), ep(vec![], vec![-c, 0])),
        (UnitSign::Minus, false) => (
            ep(vec![c, 1 - c, 0], vec![-c, c - 1, 1]),
            ep(vec![], vec![-c, c - 1, 1]),
        ),
    }
}

/// Lexicographic order of eventually periodic words, exact.
pub fn lex_cmp(a: &EpWord<Digit>, b: &EpWord<Digit>) -> Ordering {
    let h = a.comparison_horizon(b);
    (0..h)
        .map(|i| a.at(i).cmp(&b.at(i)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// `d(-1/2) <= sigma^k(d) < d(1/2)` for every `k`.
pub fn is_admissible(unit: PisotQuadraticUnit, digits: &EpWord<Digit>) -> Result<bool> {
    let c = max_digit(unit);
    let (p, l) = digits.bounds();
    if (0..p + l).any(|i| digits.at(i).abs() > c) {
        return Err(Error::InvalidParameter(format!(
            "digit outside [-{c}, {c}]"
        )));
    }
    let (upper, lower) = boundary_expansions(unit);
    Ok((0..p + l).all(|k| {
        let s = digits.shift(k);
        lex_cmp(&lower, &s) != Ordering::Greater && lex_cmp(&s, &upper) == Ordering::Less
    }))
}

/// `(alpha - alpha2)/2 <= c + 1/2` (needed in the minus family so that the
/// interval construction stays inside the extended domain).
pub fn extended_domain_inequality(unit: PisotQuadraticUnit) -> bool {
    let lhs = unit
        .alpha_gap()
        .scale(&half().to_rational().expect("rational"));
    lhs <= &QuadraticSurd::from_int(max_digit(unit)) + &half()
}
