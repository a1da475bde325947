//! Quadratic units: the realization map `g`, the `s`-sequence of a number,
//! the `p_n/q_n` tables and their Christoffel-word witnesses.
//!
//! Words are indexed so that position `n` carries `s_n`, and
//! `g(s) = (sum_{j>=0} s_j alpha^-j + sum_{j>=1} s_-j alpha2^j) / (alpha - alpha2)`.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{negative_cf, Ball, PisotQuadraticUnit, QuadraticSurd, UnitSign};
use crate::error::{Error, Result};
use crate::format::ser_rational;
use crate::words::{central_word, BiEpWord, Digit, EpWord};

/// Exact evaluator for one unit.
#[derive(Debug, Clone)]
pub struct QuadEval {
    pub unit: PisotQuadraticUnit,
    pub alpha: QuadraticSurd,
    pub alpha2: QuadraticSurd,
    inv_alpha: QuadraticSurd,
    inv_gap: QuadraticSurd,
}

fn int(n: Digit) -> QuadraticSurd {
    QuadraticSurd::from_int(n)
}

/// `sum_i w_i x^i` over an eventually periodic word, for `|x| < 1`.
pub(crate) fn series(w: &EpWord<Digit>, x: &QuadraticSurd) -> QuadraticSurd {
    let horner = |v: &[Digit]| {
        v.iter()
            .rev()
            .fold(QuadraticSurd::zero(), |acc, &d| &(&acc * x) + &int(d))
    };
    let head = horner(&w.prefix);
    let body = horner(&w.period);
    let xp = x.pow(w.prefix.len() as i64);
    let xl = x.pow(w.period.len() as i64);
    &head + &(&(&xp * &body) / &(&QuadraticSurd::one() - &xl))
}

impl QuadEval {
    pub fn new(unit: PisotQuadraticUnit) -> Self {
        let alpha = unit.alpha();
        let alpha2 = unit.alpha2();
        QuadEval {
            unit,
            inv_alpha: alpha.pow(-1),
            inv_gap: unit.alpha_gap().pow(-1),
            alpha,
            alpha2,
        }
    }

    /// `sum_{j>=0} w_{k+j} alpha^-j`.
    fn right_sum(&self, w: &BiEpWord<Digit>, k: i64) -> QuadraticSurd {
        series(&w.right_ray(k), &self.inv_alpha)
    }

    /// `sum_{j>=1} w_{k-j} alpha2^j`.
    fn left_sum(&self, w: &BiEpWord<Digit>, k: i64) -> QuadraticSurd {
        &self.alpha2 * &series(&w.left_ray(k - 1), &self.alpha2)
    }

    /// `g(sigma^k w)`.
    pub fn g(&self, w: &BiEpWord<Digit>, k: i64) -> QuadraticSurd {
        &self.inv_gap * &(&self.right_sum(w, k) + &self.left_sum(w, k))
    }

    /// `g(sigma^k w)` for `k = lo..hi`, stepping exactly from `lo`.
    pub fn g_range(&self, w: &BiEpWord<Digit>, lo: i64, hi: i64) -> Vec<QuadraticSurd> {
        let mut out = Vec::with_capacity((hi - lo).max(0) as usize);
        if hi <= lo {
            return out;
        }
        let mut r = self.right_sum(w, lo);
        let mut l = self.left_sum(w, lo);
        for k in lo..hi {
            out.push(&self.inv_gap * &(&r + &l));
            let d = int(w.at(k));
            r = &self.alpha * &(&r - &d);
            l = &self.alpha2 * &(&l + &d);
        }
        out
    }

    /// Enclosures of `g(sigma^k w)` for `k = lo..hi`. The right sums are
    /// stepped down from `hi` and the left sums up from `lo`, the directions
    /// in which rounding errors shrink.
    pub fn g_range_balls(&self, w: &BiEpWord<Digit>, lo: i64, hi: i64, bits: u32) -> Vec<Ball> {
        if hi <= lo {
            return Vec::new();
        }
        let n = (hi - lo) as usize;
        let ball = |x: &QuadraticSurd| Ball::from_surd(x, bits);
        let (inv_a, a2, inv_gap) = (
            ball(&self.inv_alpha),
            ball(&self.alpha2),
            ball(&self.inv_gap),
        );
        let mut right = vec![Ball::zero(bits); n];
        let mut r = ball(&self.right_sum(w, hi - 1));
        for k in (lo..hi).rev() {
            if k < hi - 1 {
                r = Ball::from_i64(w.at(k), bits).add(&r.mul(&inv_a));
            }
            right[(k - lo) as usize] = r.clone();
        }
        let mut l = ball(&self.left_sum(w, lo));
        let mut out = Vec::with_capacity(n);
        for k in lo..hi {
            out.push(inv_gap.mul(&right[(k - lo) as usize].add(&l)));
            l = a2.mul(&l.add(&Ball::from_i64(w.at(k), bits)));
        }
        out
    }

    /// `limsup_{k -> +inf} |g(sigma^k w)|`: the maximum over one period of the
    /// right tail, with the attaining phases (offsets into that period).
    pub fn tail_limsup(&self, w: &BiEpWord<Digit>) -> (QuadraticSurd, Vec<usize>) {
        let p = w.right_periodization();
        periodic_max(&self.g_range(&p, 0, w.right.len() as i64))
    }

    /// Same as [`QuadEval::tail_limsup`] for `k -> -inf`.
    pub fn left_limsup(&self, w: &BiEpWord<Digit>) -> (QuadraticSurd, Vec<usize>) {
        let l = w.left.len() as i64;
        let aligned = left_periodization(w);
        periodic_max(&self.g_range(&aligned, 0, l))
    }

    /// Multiplies by `1/(alpha - alpha2)`.
    pub fn over_gap(&self, x: &QuadraticSurd) -> QuadraticSurd {
        &self.inv_gap * x
    }

    /// The threshold `1/(1+alpha)` (plus) or `b/(1+alpha^2)` (minus).
    pub fn threshold(&self) -> QuadraticSurd {
        limit(self.unit)
    }
}

/// The periodic word agreeing with `w` on its left tail.
pub fn left_periodization<T: Copy + Eq>(w: &BiEpWord<T>) -> BiEpWord<T> {
    let l = w.left.len() as i64;
    let (lo, _) = w.core_range();
    // Position lo - 1 is the last letter of `left`, so position n is
    // left[(n - lo) mod l].
    BiEpWord {
        left: w.left.clone(),
        middle: Vec::new(),
        right: w.left.clone(),
        origin: -lo.rem_euclid(l),
    }
}

fn periodic_max(vals: &[QuadraticSurd]) -> (QuadraticSurd, Vec<usize>) {
    let abs: Vec<QuadraticSurd> = vals.iter().map(|v| v.abs()).collect();
    let m = abs
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(QuadraticSurd::zero);
    let at = abs
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == m)
        .map(|(i, _)| i)
        .collect();
    (m, at)
}

/// `1/(1+alpha)` (plus) or `b/(1+alpha^2)` (minus).
pub fn limit(unit: PisotQuadraticUnit) -> QuadraticSurd {
    let a = unit.alpha();
    let one = QuadraticSurd::one();
    match unit.sign {
        UnitSign::Plus => (&one + &a).pow(-1),
        UnitSign::Minus => &int(unit.b as i64) * &(&one + &a.pow(2)).pow(-1),
    }
}

fn check_field(unit: PisotQuadraticUnit, xi: &QuadraticSurd) -> Result<()> {
    if !xi.is_rational() && xi.radicand() != unit.radicand() {
        return Err(Error::MixedRadicands(xi.radicand(), unit.radicand()));
    }
    Ok(())
}

/// `s_n = u(xi alpha^{n+1}) - b u(xi alpha^n) + c u(xi alpha^{n-1})` for
/// `n = lo..hi`, with `eps(xi alpha^n)`. Here `c` is the constant term.
pub fn s_values(
    unit: PisotQuadraticUnit,
    xi: &QuadraticSurd,
    lo: i64,
    hi: i64,
) -> Result<Vec<(Digit, QuadraticSurd)>> {
    check_field(unit, xi)?;
    let alpha = unit.alpha();
    let [_, mb, c] = unit.recurrence();
    let mut x = xi * &alpha.pow(lo - 1);
    let mut us = Vec::new();
    let mut eps = Vec::new();
    for _ in lo - 1..=hi {
        let (u, e) = x.nearest_integer();
        us.push(u);
        eps.push(e);
        x = &x * &alpha;
    }
    let to_digit = |v: num_bigint::BigInt| -> Result<Digit> {
        i64::try_from(v).map_err(|_| Error::OutOfRange("digit does not fit in i64".into()))
    };
    (0..(hi - lo) as usize)
        .map(|i| {
            let s = &us[i + 2] + &us[i + 1] * mb + &us[i] * c;
            Ok((to_digit(s)?, eps[i + 1].clone()))
        })
        .collect()
}

/// The full `s`-sequence of `xi` in the field of `alpha` as an eventually
/// periodic bi-infinite word.
///
/// Write `xi alpha^n = T_n - e_n` with `T_n` the trace and `e_n` the
/// conjugate term. Once `|e_n|` is below half the spacing of the possible
/// values of `T_n` mod 1, `u(xi alpha^n)` depends only on `T_n mod 1` and
/// the sign of `e_n`, both of which are periodic.
pub fn s_word(unit: PisotQuadraticUnit, xi: &QuadraticSurd) -> Result<BiEpWord<Digit>> {
    check_field(unit, xi)?;
    if xi.is_zero() {
        return BiEpWord::new(vec![0], Vec::new(), vec![0], 0);
    }
    let alpha = unit.alpha();
    let half = QuadraticSurd::from_ratio(1, 2);
    let mut m = 1i64;
    while &xi.abs() * &alpha.pow(1 - m) >= half {
        m += 1;
    }
    let b = BigRational::from_integer(unit.b.into());
    let c = BigRational::from_integer(unit.sign.constant().into());
    let frac = |q: &BigRational| q - q.floor();
    let t0 = xi.trace();
    let t1 = (xi * &alpha).trace();
    let spacing = t0.denom().lcm(t1.denom());
    let start = (frac(&t0), frac(&t1));
    let mut state = start.clone();
    let mut period = 0usize;
    loop {
        let next = frac(&(&b * &state.1 - &c * &state.0));
        state = (state.1, next);
        period += 1;
        if state == start {
            break;
        }
        if period > 1_000_000 {
            return Err(Error::Insufficient(
                "trace orbit period exceeds 10^6".into(),
            ));
        }
    }
    if unit.sign == UnitSign::Minus && period % 2 == 1 {
        period *= 2;
    }
    let xbar = xi.conj();
    let alpha2 = unit.alpha2();
    let bound = QuadraticSurd::from_rational(BigRational::new(1.into(), 2 * spacing));
    let mut n0 = 0i64;
    while (&xbar * &alpha2.pow(n0)).abs() >= bound {
        n0 += 1;
    }
    let first = n0 + 1;
    let lo = 1 - m;
    let vals = s_values(unit, xi, lo, first + 2 * period as i64)?;
    let digits: Vec<Digit> = vals.into_iter().map(|(s, _)| s).collect();
    let split = (first - lo) as usize;
    let right = digits[split..split + period].to_vec();
    if digits[split + period..] != right[..] {
        return Err(Error::VerificationFailure(
            "s-sequence did not repeat with the trace period".into(),
        ));
    }
    BiEpWord::new(vec![0], digits[..split].to_vec(), right, -lo)
}

/// `gamma(1) = 1 -1`, `gamma(0) = 0`; the tilde variant maps `1` to `-1 1`.
pub fn gamma_letter(c: u8, tilde: bool) -> Vec<Digit> {
    match (c, tilde) {
        (0, _) => vec![0],
        (_, false) => vec![1, -1],
        (_, true) => vec![-1, 1],
    }
}

pub fn gamma(x: &[u8], tilde: bool) -> Vec<Digit> {
    x.iter().flat_map(|&c| gamma_letter(c, tilde)).collect()
}

pub fn gamma_bi(x: &BiEpWord<u8>, tilde: bool) -> BiEpWord<Digit> {
    x.substitute(|c| gamma_letter(c, tilde))
}

/// Left inverse of [`gamma`].
pub fn gamma_decode(w: &[Digit], tilde: bool) -> Result<Vec<u8>> {
    let lead = if tilde { -1 } else { 1 };
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        match w[i] {
            0 => {
                out.push(0);
                i += 1;
            }
            d if d == lead && w.get(i + 1) == Some(&-lead) => {
                out.push(1);
                i += 2;
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "position {i} is outside the image of the morphism"
                )))
            }
        }
    }
    Ok(out)
}

/// Puts `u_j` at position `2j` and zeros at odd positions.
pub fn spread(u: &BiEpWord<Digit>) -> BiEpWord<Digit> {
    u.substitute(|d| vec![d, 0])
}

#[derive(Debug, Clone, Serialize)]
pub struct PqRow {
    pub n: usize,
    pub p: String,
    pub q: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    /// Christoffel slopes `(p, q)` whose periodic words realize this value.
    pub witnesses: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadSpectrumTable {
    pub b: u64,
    pub sign: UnitSign,
    pub rows: Vec<PqRow>,
    pub limit: QuadraticSurd,
    pub limit_approx: f64,
    pub checks: Vec<crate::spectrum::integer::Check>,
}

impl QuadSpectrumTable {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check_family_range(unit: PisotQuadraticUnit) -> Result<()> {
    let ok = match unit.sign {
        UnitSign::Plus => unit.b >= 4,
        UnitSign::Minus => unit.b >= 3,
    };
    if !ok {
        return Err(Error::OutOfRange(format!(
            "{unit} has alpha <= 3; the table needs b >= 4 (plus) or b >= 3 (minus)"
        )));
    }
    Ok(())
}

/// Integer pairs `(p_n, q_n)` for `n = 0..=n_max` from the two-step
/// recurrences with mediants at odd indices.
pub fn pq_pairs(
    unit: PisotQuadraticUnit,
    n_max: usize,
) -> Vec<(num_bigint::BigInt, num_bigint::BigInt)> {
    use num_bigint::BigInt;
    let b = BigInt::from(unit.b);
    let (p2, q2, f) = match unit.sign {
        UnitSign::Plus => (BigInt::one(), &b + 1, b.clone()),
        UnitSign::Minus => (b.clone(), &b * &b + 3, &b * &b + 2),
    };
    let half = n_max / 2 + 2;
    let mut pe = vec![BigInt::zero(), p2];
    let mut qe = vec![BigInt::one(), q2];
    while pe.len() < half + 1 {
        let k = pe.len();
        pe.push(&f * &pe[k - 1] - &pe[k - 2]);
        qe.push(&f * &qe[k - 1] - &qe[k - 2]);
    }
    (0..=n_max)
        .map(|n| {
            if n % 2 == 0 {
                (pe[n / 2].clone(), qe[n / 2].clone())
            } else {
                let j = n.div_ceil(2);
                (&pe[j - 1] + &pe[j], &qe[j - 1] + &qe[j])
            }
        })
        .collect()
}

/// `z_n` from `1/z_n - 1 = (alpha^{n+2} - 1)/(alpha (alpha^n - 1))`, `n >= 1`.
pub fn z_value(alpha: &QuadraticSurd, n: i64) -> QuadraticSurd {
    let one = QuadraticSurd::one();
    let r = &(&alpha.pow(n + 2) - &one) / &(alpha * &(&alpha.pow(n) - &one));
    (&r + &one).pow(-1)
}

/// Christoffel slopes `p/q` with `1 <= p < q`, `p + q = n + 1`, coprime.
pub fn witness_slopes(n: usize) -> Vec<(u64, u64)> {
    if n < 2 {
        return Vec::new();
    }
    let s = n as u64 + 1;
    (1..s)
        .map(|p| (p, s - p))
        .filter(|&(p, q)| p < q && p.gcd(&q) == 1)
        .collect()
}

pub fn pq_spectrum(unit: PisotQuadraticUnit, n_max: usize) -> Result<QuadSpectrumTable> {
    use crate::spectrum::integer::Check;
    check_family_range(unit)?;
    let pairs = pq_pairs(unit, n_max);
    let lim = limit(unit);
    let values: Vec<BigRational> = pairs
        .iter()
        .map(|(p, q)| BigRational::new(p.clone(), q.clone()))
        .collect();
    let mut checks = Vec::new();
    let mut check = |name: String, passed: bool| checks.push(Check { name, passed });

    check(
        "strictly increasing".into(),
        values.windows(2).all(|w| w[0] < w[1]),
    );
    check(
        "below the limit".into(),
        values
            .iter()
            .all(|v| QuadraticSurd::from_rational(v.clone()) < lim),
    );

    // Negative continued fraction of 1/(1+alpha) (plus) or 1/(1+alpha^2) (minus).
    let alpha = unit.alpha();
    let one = QuadraticSurd::one();
    let base = match unit.sign {
        UnitSign::Plus => (&one + &alpha).pow(-1),
        UnitSign::Minus => (&one + &alpha.pow(2)).pow(-1),
    };
    let cf = negative_cf(&base, n_max / 2 + 1)?;
    let conv = &cf.convergents;
    let b = num_bigint::BigInt::from(unit.b);
    let mut cf_ok = true;
    for n in 1..=n_max / 2 {
        let Some((pn, qn)) = conv.get(n - 1) else {
            cf_ok = false;
            break;
        };
        let (p2n, q2n) = &pairs[2 * n];
        cf_ok &= match unit.sign {
            UnitSign::Plus => {
                BigRational::new(p2n.clone(), q2n.clone())
                    == BigRational::new(pn.clone(), qn.clone())
            }
            UnitSign::Minus => *p2n == &b * pn && q2n == qn,
        };
    }
    check(
        "even terms match negative continued fraction convergents".into(),
        cf_ok,
    );

    // Closed form z_n (for the minus family, b times z_n of alpha^2).
    let (za, scale) = match unit.sign {
        UnitSign::Plus => (alpha.clone(), BigRational::one()),
        UnitSign::Minus => (alpha.pow(2), BigRational::from_integer(b.clone())),
    };
    let mut z_ok = values[0].is_zero();
    for (n, v) in values.iter().enumerate().skip(1) {
        let z = z_value(&za, n as i64).scale(&scale);
        z_ok &= z.to_rational().as_ref() == Some(v);
    }
    check(
        "closed form z_n is rational and equals p_n/q_n".into(),
        z_ok,
    );

    let rows = pairs
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(n, ((p, q), v))| PqRow {
            n,
            p: p.to_string(),
            q: q.to_string(),
            value: v.clone(),
            witnesses: witness_slopes(n),
        })
        .collect();
    Ok(QuadSpectrumTable {
        b: unit.b,
        sign: unit.sign,
        rows,
        limit_approx: lim.to_f64(),
        limit: lim,
        checks,
    })
}

/// A number with a prescribed limsup value and its digit word.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub n: usize,
    /// Christoffel slope behind the word, when `n >= 2`.
    pub slope: Option<(u64, u64)>,
    pub xi: QuadraticSurd,
    pub word: BiEpWord<Digit>,
    /// Exact `limsup_k |g(sigma^k word)|`.
    pub limsup: QuadraticSurd,
    /// Phases within the tail period where the maximum is attained.
    pub attained: Vec<usize>,
}

/// Plus-family words `0^inf 1.-1 (gamma(v) 0 1 -1)^inf` for all central
/// words `v` with `|gamma(v)| + 2 = n`; `0^Z` for `n = 0` and
/// `0^inf (1 -1)^inf` for `n = 1`.
/// A witness word with the Christoffel slope it came from, if any.
type SlopedWord = (Option<(u64, u64)>, BiEpWord<Digit>);

fn plus_words(n: usize) -> Result<Vec<SlopedWord>> {
    match n {
        0 => Ok(vec![(
            None,
            BiEpWord::new(vec![0], Vec::new(), vec![0], 0)?,
        )]),
        1 => Ok(vec![(
            None,
            BiEpWord::new(vec![0], Vec::new(), vec![1, -1], 0)?,
        )]),
        _ => witness_slopes(n)
            .into_iter()
            .map(|(p, q)| {
                let v = central_word(p, q)?;
                let mut tail = gamma(&v, false);
                tail.extend_from_slice(&[0, 1, -1]);
                Ok((Some((p, q)), BiEpWord::new(vec![0], vec![1, -1], tail, 0)?))
            })
            .collect(),
    }
}

/// All witnesses for the `n`-th point. In the minus family the words are
/// spread versions of the plus-family words for `alpha^2`.
pub fn xn_witnesses(unit: PisotQuadraticUnit, n: usize) -> Result<Vec<Witness>> {
    check_family_range(unit)?;
    let eval = QuadEval::new(unit);
    plus_words(n)?
        .into_iter()
        .map(|(slope, w)| {
            let word = match unit.sign {
                UnitSign::Plus => w,
                UnitSign::Minus => spread(&w),
            };
            let xi = eval.g(&word, 0);
            let (limsup, attained) = eval.tail_limsup(&word);
            Ok(Witness {
                n,
                slope,
                xi,
                word,
                limsup,
                attained,
            })
        })
        .collect()
}

/// `psi_0 = y_0`, `psi_n = y_n + c^n y_-n` with `c = alpha * alpha2`.
pub fn psi(y: &BiEpWord<Digit>, sign: UnitSign, n: usize) -> Digit {
    let n = n as i64;
    if n == 0 {
        return y.at(0);
    }
    let c = if sign == UnitSign::Minus && n % 2 == 1 {
        -1
    } else {
        1
    };
    y.at(n) + c * y.at(-n)
}

fn psi_horizon(words: &[&BiEpWord<Digit>]) -> usize {
    let mut reach = 0i64;
    let mut per = 2usize;
    for w in words {
        let (lo, hi) = w.core_range();
        reach = reach.max(-lo).max(hi);
        per = per.lcm(&w.left.len()).lcm(&w.right.len());
    }
    reach as usize + 2 * per + 2
}

/// `y >> y'`: equal `psi` before some `l`, larger at `l`, and `|psi_n(y) -
/// psi_n(y')| <= 2` for all `n >= l`. Exact for eventually periodic words.
pub fn dominates(y: &BiEpWord<Digit>, y2: &BiEpWord<Digit>, sign: UnitSign) -> Result<bool> {
    for w in [y, y2] {
        let (lo, hi) = w.core_range();
        let digits = w.window(lo - w.left.len() as i64, hi + w.right.len() as i64);
        if digits.iter().any(|d| d.abs() > 1) {
            return Err(Error::InvalidParameter(
                "digits must lie in {-1, 0, 1}".into(),
            ));
        }
    }
    let h = psi_horizon(&[y, y2]);
    let Some(l) = (0..=h).find(|&n| psi(y, sign, n) != psi(y2, sign, n)) else {
        return Ok(false);
    };
    Ok(psi(y, sign, l) > psi(y2, sign, l)
        && (l..=h).all(|n| (psi(y, sign, n) - psi(y2, sign, n)).abs() <= 2))
}

/// Exact `limsup ||xi alpha^n||` for `xi` in the field of `alpha`.
///
/// `xi alpha^n` differs from its trace by a term tending to 0, and the trace
/// modulo 1 is purely periodic since `alpha` is a unit. Independent of the
/// digit machinery above.
pub fn trace_limsup(unit: PisotQuadraticUnit, xi: &QuadraticSurd) -> Result<(BigRational, usize)> {
    check_field(unit, xi)?;
    let alpha = unit.alpha();
    let b = BigRational::from_integer(unit.b.into());
    let c = BigRational::from_integer(unit.sign.constant().into());
    let frac = |q: &BigRational| q - q.floor();
    let start = (frac(&xi.trace()), frac(&(xi * &alpha).trace()));
    let mut seen: HashMap<(BigRational, BigRational), ()> = HashMap::new();
    let half = BigRational::new(1.into(), 2.into());
    let dist = |q: &BigRational| {
        if *q > half {
            BigRational::one() - q
        } else {
            q.clone()
        }
    };
    let mut state = start;
    let mut best = BigRational::zero();
    while seen.insert(state.clone(), ()).is_none() {
        best = best.max(dist(&state.0));
        let next = frac(&(&b * &state.1 - &c * &state.0));
        state = (state.1, next);
        if seen.len() > 1_000_000 {
            return Err(Error::Insufficient(
                "trace orbit period exceeds 10^6".into(),
            ));
        }
    }
    Ok((best, seen.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> QuadraticSurd {
        QuadraticSurd::from_ratio(p, r)
    }

    fn word(left: &[Digit], mid: &[Digit], right: &[Digit], origin: i64) -> BiEpWord<Digit> {
        BiEpWord::new(left.to_vec(), mid.to_vec(), right.to_vec(), origin).unwrap()
    }

    #[test]
    fn g_basic_values() {
        let e = QuadEval::new(PisotQuadraticUnit::plus(4).unwrap());
        let a = e.alpha.clone();
        let w = word(&[0], &[1, -1], &[0], 0);
        assert_eq!(e.g(&w, 0), (&a + &QuadraticSurd::one()).pow(-1));
        let alt = BiEpWord::periodic(vec![1, -1]).unwrap();
        assert_eq!(e.g(&alt, 0), q(1, 6));
        assert_eq!(e.g(&word(&[0], &[], &[0], 0), 3), QuadraticSurd::zero());

        let m = QuadEval::new(PisotQuadraticUnit::minus(3).unwrap());
        let w = word(&[0], &[1, 0, -1], &[0], 0);
        assert_eq!(m.g(&w, 0), m.threshold());
    }

    #[test]
    fn stepping_matches_direct() {
        let e = QuadEval::new(PisotQuadraticUnit::minus(4).unwrap());
        let w = word(&[1, 0], &[1, -1, 0, 0, 1], &[0, -1, 1], 2);
        let vals = e.g_range(&w, -6, 9);
        for (i, k) in (-6..9).enumerate() {
            assert_eq!(vals[i], e.g(&w, k), "shift {k}");
        }
        let balls = e.g_range_balls(&w, -6, 9, 96);
        for (b, v) in balls.iter().zip(&vals) {
            assert!(b.contains_surd(v) && b.rad_f64() < 1e-25);
        }
    }

    #[test]
    fn s_word_examples() {
        let u = PisotQuadraticUnit::plus(4).unwrap();
        // 1/(2 sqrt 3) = 1/(alpha - alpha2): a single nonzero digit.
        let xi = u.alpha_gap().pow(-1);
        let w = s_word(u, &xi).unwrap();
        assert_eq!(w.window(-10, 10), {
            let mut v = vec![0; 20];
            v[10] = 1;
            v
        });
        let zero = s_word(u, &QuadraticSurd::zero()).unwrap();
        assert_eq!(zero.window(-3, 3), vec![0; 6]);
    }

    #[test]
    fn s_word_reconstructs_eps() {
        for unit in [
            PisotQuadraticUnit::plus(5).unwrap(),
            PisotQuadraticUnit::minus(3).unwrap(),
        ] {
            let e = QuadEval::new(unit);
            let xi = &(&unit.alpha() * &q(3, 7)) + &q(-2, 5);
            let w = s_word(unit, &xi).unwrap();
            let direct = s_values(unit, &xi, -4, 25).unwrap();
            for (i, n) in (-4..25).enumerate() {
                assert_eq!(w.at(n), direct[i].0);
                assert_eq!(e.g(&w, n), direct[i].1, "n = {n}");
            }
        }
    }

    #[test]
    fn gamma_round_trip() {
        assert_eq!(gamma(&[0, 1], false), vec![0, 1, -1]);
        assert_eq!(gamma(&[1, 0], true), vec![-1, 1, 0]);
        assert!(gamma_decode(&[1, 0], false).is_err());
        for n in 0..=8usize {
            for bits in 0..(1u32 << n) {
                let x: Vec<u8> = (0..n).map(|i| (bits >> i & 1) as u8).collect();
                for t in [false, true] {
                    assert_eq!(gamma_decode(&gamma(&x, t), t).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn tables() {
        let t = pq_spectrum(PisotQuadraticUnit::plus(4).unwrap(), 4).unwrap();
        let v: Vec<String> = t.rows.iter().map(|r| r.value.to_string()).collect();
        assert_eq!(v, ["0", "1/6", "1/5", "5/24", "4/19"]);
        assert!(t.all_passed(), "{:?}", t.checks);
        assert_eq!(t.rows[2].q, "5");

        let t = pq_spectrum(PisotQuadraticUnit::minus(3).unwrap(), 4).unwrap();
        let v: Vec<String> = t.rows.iter().map(|r| r.value.to_string()).collect();
        assert_eq!(v, ["0", "3/13", "1/4", "36/143", "33/131"]);
        assert!(t.all_passed(), "{:?}", t.checks);
        assert!(pq_spectrum(PisotQuadraticUnit::plus(3).unwrap(), 4).is_err());
    }

    #[test]
    fn small_witnesses() {
        let u = PisotQuadraticUnit::plus(4).unwrap();
        let w1 = &xn_witnesses(u, 1).unwrap()[0];
        assert_eq!(w1.limsup, q(1, 6));
        let w2 = &xn_witnesses(u, 2).unwrap()[0];
        assert_eq!(w2.limsup, q(1, 5));
        assert_eq!(w2.attained.len(), 2);
        let x1 = &(&u.alpha() - &QuadraticSurd::one()) * &q(1, 12);
        assert_eq!(
            trace_limsup(u, &x1).unwrap().0,
            BigRational::new(1.into(), 6.into())
        );

        let m = PisotQuadraticUnit::minus(3).unwrap();
        let x1 = &m.alpha() * &q(1, 13);
        assert_eq!(
            trace_limsup(m, &x1).unwrap().0,
            BigRational::new(3.into(), 13.into())
        );
        let w = &xn_witnesses(m, 1).unwrap()[0];
        assert_eq!(w.limsup, q(3, 13));
    }

    #[test]
    fn dominance_examples() {
        let e = QuadEval::new(PisotQuadraticUnit::plus(4).unwrap());
        let base = word(&[0], &[1, -1], &[0], 0);
        let y = word(&[0], &[1, 0], &[0], 0);
        assert!(dominates(&y, &base, UnitSign::Plus).unwrap());
        assert!(e.g(&y, 0) > e.g(&base, 0));
        assert!(!dominates(&base, &base, UnitSign::Plus).unwrap());
        assert!(dominates(&word(&[2], &[], &[0], 0), &base, UnitSign::Plus).is_err());
    }
}
