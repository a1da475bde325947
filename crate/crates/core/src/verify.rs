//! The acceptance suite: eleven criteria, each reported as pass/fail with
//! the individual failures that caused a red result.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::pisot::near_integer;
use crate::algebra::{
    complete_homogeneous, BigRational, GeneralPisot, PisotQuadraticUnit, QuadraticSurd, UnitSign,
};
use crate::beta;
use crate::dimension;
use crate::interval;
use crate::limsup::{eps_reconstruction, TauTable};
use crate::spectrum::{integer, quadratic};
use crate::words::{self, EpWord};

/// Seed for every randomized criterion.
pub const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

/// Suite names, in criterion order.
pub const SUITES: [&str; 11] = [
    "integer-spectrum",
    "base-two",
    "orbits",
    "quadratic-tables",
    "witnesses",
    "words",
    "christoffel",
    "beta",
    "interval",
    "plastic",
    "dimension",
];

type Outcome = (Vec<String>, String);

pub fn suite_id(name: &str) -> Option<u8> {
    SUITES.iter().position(|s| *s == name).map(|i| i as u8 + 1)
}

/// Runs one criterion, `1..=11`.
pub fn run(id: u8) -> Option<CriterionResult> {
    let f: fn() -> Outcome = match id {
        1 => integer_identity,
        2 => base_two,
        3 => orbits,
        4 => quadratic_tables,
        5 => witnesses,
        6 => words_brute_force,
        7 => christoffel_suite,
        8 => beta_symmetric,
        9 => interval_construction,
        10 => plastic,
        11 => dimension_bounds,
        _ => return None,
    };
    let start = Instant::now();
    let (failures, detail) = f();
    Some(CriterionResult {
        id,
        name: SUITES[id as usize - 1],
        passed: failures.is_empty(),
        detail,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=11).filter_map(run).collect()
}

impl CriterionResult {
    /// `PASS  3 orbits (12 ms): ...`
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.detail
        )
    }
}

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn units(sign: UnitSign, lo: u64, hi: u64) -> impl Iterator<Item = PisotQuadraticUnit> {
    (lo..=hi).map(move |b| PisotQuadraticUnit::new(b, sign).expect("valid unit"))
}

fn integer_identity() -> Outcome {
    let start = Instant::now();
    let mut fails = Vec::new();
    let mut count = 0;
    for a in 2..=10u64 {
        let x = r(1, a as i64);
        for k in 0..=12u32 {
            let word = EpWord::periodic(integer::a_word(k)).expect("nonempty");
            match integer::f_eval(&word, &x) {
                Ok(f) if f == integer::e_k(&x, k) => count += 1,
                Ok(f) => fails.push(format!("a={a} k={k}: f = {f}")),
                Err(e) => fails.push(format!("a={a} k={k}: {e}")),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        fails.push(format!("took {secs:.2} s"));
    }
    (
        fails,
        format!("{count}/117 exact identities in {secs:.3} s"),
    )
}

fn base_two() -> Outcome {
    let mut fails = Vec::new();
    let expect = [r(1, 3), r(2, 5), r(7, 17)];
    for (k, e) in expect.iter().enumerate() {
        match integer::point(2, k as u32) {
            Ok(p) if &p == e => {}
            Ok(p) => fails.push(format!("point {k} is {p}, expected {e}")),
            Err(e) => fails.push(e.to_string()),
        }
    }
    let enc = match integer::limit_enclosure(2, 20) {
        Ok(e) => e,
        Err(e) => return (vec![e.to_string()], String::new()),
    };
    let target = r(4_124_540, 10_000_000);
    let tol = r(1, 1_000_000);
    let rad = enc.ball.rad_rational();
    let off = (enc.ball.mid_rational() - &target).abs() + &rad;
    if rad > tol {
        fails.push(format!("radius {} above 1e-6", enc.ball.rad_f64()));
    }
    if off > tol {
        fails.push(format!(
            "0.4124540 not within the enclosure at 1e-6 (midpoint {})",
            enc.ball.to_f64()
        ));
    }
    (
        fails,
        format!(
            "1/3, 2/5, 7/17; limit {:.9} +- {:.1e}",
            enc.ball.to_f64(),
            enc.ball.rad_f64()
        ),
    )
}

fn dist(q: &BigRational) -> BigRational {
    let f = q - q.floor();
    let g = BigRational::one() - &f;
    f.min(g)
}

fn orbits() -> Outcome {
    let mut fails = Vec::new();
    let third = r(1, 3);
    let mut x = third.clone();
    for n in 0..=1000 {
        if dist(&x) != third {
            fails.push(format!("||2^{n}/3|| != 1/3"));
            break;
        }
        x *= BigRational::from_integer(2.into());
    }
    let (ls, period) = integer::rational_orbit_limsup(&r(2, 5), 2);
    if ls != r(2, 5) {
        fails.push(format!("limsup for 2/5 is {ls}"));
    }
    // the direct orbit over two periods agrees
    let direct = (0..2 * period as u32)
        .map(|n| dist(&(r(2, 5) * BigRational::from_integer(BigInt::from(2).pow(n)))))
        .max()
        .expect("nonempty");
    if direct != ls {
        fails.push(format!("direct orbit maximum {direct} differs"));
    }
    for (k, v) in [(0, third), (1, r(2, 5))] {
        if integer::point(2, k).ok() != Some(v.clone()) {
            fails.push(format!("{v} is not spectrum point {k}"));
        }
    }
    (
        fails,
        format!("1/3 constant for n <= 1000; 2/5 has cycle length {period}"),
    )
}

fn quadratic_tables() -> Outcome {
    let mut fails = Vec::new();
    let plus = PisotQuadraticUnit::plus(4).expect("unit");
    let minus = PisotQuadraticUnit::minus(3).expect("unit");
    let expect = |t: &quadratic::QuadSpectrumTable, want: &[&str], fails: &mut Vec<String>| {
        let got: Vec<String> = t
            .rows
            .iter()
            .take(want.len())
            .map(|r| r.value.to_string())
            .collect();
        if got != want {
            fails.push(format!("{}{}: table {got:?}", t.sign, t.b));
        }
        for c in t.checks.iter().filter(|c| !c.passed) {
            fails.push(format!("{}{}: {}", t.sign, t.b, c.name));
        }
    };
    let mut gap = f64::NAN;
    match quadratic::pq_spectrum(plus, 40) {
        Ok(t) => {
            expect(&t, &["0", "1/6", "1/5", "5/24", "4/19"], &mut fails);
            // z_n = p_n/q_n for n <= 40 is one of the table checks
            let a = plus.alpha();
            let lim = (&QuadraticSurd::one() + &a).pow(-1);
            let d = &QuadraticSurd::from_rational(t.rows[40].value.clone()) - &lim;
            gap = d.to_f64().abs();
            if gap >= 1e-12 {
                fails.push(format!("|p40/q40 - 1/(1+alpha)| = {gap:e}"));
            }
            if t.limit != lim {
                fails.push("plus limit is not 1/(1+alpha)".into());
            }
        }
        Err(e) => fails.push(e.to_string()),
    }
    match quadratic::pq_spectrum(minus, 40) {
        Ok(t) => {
            expect(&t, &["0", "3/13", "1/4", "36/143", "33/131"], &mut fails);
            let a = minus.alpha();
            let lim = &QuadraticSurd::from_int(3) / &(&QuadraticSurd::one() + &a.pow(2));
            if t.limit != lim {
                fails.push("minus limit is not b/(1+alpha^2)".into());
            }
        }
        Err(e) => fails.push(e.to_string()),
    }
    (
        fails,
        format!("plus 4 and minus 3 tables to n = 40; |p40/q40 - limit| = {gap:.2e}"),
    )
}

fn witnesses() -> Outcome {
    let mut fails = Vec::new();
    let mut count = 0;
    for (sign, lo) in [(UnitSign::Plus, 4), (UnitSign::Minus, 3)] {
        for unit in units(sign, lo, 8) {
            let pairs = quadratic::pq_pairs(unit, 8);
            for (n, (p, q)) in pairs.iter().enumerate() {
                let target = BigRational::new(p.clone(), q.clone());
                let ws = match quadratic::xn_witnesses(unit, n) {
                    Ok(w) => w,
                    Err(e) => {
                        fails.push(format!("{unit} n={n}: {e}"));
                        continue;
                    }
                };
                for w in ws {
                    count += 1;
                    if w.limsup.to_rational().as_ref() != Some(&target) {
                        fails.push(format!(
                            "{unit} n={n} {:?}: word limsup {}",
                            w.slope, w.limsup
                        ));
                    }
                    // second route: the trace orbit of xi, no digits involved
                    match quadratic::trace_limsup(unit, &w.xi) {
                        Ok((v, _)) if v == target => {}
                        Ok((v, _)) => {
                            fails.push(format!("{unit} n={n} {:?}: trace limsup {v}", w.slope))
                        }
                        Err(e) => fails.push(format!("{unit} n={n}: {e}")),
                    }
                }
            }
        }
    }
    let plus = PisotQuadraticUnit::plus(4).expect("unit");
    let x = (&plus.alpha() - &QuadraticSurd::one()).scale(&r(1, 12));
    if quadratic::trace_limsup(plus, &x).map(|v| v.0).ok() != Some(r(1, 6)) {
        fails.push("plus 4 anchor (alpha-1)/12 does not give 1/6".into());
    }
    let minus = PisotQuadraticUnit::minus(3).expect("unit");
    let x = minus.alpha().scale(&r(1, 13));
    if quadratic::trace_limsup(minus, &x).map(|v| v.0).ok() != Some(r(3, 13)) {
        fails.push("minus 3 anchor alpha/13 does not give 3/13".into());
    }
    (
        fails,
        format!("{count} witnesses checked by word and by trace orbit; both anchors"),
    )
}

fn words_brute_force() -> Outcome {
    let start = Instant::now();
    let mut fails = Vec::new();
    let contains = |w: &[u8], f: &[u8]| f.len() <= w.len() && w.windows(f.len()).any(|x| x == f);
    let mut unbalanced = 0;
    for bits in 0u32..1 << 14 {
        let w: Vec<u8> = (0..14).map(|i| ((bits >> i) & 1) as u8).collect();
        let rep = words::is_balanced(&w);
        if rep.balanced {
            continue;
        }
        unbalanced += 1;
        let ok = rep.witness.as_ref().is_some_and(|p| {
            let palin = p.iter().eq(p.iter().rev());
            let a: Vec<u8> = [&[0][..], p, &[0]].concat();
            let b: Vec<u8> = [&[1][..], p, &[1]].concat();
            palin && contains(&w, &a) && contains(&w, &b)
        });
        if !ok {
            fails.push(format!(
                "{}: no valid palindrome witness",
                words::binary_string(&w)
            ));
        }
    }
    let mut members = 0;
    for len in 0..=8u32 {
        for bits in 0u32..1 << len {
            let v: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
            let rv: Vec<u8> = v.iter().rev().copied().collect();
            let f1 = [&[0][..], &v, &[0, 1], &rv, &[1]].concat();
            let f2 = [&[1][..], &rv, &[1, 0], &v, &[0]].concat();
            for f in [f1, f2] {
                members += 1;
                if words::is_balanced(&f).balanced {
                    fails.push(format!("F-member {} is balanced", words::binary_string(&f)));
                }
            }
        }
    }
    let w = words::parse_binary("1010010001").expect("binary");
    if words::is_balanced(&w).balanced || !words::forbidden_scan(&w).is_empty() {
        fails.push("1010010001 is not unbalanced and F-free".into());
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        fails.push(format!("took {secs:.2} s"));
    }
    (
        fails,
        format!("{unbalanced} unbalanced words of length 14, {members} F-members; 1010010001 unbalanced, F-free ({secs:.2} s)"),
    )
}

fn christoffel_suite() -> Outcome {
    use num_integer::Integer;
    let mut fails = Vec::new();
    let mut pairs = 0;
    for q in 2..=50u64 {
        for p in (1..q).filter(|p| p.gcd(&q) == 1) {
            pairs += 1;
            let (lo, up) = match (
                words::christoffel(p, q, false),
                words::christoffel(p, q, true),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                _ => {
                    fails.push(format!("{p}/{q}: not constructed"));
                    continue;
                }
            };
            let n = lo.len();
            let v = &lo[1..n - 1];
            let ok = lo[0] == 0
                && lo[n - 1] == 1
                && up[0] == 1
                && up[n - 1] == 0
                && &up[1..n - 1] == v
                && v.iter().eq(v.iter().rev());
            if !ok {
                fails.push(format!(
                    "{p}/{q}: not of the form 0v1 / 1v0 with v a palindrome"
                ));
            }
            if q <= 30 {
                let io = words::iota_periodic(&lo);
                if io.infinite || io.value as u64 != q - 2 || io.attained_at.len() != 2 {
                    fails.push(format!(
                        "{p}/{q}: iota {} attained at {} shifts",
                        io.value,
                        io.attained_at.len()
                    ));
                }
            }
        }
    }
    let tm = words::iota_window(&words::thue_morse(64));
    if tm.value != 6 {
        fails.push(format!("Thue-Morse iota on 64 letters is {}", tm.value));
    }
    (
        fails,
        format!("{pairs} slopes; iota = q - 2 twice for q <= 30; Thue-Morse 6"),
    )
}

fn beta_symmetric() -> Outcome {
    let mut fails = Vec::new();
    let half = QuadraticSurd::from_ratio(1, 2);
    let mut all_units = Vec::new();
    for b in 1..=12u64 {
        all_units.push(PisotQuadraticUnit::minus(b).expect("unit"));
        if b >= 3 {
            all_units.push(PisotQuadraticUnit::plus(b).expect("unit"));
        }
    }
    for &u in &all_units {
        let (hi, lo) = beta::boundary_expansions(u);
        for (x, w, tag) in [(&half, &hi, "1/2"), (&-half.clone(), &lo, "-1/2")] {
            match beta::digits_prefix(u, x, 50) {
                Ok(d) if d == w.take(50) => {}
                Ok(_) => fails.push(format!("{u}: d({tag}) closed form differs from the map")),
                Err(e) => fails.push(format!("{u}: {e}")),
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = 0;
    while done < 100 {
        let u = all_units[rng.gen_range(0..all_units.len())];
        let den = rng.gen_range(1..=9i64);
        let x = QuadraticSurd::new(
            r(rng.gen_range(-4 * den..=4 * den), 8 * den),
            r(rng.gen_range(-2 * den..=2 * den), 8 * den),
            u.radicand(),
        )
        .expect("valid radicand");
        if !(-half.clone() <= x && x < half) {
            continue;
        }
        done += 1;
        let exp = match beta::encode(u, &x) {
            Ok(e) => e,
            Err(e) => {
                fails.push(format!("{u} x={x}: {e}"));
                continue;
            }
        };
        match beta::is_admissible(u, &exp.digits) {
            Ok(true) => {}
            Ok(false) => fails.push(format!("{u} x={x}: sandwich fails")),
            Err(e) => fails.push(format!("{u} x={x}: {e}")),
        }
        if beta::reconstruct(u, &exp.digits) != x {
            fails.push(format!("{u} x={x}: reconstruction differs"));
        }
    }
    (
        fails,
        format!(
            "closed forms for {} units; 100 random expansions admissible and exact",
            all_units.len()
        ),
    )
}

fn interval_construction() -> Outcome {
    let mut fails = Vec::new();
    let mut etas = 0;
    let cases = units(UnitSign::Plus, 4, 12).chain(units(UnitSign::Minus, 3, 12));
    for unit in cases {
        let case = match interval::kappa_and_keys(unit) {
            Ok(c) => c,
            Err(e) => {
                fails.push(format!("{unit}: {e}"));
                continue;
            }
        };
        if !case.key_holds {
            fails.push(format!(
                "{unit}: {:?} fails ({:.4} > {:.4})",
                case.key,
                case.key_lhs.to_f64(),
                case.key_rhs.to_f64()
            ));
        }
        if !case.kappa_below_half {
            fails.push(format!(
                "{unit}: kappa {:.4} not below 1/2",
                case.kappa_approx
            ));
        }
        for eta in interval::eta_grid(&case, 10) {
            etas += 1;
            match interval::check_eta(&case, &eta, 200) {
                Ok(c) if c.g_equals_eta && c.shifts_bounded => {}
                Ok(c) => fails.push(format!(
                    "{unit} eta={:.6}: g = eta {}, max shift {:.6}",
                    c.eta_approx, c.g_equals_eta, c.max_shift_value
                )),
                Err(e) => fails.push(format!("{unit} eta={:.6}: {e}", eta.to_f64())),
            }
        }
    }
    (
        fails,
        format!("19 units, {etas} grid points, shifts |k| <= 200"),
    )
}

fn plastic() -> Outcome {
    let mut fails = Vec::new();
    let gp = GeneralPisot::plastic(256);
    let roots = gp.all_roots();
    for m in [-1, -2] {
        match complete_homogeneous(m, &roots) {
            Ok(h) if h.abs_hi().to_f64().unwrap_or(f64::INFINITY) < 1e-9 => {}
            Ok(h) => fails.push(format!("h_{m} = {:?}", h.to_f64())),
            Err(e) => fails.push(format!("h_{m}: {e}")),
        }
    }
    for q in -10..=0i64 {
        let a = gp
            .r_coefficient(q)
            .ok()
            .and_then(|z| near_integer(&z, 1e-9));
        let b = complete_homogeneous(-q - 1, &roots)
            .ok()
            .and_then(|z| near_integer(&z, 1e-9));
        if a.is_none() || a != b {
            fails.push(format!("R_{q}: {a:?} vs h_{}: {b:?}", -q - 1));
        }
    }
    let table = match TauTable::new(&gp, -40, 200) {
        Ok(t) => t,
        Err(e) => return (vec![e.to_string()], String::new()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0f64;
    for _ in 0..20 {
        let den = rng.gen_range(2..=50i64);
        let xi = r(rng.gen_range(-3 * den..=3 * den), den);
        let n = rng.gen_range(0..=20i64);
        match eps_reconstruction(&gp, &table, &xi, n) {
            Ok(rec) => {
                worst = worst.max(rec.reconstructed.rad_f64());
                if !rec.overlap {
                    fails.push(format!("xi={xi} n={n}: {rec:?}"));
                }
            }
            Err(e) => fails.push(format!("xi={xi} n={n}: {e}")),
        }
    }
    (fails, format!("h_-1, h_-2 vanish; R_q integral for -10 <= q <= 0; 20 reconstructions (max radius {worst:.1e})"))
}

fn dimension_bounds() -> Outcome {
    let mut fails = Vec::new();
    for a in 2..=10u64 {
        for k in 2..=9 {
            let t = r(k, 20);
            match dimension::integer_bound(a, &t, 1) {
                Ok(b) => {
                    let (_, at) = dimension::bound_at(a, &t, b.threshold_ell);
                    if !b.below_one_at_threshold || at.hi >= 1.0 {
                        fails.push(format!(
                            "a={a} t={t}: bound {:.6} at l={}",
                            at.value, b.threshold_ell
                        ));
                    }
                }
                Err(e) => fails.push(format!("a={a} t={t}: {e}")),
            }
        }
    }
    let mut quad = 0;
    for (sign, lo) in [(UnitSign::Plus, 3), (UnitSign::Minus, 1)] {
        for u in units(sign, lo, 12) {
            quad += 1;
            let qt = |k: i64| dimension::quadratic_bound(u, &r(k, 40));
            let ms: Vec<BigInt> = (0..=20).filter_map(|k| qt(k).ok().map(|b| b.m)).collect();
            if ms.len() != 21 || ms.windows(2).any(|w| w[0] > w[1]) {
                fails.push(format!("{u}: m(t) not nondecreasing"));
            }
            match qt(0) {
                Ok(b) if b.t0_below_quarter && b.m.is_zero() => {}
                Ok(_) => fails.push(format!("{u}: t0 not below 1/4")),
                Err(e) => fails.push(format!("{u}: {e}")),
            }
        }
    }
    (
        fails,
        format!("72 integer cases below 1 at the threshold; t0 < 1/4 for {quad} units"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for (i, s) in SUITES.iter().enumerate() {
            assert_eq!(suite_id(s), Some(i as u8 + 1));
        }
        assert!(run(12).is_none());
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [1, 2, 3, 11] {
            let c = run(id).unwrap();
            assert!(c.passed, "{}", c.line());
        }
    }
}
