use geospec_core::algebra::{BigRational, PisotQuadraticUnit, QuadraticSurd, UnitSign};
use geospec_core::beta;
use geospec_core::dimension;
use geospec_core::limsup::{norm_sequence, Alpha, Mode, RealInput};
use geospec_core::spectrum::quadratic::{self, dominates, QuadEval};
use geospec_core::words::{self, BiEpWord};
use proptest::prelude::*;

fn unit_strategy() -> impl Strategy<Value = PisotQuadraticUnit> {
    prop_oneof![
        (4u64..=12).prop_map(|b| PisotQuadraticUnit::plus(b).unwrap()),
        (3u64..=12).prop_map(|b| PisotQuadraticUnit::minus(b).unwrap()),
    ]
}

fn digits(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1i64..=1, len)
}

fn binary(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..=1, 0..=max)
}

/// Naive balance: every pair of equal-length factors differs by at most one 1.
fn balanced_oracle(w: &[u8]) -> bool {
    (1..=w.len()).all(|n| {
        let weights: Vec<usize> = w
            .windows(n)
            .map(|f| f.iter().map(|&x| x as usize).sum())
            .collect();
        weights.iter().max().unwrap() - weights.iter().min().unwrap() <= 1
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dominance_orders_values(
        unit in unit_strategy(),
        base in digits(12),
        edits in prop::collection::vec((0usize..12, -1i64..=1), 1..4),
        tail in digits(3),
    ) {
        // Words supported on -6..6 with a shared periodic right tail.
        let mut other = base.clone();
        for (i, d) in edits {
            other[i] = d;
        }
        let mk = |m: &[i64]| BiEpWord::new(vec![0], m.to_vec(), [tail.clone(), vec![0]].concat(), -6);
        let (y, y2) = (mk(&base).unwrap(), mk(&other).unwrap());
        let e = QuadEval::new(unit);
        if dominates(&y, &y2, unit.sign).unwrap() {
            prop_assert!(e.g(&y, 0) > e.g(&y2, 0));
        }
        if dominates(&y2, &y, unit.sign).unwrap() {
            prop_assert!(e.g(&y2, 0) > e.g(&y, 0));
        }
    }

    #[test]
    fn balance_matches_oracle(w in binary(16)) {
        let rep = words::is_balanced(&w);
        prop_assert_eq!(rep.balanced, balanced_oracle(&w));
        if let Some(p) = rep.witness {
            prop_assert!(p.iter().eq(p.iter().rev()));
            let has = |f: Vec<u8>| w.windows(f.len()).any(|x| x == f.as_slice());
            prop_assert!(has([&[0][..], &p, &[0]].concat()));
            prop_assert!(has([&[1][..], &p, &[1]].concat()));
        }
    }

    #[test]
    fn christoffel_mirror((q, p) in (2u64..60).prop_flat_map(|q| (Just(q), 1..q))) {
        prop_assume!(num_integer::gcd(p, q) == 1);
        let lo = words::christoffel(p, q, false).unwrap();
        let mut up = words::christoffel(p, q, true).unwrap();
        up.reverse();
        prop_assert_eq!(lo, up);
    }

    #[test]
    fn gamma_round_trip(x in binary(24), tilde in any::<bool>()) {
        let g = quadratic::gamma(&x, tilde);
        prop_assert_eq!(quadratic::gamma_decode(&g, tilde).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn beta_conjugacy_and_reconstruction(
        unit in unit_strategy(),
        a in -40i64..40,
        b in -20i64..20,
        den in 1i64..10,
    ) {
        let x = QuadraticSurd::new(
            BigRational::new(a.into(), (80 * den).into()),
            BigRational::new(b.into(), (80 * den).into()),
            unit.radicand(),
        ).unwrap();
        prop_assume!(beta::in_extended_domain(unit, &x));
        let d = beta::digits_prefix(unit, &x, 20).unwrap();
        let (d1, tx) = beta::t_step(&unit.alpha(), &x);
        prop_assert_eq!(d[0], d1);
        prop_assert_eq!(&beta::digits_prefix(unit, &tx, 19).unwrap()[..], &d[1..]);
        let e = beta::encode(unit, &x).unwrap();
        prop_assert_eq!(e.digits.take(20), d);
        prop_assert_eq!(beta::reconstruct(unit, &e.digits), x);
    }

    #[test]
    fn exact_and_ball_agree(p in -200i64..200, q in 1i64..60, a in 2u64..8) {
        let xi = RealInput::Rational(BigRational::new(p.into(), q.into()));
        let alpha = Alpha::Integer(a);
        let ex = norm_sequence(&xi, &alpha, 30, None, Some(Mode::Exact)).unwrap();
        match norm_sequence(&xi, &alpha, 30, None, Some(Mode::Ball)) {
            Ok(ba) => {
                for (e, b) in ex.iter().zip(&ba) {
                    prop_assert!((e.value - b.value).abs() <= b.radius + 1e-15);
                }
            }
            // an inexact ball cannot round an exact half-integer
            Err(_) => prop_assert!(ex.iter().any(|e| e.value == 0.5)),
        }
    }

    #[test]
    fn quadratic_exact_and_ball_agree(unit in unit_strategy(), p in -30i64..30, q in 1i64..20) {
        let xi = RealInput::Surd(&unit.alpha() * &QuadraticSurd::from_ratio(p, q));
        let alpha = Alpha::Quadratic(unit);
        let ex = norm_sequence(&xi, &alpha, 25, None, Some(Mode::Exact)).unwrap();
        let ba = norm_sequence(&xi, &alpha, 25, None, Some(Mode::Ball)).unwrap();
        for (e, b) in ex.iter().zip(&ba) {
            prop_assert_eq!(&e.nearest, &b.nearest);
            prop_assert!((e.value - b.value).abs() <= b.radius + 1e-12);
        }
    }

    #[test]
    fn s_word_realizes_eps(unit in unit_strategy(), a in -20i64..20, b in -20i64..20, den in 1i64..12) {
        let xi = &(&unit.alpha() * &QuadraticSurd::from_ratio(a, den)) + &QuadraticSurd::from_ratio(b, den);
        let w = quadratic::s_word(unit, &xi).unwrap();
        let direct = quadratic::s_values(unit, &xi, -3, 15).unwrap();
        let e = QuadEval::new(unit);
        for (i, n) in (-3..15).enumerate() {
            prop_assert_eq!(e.g(&w, n), direct[i].1.clone());
        }
    }

    #[test]
    fn quadratic_dimension_monotone(unit in unit_strategy(), t1 in 0i64..200, t2 in 0i64..200) {
        let (lo, hi) = (t1.min(t2), t1.max(t2));
        let f = |t: i64| dimension::quadratic_bound(unit, &BigRational::new(t.into(), 100.into())).unwrap();
        prop_assert!(f(lo).m <= f(hi).m);
        prop_assert!(f(lo).bound.value <= f(hi).bound.value);
    }

    #[test]
    fn witness_limsup_matches_trace(n in 0usize..=6, b in 4u64..=7, minus in any::<bool>()) {
        let unit = if minus { PisotQuadraticUnit::new(b - 1, UnitSign::Minus) } else { PisotQuadraticUnit::plus(b) }.unwrap();
        for w in quadratic::xn_witnesses(unit, n).unwrap() {
            let (v, _) = quadratic::trace_limsup(unit, &w.xi).unwrap();
            prop_assert_eq!(Some(v), w.limsup.to_rational());
        }
    }
}
