use criterion::{black_box, criterion_group, criterion_main, Criterion};

use geospec_core::algebra::DEFAULT_BITS;
use geospec_core::interval;
use geospec_core::limsup::{norm_sequence, Alpha, Mode, RealInput};
use geospec_core::spectrum::{integer, quadratic};
use geospec_core::words::{self, EpWord};
use geospec_core::{beta, BigRational, PisotQuadraticUnit, QuadraticSurd};

fn spectra(c: &mut Criterion) {
    let x = BigRational::new(1.into(), 3.into());
    let a10 = EpWord::periodic(integer::a_word(10)).unwrap();
    c.bench_function("f_eval A_10, a = 3", |b| {
        b.iter(|| integer::f_eval(black_box(&a10), &x))
    });
    c.bench_function("enumerate_spectrum a = 2, k <= 8", |b| {
        b.iter(|| integer::enumerate_spectrum(2, black_box(8), DEFAULT_BITS))
    });
    let unit = PisotQuadraticUnit::plus(4).unwrap();
    c.bench_function("pq_spectrum plus 4, n <= 40", |b| {
        b.iter(|| quadratic::pq_spectrum(unit, black_box(40)))
    });
}

fn word_tools(c: &mut Criterion) {
    let all: Vec<Vec<u8>> = (0u32..1 << 12)
        .map(|m| (0..12).map(|i| (m >> i & 1) as u8).collect())
        .collect();
    c.bench_function("balance + F-scan, all words of length 12", |b| {
        b.iter(|| {
            all.iter()
                .filter(|w| !words::is_balanced(w).balanced && words::forbidden_scan(w).is_empty())
                .count()
        })
    });
    let tm = words::thue_morse(64);
    c.bench_function("iota on Thue-Morse window 64", |b| {
        b.iter(|| words::iota_window(black_box(&tm)))
    });
}

fn quadratic_tools(c: &mut Criterion) {
    let unit = PisotQuadraticUnit::minus(5).unwrap();
    let x = QuadraticSurd::from_ratio(3, 17);
    c.bench_function("beta encode 3/17, minus 5", |b| {
        b.iter(|| beta::encode(unit, black_box(&x)))
    });

    let case = interval::kappa_and_keys(PisotQuadraticUnit::plus(6).unwrap()).unwrap();
    let eta = interval::eta_grid(&case, 10)[5].clone();
    c.bench_function("check_eta plus 6, |k| <= 200", |b| {
        b.iter(|| interval::check_eta(&case, black_box(&eta), 200))
    });

    let alpha = Alpha::Quadratic(unit);
    let xi = RealInput::Surd(QuadraticSurd::from_ratio(2, 7));
    let mut g = c.benchmark_group("norm_sequence 2/7, minus 5, n = 500");
    g.sample_size(20);
    g.bench_function("exact", |b| {
        b.iter(|| norm_sequence(&xi, &alpha, 500, None, Some(Mode::Exact)))
    });
    g.bench_function("ball", |b| {
        b.iter(|| norm_sequence(&xi, &alpha, 500, None, Some(Mode::Ball)))
    });
    g.finish();
}

criterion_group!(benches, spectra, word_tools, quadratic_tools);
criterion_main!(benches);
