use criterion::{criterion_group, criterion_main, Criterion};
use fuseries_bench::{gcd_pair, log_argument};
use fuseries_core::holonomic::{b_direct, find_r, q_tower};
use fuseries_core::polyring::poly_gcd;
use fuseries_core::template::verify_h_m;
use fuseries_core::tutte::{tamari_interval_count, tau_from_phi};
use fuseries_core::verifier::{f_table, hilbert_check, verify_vanishing};
use std::hint::black_box;

fn polynomials(c: &mut Criterion) {
    let (a, b) = gcd_pair();
    c.bench_function("gcd_tower_sized", |bn| bn.iter(|| poly_gcd(black_box(&a), black_box(&b))));
}

fn series(c: &mut Criterion) {
    let arg = log_argument(16, 6);
    c.bench_function("series_log_16_6", |bn| bn.iter(|| black_box(&arg).log().unwrap()));
    c.bench_function("series_sqrt_16_6", |bn| bn.iter(|| black_box(&arg).sqrt().unwrap()));
    c.bench_function("tau_40", |bn| bn.iter(|| tau_from_phi(black_box(40))));
    c.bench_function("tamari_6", |bn| bn.iter(|| tamari_interval_count(black_box(6)).unwrap()));
}

fn verification(c: &mut Criterion) {
    let mut g = c.benchmark_group("verification");
    g.sample_size(10);
    g.bench_function("f_table_10_6", |bn| bn.iter(|| f_table(black_box(10), 6).unwrap()));
    let table = f_table(10, 6).unwrap();
    g.bench_function("vanishing_n8", |bn| bn.iter(|| verify_vanishing(&table, black_box(8), 6).unwrap()));
    g.bench_function("hilbert_n5", |bn| bn.iter(|| hilbert_check(black_box(5), 14).unwrap()));
    g.bench_function("h_m_4", |bn| bn.iter(|| verify_h_m(black_box(4), 12, 8).unwrap()));
    g.bench_function("b_direct_14_12", |bn| bn.iter(|| b_direct(black_box(14), 12).unwrap()));
    g.finish();
}

fn holonomic(c: &mut Criterion) {
    let mut g = c.benchmark_group("holonomic");
    g.sample_size(10);
    g.bench_function("q_tower_3", |bn| bn.iter(|| q_tower(black_box(3)).unwrap()));
    let tower = q_tower(4).unwrap();
    g.bench_function("find_r", |bn| bn.iter(|| find_r(black_box(&tower)).unwrap()));
    g.finish();
}

criterion_group!(benches, polynomials, series, verification, holonomic);
criterion_main!(benches);
