//! Shape-parallel map against a plain iterator on the per-shape Negut
//! coefficients. Build with `--no-default-features` to make the library
//! itself sequential as well.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use triharm::negut::{epsilon_uncached, shape_coefficient};
use triharm::partition::{p, partitions_of};
use triharm::par;

fn shape_coefficients(c: &mut Criterion) {
    let mut g = c.benchmark_group("shape_coefficients");
    g.sample_size(10);
    let tau = p(&[3, 2, 1]);
    for n in [5, 6, 7] {
        let mus = partitions_of(n);
        g.bench_with_input(BenchmarkId::new("par", n), &mus, |b, mus| {
            b.iter(|| par::map(mus, |mu| shape_coefficient(black_box(&tau), mu)))
        });
        g.bench_with_input(BenchmarkId::new("seq", n), &mus, |b, mus| {
            b.iter(|| mus.iter().map(|mu| shape_coefficient(black_box(&tau), mu)).collect::<Vec<_>>())
        });
    }
    g.finish();
}

fn epsilon_batch(c: &mut Criterion) {
    let mut g = c.benchmark_group("epsilon_batch");
    g.sample_size(10);
    let taus = [p(&[2, 1]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[3, 2]), p(&[4, 1])];
    let n = 5;
    g.bench_function(format!("par/{}", par::is_parallel()), |b| {
        b.iter(|| par::map(&taus, |tau| epsilon_uncached(tau, n).expect("epsilon")))
    });
    g.bench_function("seq", |b| {
        b.iter(|| taus.iter().map(|tau| epsilon_uncached(tau, n).expect("epsilon")).collect::<Vec<_>>())
    });
    g.finish();
}

criterion_group!(benches, shape_coefficients, epsilon_batch);
criterion_main!(benches);
