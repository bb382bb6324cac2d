use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mhq_bench::{cases, euler_product, macdonald, norm, one_psi_one, rational_ring};
use mhq_core::identities::verify;
use mhq_core::Ring;

fn polynomials(c: &mut Criterion) {
    let r3 = rational_ring(3);
    c.bench_function("P_(3,2,1) n=3 rational", |b| b.iter(|| macdonald(black_box(&[3, 2, 1]), 3, &r3)));
    let f2 = Ring::formal(2, 2, 12);
    c.bench_function("P_(2,2) n=2 formal k=2", |b| b.iter(|| macdonald(black_box(&[2, 2]), 2, &f2)));
    c.bench_function("<P_(2,1),P_(2,1)> n=3", |b| b.iter(|| norm(black_box(&[2, 1]), 3, &r3)));
}

fn series(c: &mut Criterion) {
    c.bench_function("(3/7 q; q)_inf to q^60", |b| b.iter(|| euler_product(black_box(60))));
    c.bench_function("1Psi1 n=2 window to q^10", |b| b.iter(|| one_psi_one(black_box(10))));
}

fn identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for id in ["GAUSS", "SAALSCHUTZ", "BAILEY"] {
        let items = cases(id);
        g.bench_function(id, |b| b.iter(|| items.iter().map(|(e, ps)| verify(e, ps).terms).sum::<usize>()));
    }
    g.finish();
}

criterion_group!(benches, polynomials, series, identities);
criterion_main!(benches);
