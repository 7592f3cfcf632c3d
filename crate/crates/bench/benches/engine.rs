use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pfaff_bench::{diagrams, model};
use pfaff_core::bwb::bwb;
use pfaff_core::partition::{mult_with, MultMethod};
use pfaff_core::phi::analyze_phi;
use pfaff_core::schur::{pieri, plethysm_sym_wedge2};
use pfaff_core::x1::rhom_l_l;
use pfaff_core::{Partition, PhiSpec, Weight};

fn bench_mult(c: &mut Criterion) {
    let mut g = c.benchmark_group("mult");
    for lambda in diagrams() {
        let k = lambda.odd_column_count();
        for (name, method) in [("profile", MultMethod::Profile), ("enumerate", MultMethod::Enumerate)] {
            g.bench_with_input(BenchmarkId::new(name, &lambda), &lambda, |b, l| {
                b.iter(|| mult_with(black_box(l), k, method))
            });
        }
    }
    g.finish();
}

fn bench_schur(c: &mut Criterion) {
    let mu = Partition::new(vec![3, 2, 2, 1]).unwrap();
    c.bench_function("pieri (3,2,2,1) k=3 rows=8", |b| b.iter(|| pieri(black_box(&mu), 3, 8)));
    let mut g = c.benchmark_group("plethysm");
    for m in [2, 4, 6] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| plethysm_sym_wedge2(m, 6)));
    }
    g.finish();
}

fn bench_bwb(c: &mut Criterion) {
    let u = Weight::new(vec![3, -2]).unwrap();
    let q = Weight::new(vec![4, 1, 0, -1, -5, -6]).unwrap();
    c.bench_function("bwb Gr(2,8)", |b| b.iter(|| bwb(8, 2, black_box(&u), black_box(&q))));
}

fn bench_phi(c: &mut Criterion) {
    let mut g = c.benchmark_group("analyze_phi");
    g.sample_size(10);
    for (n, i, m, dim) in [(2, 1, 0, 4), (2, 0, 2, 5), (3, 1, 1, 6)] {
        let spec = PhiSpec::new(n, i, m, dim).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n},{i},{m} N={dim}")), &spec, |b, s| {
            b.iter(|| analyze_phi(black_box(s)))
        });
    }
    g.finish();
}

fn bench_rhom(c: &mut Criterion) {
    let mut g = c.benchmark_group("rhom_l_l");
    g.sample_size(10);
    for n in [2, 3] {
        let x1 = model(n);
        g.bench_with_input(BenchmarkId::new("n", n), &x1, |b, x1| {
            b.iter(|| rhom_l_l(0, n - 1, -1, 0, black_box(x1)))
        });
    }
    g.finish();
}

criterion_group!(algebra, bench_mult, bench_schur, bench_bwb);
criterion_group!(geometry, bench_phi, bench_rhom);
criterion_main!(algebra, geometry);
