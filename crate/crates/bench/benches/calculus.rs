use codiff_bench::{d13_basis, entry};
use codiff_core::{
    catalog, cohomology_dims, extend_to_order, infinitesimal_deformation_with_basis,
    obstruction_relations,
};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bracket(c: &mut Criterion) {
    let d1 = entry("d_1");
    let d13 = entry("d_13(1:-1)");
    c.bench_function("bracket d_1 d_13(1:-1)", |b| {
        b.iter(|| black_box(&d1).bracket(black_box(&d13)).unwrap())
    });
    let basis = d13_basis();
    c.bench_function("bracket arity-2 basis pairs", |b| {
        b.iter(|| {
            for x in &basis {
                for y in &basis {
                    black_box(x.bracket(y).unwrap());
                }
            }
        })
    });
}

fn cohomology(c: &mut Criterion) {
    let d14 = entry("d_14");
    c.bench_function("cohomology d_14 to degree 4", |b| {
        b.iter(|| cohomology_dims(black_box(&d14), 4).unwrap())
    });
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    g.bench_function("reproduce table", |b| {
        b.iter(|| catalog::reproduce_table().unwrap())
    });
    g.finish();
}

fn deformation(c: &mut Criterion) {
    let d = entry("d_13(0:0)");
    let basis = d13_basis();
    let mut g = c.benchmark_group("deformation");
    g.sample_size(10);
    g.bench_function("d_13(0:0) to order 3 with relations", |b| {
        b.iter(|| {
            let s = infinitesimal_deformation_with_basis(&d, basis.clone()).unwrap();
            let s = extend_to_order(&s, 3).unwrap();
            obstruction_relations(&s)
        })
    });
    g.finish();
}

criterion_group!(benches, bracket, cohomology, deformation);
criterion_main!(benches);
