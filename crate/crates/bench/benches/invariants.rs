use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use coxrack::{
    build_coxeter_rack, count_colorings, cp_invariant, find_isomorphism, pr_invariant, CoxeterSpec,
    Framing,
};
use coxrack_bench::{coxeter, torus_2};

fn colorings(c: &mut Criterion) {
    let rack = coxeter(5, 2, 1, "1,2;2,0");
    let mut group = c.benchmark_group("count_colorings");
    for n in [3, 5, 7, 9] {
        let d = torus_2(n);
        let f = Framing::blackboard(&d);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| count_colorings(black_box(d), &f, &rack))
        });
    }
    group.finish();
}

fn invariants(c: &mut Criterion) {
    let rack = coxeter(3, 2, 1, "1,1;1,1");
    let d = torus_2(5);
    c.bench_function("pr torus(2,5) over (Z/3)^2", |b| {
        b.iter(|| pr_invariant(black_box(&d), &rack).unwrap())
    });
    c.bench_function("cp torus(2,5) over (Z/3)^2", |b| {
        b.iter(|| cp_invariant(black_box(&d), &rack).unwrap())
    });
    let big = coxeter(7, 2, 3, "1,0;0,1");
    let link = torus_2(4);
    c.bench_function("cp torus(2,4) over (Z/7)^2", |b| {
        b.iter(|| cp_invariant(black_box(&link), &big).unwrap())
    });
}

fn construction(c: &mut Criterion) {
    let spec = CoxeterSpec::from_parts(11, 2, 2, "1,3;3,2").unwrap();
    c.bench_function("build (Z/11)^2", |b| {
        b.iter(|| build_coxeter_rack(black_box(&spec)).unwrap())
    });
    let spec3 = CoxeterSpec::from_parts(5, 3, 2, "1,0,0;0,1,0;0,0,1").unwrap();
    c.bench_function("build (Z/5)^3", |b| {
        b.iter(|| build_coxeter_rack(black_box(&spec3)).unwrap())
    });
}

fn isomorphism(c: &mut Criterion) {
    let a = coxeter(7, 2, 1, "1,2;2,0");
    let b = coxeter(7, 2, 1, "3,6;6,0");
    c.bench_function("iso (Z/7)^2 scaled forms", |bch| {
        bch.iter(|| find_isomorphism(black_box(&a), black_box(&b)))
    });
}

criterion_group!(benches, colorings, invariants, construction, isomorphism);
criterion_main!(benches);
