//! Benchmarks for the two engines and the lattice layer.
//!
//! Subjects are chosen so a single iteration stays well under a second:
//! the structure engine on its flagship large group, the oracle on groups
//! near the edge of what brute force should be used for, and the subgroup
//! enumeration that feeds everything else.

use criterion::{criterion_group, criterion_main, Criterion};
use gengame_bench::subject;
use gengame_core::{
    all_subgroups, build_digraph, bruteforce_nim, compute_types, intersection_family, GameKind,
    GroupSpec, OracleConfig,
};
use std::hint::black_box;

fn structure_engine(c: &mut Criterion) {
    let f13 = subject(GroupSpec::Frobenius { p: 13, r: None });
    c.bench_function("structure/avoidance digraph on F13 (order 156)", |b| {
        b.iter(|| {
            let fam = intersection_family(black_box(&f13)).unwrap();
            let d = compute_types(build_digraph(&f13, &fam, GameKind::Dng).unwrap());
            black_box(d.nim_value())
        })
    });
    c.bench_function("structure/achievement digraph on F13 (order 156)", |b| {
        b.iter(|| {
            let fam = intersection_family(black_box(&f13)).unwrap();
            let d = compute_types(build_digraph(&f13, &fam, GameKind::Gen).unwrap());
            black_box(d.nim_value())
        })
    });
}

fn oracle_engine(c: &mut Criterion) {
    let z12 = subject(GroupSpec::Cyclic(12));
    c.bench_function("oracle/avoidance on Z12 (80-state bound)", |b| {
        b.iter(|| {
            let mut cfg = OracleConfig::new();
            black_box(bruteforce_nim(black_box(&z12), GameKind::Dng, &mut cfg).unwrap())
        })
    });
    let f5 = subject(GroupSpec::Frobenius { p: 5, r: None });
    c.bench_function("oracle/achievement on F5 (1104-state bound)", |b| {
        b.iter(|| {
            let mut cfg = OracleConfig::new();
            black_box(bruteforce_nim(black_box(&f5), GameKind::Gen, &mut cfg).unwrap())
        })
    });
}

fn lattice_layer(c: &mut Criterion) {
    let q8 = subject(GroupSpec::Quaternion8);
    c.bench_function("lattice/all subgroups of Q8", |b| {
        b.iter(|| black_box(all_subgroups(black_box(&q8)).unwrap().members().len()))
    });
    let h3 = subject(GroupSpec::Heisenberg(3));
    c.bench_function("lattice/intersection family of Heisenberg(3)", |b| {
        b.iter(|| black_box(intersection_family(black_box(&h3)).unwrap().members().len()))
    });
}

criterion_group!(benches, structure_engine, oracle_engine, lattice_layer);
criterion_main!(benches);
