use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use succdiff_core::classes::{construct, sample_measure};
use succdiff_core::extremal::{certify_never_exceeds_with, search_with, Functional, Goal, SearchProblem};
use succdiff_core::membership::{check_spirallike_with, order_for_radius, Grid};
use succdiff_core::{ClassSpec, Execution};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn certify(c: &mut Criterion) {
    let spec = ClassSpec::spirallike(0.4, 0.3).unwrap();
    let mut group = c.benchmark_group("certify_never_exceeds");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 256), &exec, |b, &exec| {
            b.iter(|| certify_never_exceeds_with(&spec, 8, black_box(256), 1, &[], exec).unwrap())
        });
    }
    group.finish();
}

fn membership(c: &mut Criterion) {
    let spec = ClassSpec::spirallike(0.4, 0.3).unwrap();
    let grid = Grid {
        radii: vec![0.5, 0.9],
        m: 4096,
    };
    let f = construct(&sample_measure(5, 4), &spec, order_for_radius(0.9)).unwrap();
    let mut group = c.benchmark_group("membership_grid");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, grid.m), &exec, |b, &exec| {
            b.iter(|| check_spirallike_with(black_box(&f), &spec, &grid, exec).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let problem = SearchProblem {
        spec: ClassSpec::starlike(0.25).unwrap(),
        n: 4,
        functional: Functional::TwoSidedDiff,
        k_atoms: 3,
        budget: 4000,
        restarts: 8,
        seed: 3,
        goal: Goal::Maximize,
    };
    let mut group = c.benchmark_group("extremal_search");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, problem.budget), &exec, |b, &exec| {
            b.iter(|| search_with(black_box(&problem), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, certify, membership, search);
criterion_main!(benches);
