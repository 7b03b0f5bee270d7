use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;

use pseries_bench::{heisenberg, heisenberg_elements};
use pseries_core::lie::{generate_subalgebra, generator_components};
use pseries_core::{builtins, FilteredAlgebra};

fn collection(c: &mut Criterion) {
    let pres = builtins::heisenberg(2);
    let xs = heisenberg_elements(1000);
    c.bench_function("collect heisenberg products", |b| {
        b.iter(|| {
            for x in &xs {
                for y in &xs {
                    black_box(pres.multiply(x, y));
                }
            }
        })
    });
    let x = &heisenberg_elements(3)[0];
    c.bench_function("heisenberg power 1000", |b| {
        b.iter(|| black_box(pres.power(x, &BigInt::from(1000))))
    });
}

fn multiplication(c: &mut Criterion) {
    let mut group = c.benchmark_group("heisenberg multiply");
    for cutoff in [8u64, 12, 16] {
        let ga = heisenberg(cutoff);
        let alg = ga.algebra();
        let xs: Vec<_> = heisenberg_elements(3).iter().map(|g| ga.embed(g)).collect();
        group.bench_with_input(BenchmarkId::from_parameter(cutoff), &cutoff, |b, _| {
            b.iter(|| {
                for x in &xs[..3] {
                    for y in &xs[3..6] {
                        black_box(alg.mul(x, y).unwrap());
                    }
                }
            })
        });
    }
    group.finish();

    let poly = FilteredAlgebra::polynomial(3, &[1, 1, 2], 18).unwrap();
    let x = poly
        .element(&[(vec![0, 0, 0], 1), (vec![1, 0, 0], 1), (vec![0, 1, 1], 2)])
        .unwrap();
    c.bench_function("polynomial power", |b| b.iter(|| black_box(poly.pow(&x, 27).unwrap())));
}

fn subalgebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate subalgebra");
    group.sample_size(20);
    for cutoff in [12u64, 24] {
        let ga = heisenberg(cutoff);
        let seeds = generator_components(&ga);
        group.bench_with_input(BenchmarkId::new("heisenberg", cutoff), &cutoff, |b, &d| {
            b.iter(|| black_box(generate_subalgebra(ga.algebra(), &seeds, d)))
        });
    }
    let units = builtins::units_example(2, 40).unwrap();
    let seeds = pseries_core::lie::box_components(&units, 3);
    group.bench_function("units box 3, cutoff 40", |b| {
        b.iter(|| black_box(generate_subalgebra(units.algebra(), &seeds, 40)))
    });
    group.finish();
}

criterion_group!(benches, collection, multiplication, subalgebra);
criterion_main!(benches);
