use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qideal_core::exec;
use qideal_core::ideal::{IdealClass, IdealContext};
use qideal_core::qorder::QOrderedSet;
use qideal_core::quantale::{godel_chain, lukasiewicz_chain};
use qideal_core::scott::{Mode, ScottContext};
use qideal_core::Budget;

fn ideals(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideals");
    group.sample_size(10);
    let bases = [
        ("L5/d_left", QOrderedSet::d_left(Arc::new(lukasiewicz_chain(5).unwrap()))),
        ("G5/d_left", QOrderedSet::d_left(Arc::new(godel_chain(5).unwrap()))),
        ("L7/d_left", QOrderedSet::d_left(Arc::new(lukasiewicz_chain(7).unwrap()))),
    ];
    for (name, a) in &bases {
        for class in [IdealClass::Flat, IdealClass::Irreducible] {
            let id = format!("{name}/{class}");
            let run = || IdealContext::new(a, Budget::default()).ideals(class).unwrap();
            group.bench_function(BenchmarkId::new("parallel", &id), |b| b.iter(|| black_box(run())));
            group.bench_function(BenchmarkId::new("sequential", &id), |b| {
                b.iter(|| black_box(exec::sequential(run)))
            });
        }
    }
    group.finish();
}

fn scott(c: &mut Criterion) {
    let mut group = c.benchmark_group("scott");
    group.sample_size(10);
    let a = QOrderedSet::d_left(Arc::new(lukasiewicz_chain(5).unwrap()));
    let run = || {
        ScottContext::new(&a, IdealClass::Irreducible, &Budget::default())
            .unwrap()
            .structure(Mode::Cotopology)
            .unwrap()
    };
    group.bench_function("parallel/L5", |b| b.iter(|| black_box(run())));
    group.bench_function("sequential/L5", |b| b.iter(|| black_box(exec::sequential(run))));
    group.finish();
}

criterion_group!(benches, ideals, scott);
criterion_main!(benches);
