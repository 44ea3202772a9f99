use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use syang_core::exactmath::qf;
use syang_core::glmn::{tensor, vector_rep};
use syang_core::par::Exec;
use syang_core::superalgebra::GradingContext;
use syang_core::yangian::{evaluation_rep, shifted_tensor_with, verify_defining_relations_with, YModule};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn factors(m: usize, n: usize) -> Vec<YModule> {
    let c = GradingContext::new(m, n).unwrap();
    let v = vector_rep(&c);
    vec![evaluation_rep(&v), evaluation_rep(&tensor(&v, &v).unwrap())]
}

fn bench_tensor(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("shifted_tensor");
    let fs = factors(2, 1);
    let alphas = [qf(0, 1), qf(2, 3)];
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| shifted_tensor_with(&fs, &alphas, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_relations(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("verify_relations");
    g.sample_size(10);
    let fs = factors(1, 1);
    let w = shifted_tensor_with(&[fs[0].clone(), fs[0].clone()], &[qf(0, 1), qf(1, 3)], Exec::Sequential).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| assert!(verify_defining_relations_with(&w, 3, exec).passed()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_tensor, bench_relations);
criterion_main!(benches);
