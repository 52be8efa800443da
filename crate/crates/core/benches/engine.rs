//! Sequential against parallel execution on the heaviest batch operations.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qawa::affine::check_defining_relations;
use qawa::cyclotomic::gram;
use qawa::superalgebra::presets;
use qawa::{AffineContext, CycloContext, CyclotomicPoly, Execution, Scalar, Tower};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn quotient(name: &str, n: usize) -> Arc<CycloContext> {
    let alg = Arc::new(presets::load(name).unwrap());
    let aff = AffineContext::new(alg.clone(), n, "2/3".parse().unwrap()).unwrap();
    let f = CyclotomicPoly::from_scalars(&alg, &[Scalar::from_int(-1), Scalar::zero()]).unwrap();
    CycloContext::new(&aff, f).unwrap()
}

fn relations(c: &mut Criterion) {
    let alg = Arc::new(presets::load("ext2").unwrap());
    let ctx = AffineContext::new(alg, 3, "2/3".parse().unwrap()).unwrap();
    let mut group = c.benchmark_group("relations_ext2_n3");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(check_defining_relations(&ctx, exec).unwrap()))
        });
    }
    group.finish();
}

fn gram_matrix(c: &mut Criterion) {
    let ctx = quotient("dual", 2);
    let mut group = c.benchmark_group("gram_dual_n2");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(gram(&ctx, exec).unwrap()))
        });
    }
    group.finish();
}

fn tower(c: &mut Criterion) {
    let ctx = quotient("trivial", 2);
    let mut group = c.benchmark_group("tower_trivial_n2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let t = Tower::new(&ctx, exec).unwrap();
                black_box(t.trace_mismatches(exec).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, relations, gram_matrix, tower);
criterion_main!(benches);
