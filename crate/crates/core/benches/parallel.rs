use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use foliate::catalog;
use foliate::ce::{self, CoefficientModule};
use foliate::relative::{self, GkModule};
use foliate::{Execution, LieAlgebra, Matrix, ReductivePair};

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn ce_betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("ce_betti");
    group.sample_size(10);
    let cases: Vec<(LieAlgebra, CoefficientModule)> = vec![
        (catalog::sl(3), CoefficientModule::trivial(&catalog::sl(3))),
        (LieAlgebra::abelian(8), CoefficientModule::trivial(&LieAlgebra::abelian(8))),
        (catalog::sl2(), CoefficientModule::adjoint(&catalog::sl2())),
    ];
    for (g, v) in &cases {
        let label = format!("{}-dim{}", g.name(), v.dim());
        for (mode, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, &label), &exec, |b, &exec| {
                b.iter(|| ce::betti_with(g, v, exec))
            });
        }
    }
    group.finish();
}

fn relative_betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("relative_betti");
    group.sample_size(10);
    let pair = ReductivePair::trivial(catalog::sl(3));
    let v = GkModule::trivial(&pair);
    for (mode, exec) in modes() {
        group.bench_function(BenchmarkId::new(mode, "sl3"), |b| {
            b.iter(|| relative::relative_betti_with(&pair, &v, exec).unwrap())
        });
    }
    group.finish();
}

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("bareiss_rank");
    group.sample_size(10);
    let n = 60;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13) % 17) as i64 - 8).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let m = Matrix::from_i64_rows(&refs);
    for (mode, exec) in modes() {
        group.bench_function(BenchmarkId::new(mode, n), |b| b.iter(|| m.rank_with(exec)));
    }
    group.finish();
}

criterion_group!(benches, ce_betti, relative_betti, rank);
criterion_main!(benches);
