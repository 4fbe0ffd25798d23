use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use q41_core::analysis::{willmore_at, AnalysisOptions};
use q41_core::conformal_frame::{frame_at_with, invariants_from_frame};
use q41_core::grid::{sample_points, sweep_sequential, GridSpec};
use q41_core::surfaces::catalog;

fn willmore_sweep(c: &mut Criterion) {
    let chart = catalog::homogeneous_torus(2.0).unwrap();
    let opts = AnalysisOptions::default();
    let point = |u: f64, v: f64| {
        let f = frame_at_with(&chart, u, v, opts.order, &opts.frame).unwrap();
        willmore_at(&invariants_from_frame(&f, &opts.frame).unwrap()).unwrap()
    };
    let mut group = c.benchmark_group("willmore_sweep");
    group.sample_size(10);
    for n in [8, 16] {
        let pts = sample_points(&chart.domain, true, true, GridSpec { nu: n, nv: n });
        group.bench_with_input(BenchmarkId::new("sequential", n), &pts, |b, pts| {
            b.iter(|| sweep_sequential(pts, point))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &pts, |b, pts| {
            b.iter(|| q41_core::grid::sweep_parallel(pts, point))
        });
    }
    group.finish();
}

criterion_group!(benches, willmore_sweep);
criterion_main!(benches);
