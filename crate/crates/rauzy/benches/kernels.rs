use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rauzy::chain::{Chain, Face};
use rauzy::dynamics::coincidence::strong_coincidence;
use rauzy::fractal::audit::aperiodic_tiling_audit;
use rauzy::fractal::checks::two_oracle_agreement;
use rauzy::fractal::rauzy_approx;
use rauzy::model::Model;
use rauzy::par;
use rauzy::subst::families;

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", false), ("sequential", true)]
}

fn run<R: Send>(seq: bool, f: impl FnOnce() -> R + Send) -> R {
    if seq {
        par::sequential(f)
    } else {
        f()
    }
}

fn kernels(c: &mut Criterion) {
    par::init_threads();
    let m = Model::new(families::sigma_t(0)).unwrap();
    let seed = Chain::from_terms(5, 2, false, [[1u8, 3], [1, 4], [2, 4], [2, 5], [3, 5]].iter().map(|t| (Face::at_origin(5, t.to_vec()), 1)));

    let mut g = c.benchmark_group("tile_level_12");
    for (name, seq) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run(seq, || rauzy_approx(&m, &[2, 3], 12).polygons.len())));
    }
    g.finish();

    let mut g = c.benchmark_group("aperiodic_audit_level_6");
    g.sample_size(10);
    for (name, seq) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run(seq, || aperiodic_tiling_audit(&m, &seed, 1, 8, 6).unwrap().report.pass)));
    }
    g.finish();

    let mut g = c.benchmark_group("two_oracle_hausdorff_level_10");
    g.sample_size(10);
    for (name, seq) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run(seq, || two_oracle_agreement(&m, &[2, 4], &[10], 0).unwrap().distances[0])));
    }
    g.finish();

    let mut g = c.benchmark_group("strong_coincidence");
    g.sample_size(10);
    for (name, seq) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run(seq, || strong_coincidence(&m, 20).entries.len())));
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
