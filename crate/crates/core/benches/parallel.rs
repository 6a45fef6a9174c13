//! Sequential vs data-parallel evaluation of the batch-heavy operations.
//!
//! Both arms run the same binary: "sequential" installs a one-thread rayon
//! pool, "parallel" uses the global pool. Building with
//! `--no-default-features` removes rayon altogether.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use shapecalc::complex::ComplexMap;
use shapecalc::error::Budget;
use shapecalc::homotopical::boxslash;
use shapecalc::simplicial::{boundary, horn, simplex, Ex, Subdivision};

fn budget() -> Budget {
    Budget::new("bench", usize::MAX / 2)
}

fn arms(c: &mut Criterion, group: &str, work: impl Fn() + Sync) {
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("sequential", 1), |b| b.iter(|| single.install(&work)));
    g.bench_function(BenchmarkId::new("parallel", rayon::current_num_threads()), |b| b.iter(&work));
    g.finish();
}

fn ex(c: &mut Criterion) {
    let x = boundary(3);
    arms(c, "ex-boundary3-dim2", || {
        let b = budget();
        Ex::new(&x, 2, &b).unwrap();
    });
}

fn lifting(c: &mut Criterion) {
    let (h, d) = (horn(2, 1).unwrap(), simplex(2));
    let i = h.inclusion_into(&d).unwrap();
    // a subdivided sphere mapping to a point has many squares against the horn
    let y = Subdivision::new(&boundary(3)).unwrap().complex().clone();
    let pt = simplex(0);
    let p = ComplexMap::constant(&y, pt.cell_ids(0).next().unwrap());
    arms(c, "boxslash-horn-vs-sd-sphere", || {
        boxslash((&h, &d, &i), (&y, &pt, &p), &budget()).unwrap();
    });
}

criterion_group!(benches, ex, lifting);
criterion_main!(benches);
