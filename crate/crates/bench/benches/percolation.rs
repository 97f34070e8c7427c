use bootcert::{
    certified_lower_bound, closure, construct_u, grid_hypergraph, min_percolating_exact, Family,
    GridSpec, SearchOptions,
};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn u_ids(spec: &GridSpec) -> Vec<usize> {
    construct_u(spec)
        .iter()
        .map(|v| spec.encode(v).unwrap())
        .collect()
}

fn bench_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure_from_u");
    for (n, d, t, r) in [(5, 2, 3, 2), (4, 3, 2, 2), (6, 3, 3, 2)] {
        let spec = GridSpec::homogeneous(n, d, t, r).unwrap();
        for family in [Family::K, Family::P] {
            let h = grid_hypergraph(&spec, family);
            let seed = u_ids(&spec);
            group.bench_with_input(
                BenchmarkId::new(family.as_str(), spec.to_string()),
                &seed,
                |b, seed| b.iter(|| closure(&h, black_box(seed)).unwrap()),
            );
        }
    }
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    for (n, d, t, r) in [(4, 2, 2, 2), (4, 3, 2, 2), (5, 2, 3, 2)] {
        let spec = GridSpec::homogeneous(n, d, t, r).unwrap();
        group.bench_function(spec.to_string(), |b| {
            b.iter(|| certified_lower_bound(black_box(&spec), Family::P).unwrap())
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_percolating");
    group.sample_size(10);
    for (n, d, t, r) in [(3, 2, 2, 2), (4, 2, 2, 2)] {
        let spec = GridSpec::homogeneous(n, d, t, r).unwrap();
        let h = grid_hypergraph(&spec, Family::P);
        group.bench_function(spec.to_string(), |b| {
            b.iter(|| {
                min_percolating_exact(&h, 0, h.num_vertices(), &SearchOptions::default()).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_closure, bench_certify, bench_search);
criterion_main!(benches);
