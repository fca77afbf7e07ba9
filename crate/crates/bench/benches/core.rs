use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use convcode_bench::{point_cloud, polygon_row};
use convcode_core::{code_of, convex_hull, minimize, representatives_of, MinimizeConfig, Point2};

fn hull(c: &mut Criterion) {
    let mut group = c.benchmark_group("convex_hull");
    for count in [100, 1000] {
        let pts = point_cloud(count);
        group.bench_with_input(BenchmarkId::from_parameter(count), &pts, |b, pts| {
            b.iter(|| convex_hull(black_box(pts)))
        });
    }
    group.finish();
}

fn code(c: &mut Criterion) {
    let mut group = c.benchmark_group("code_of");
    group.sample_size(10);
    for k in [1, 2, 3] {
        let r = polygon_row(k, 8);
        group.bench_with_input(BenchmarkId::from_parameter(k), &r, |b, r| {
            b.iter(|| code_of(black_box(r)))
        });
    }
    group.finish();
}

fn shrink(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    group.sample_size(10);
    for sides in [12, 24] {
        let r = polygon_row(1, sides);
        let pinned: Vec<Point2> = representatives_of(&r).into_iter().map(|(_, p)| p).collect();
        let config = MinimizeConfig::default();
        group.bench_with_input(BenchmarkId::from_parameter(sides), &r, |b, r| {
            b.iter(|| minimize(black_box(r), &pinned, &config).expect("minimizes"))
        });
    }
    group.finish();
}

criterion_group!(benches, hull, code, shrink);
criterion_main!(benches);
