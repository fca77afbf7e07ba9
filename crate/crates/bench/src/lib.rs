//! Fixed inputs shared by the benchmarks.

use convcode_core::geometry::int;
use convcode_core::{ConvexFigure, Point2, Realization};

/// `k` near-regular polygons of `sides` vertices on a staggered row, each
/// overlapping its neighbors.
pub fn polygon_row(k: usize, sides: usize) -> Realization {
    let figures = (0..k)
        .map(|i| {
            let center = Point2::from_ints(6 * i as i64, 3 * (i % 2) as i64);
            ConvexFigure::inscribed(sides, &center, &int(5))
        })
        .collect();
    Realization::closed(figures).expect("valid polygons")
}

/// Points on a small integer spiral, many of them interior.
pub fn point_cloud(count: usize) -> Vec<Point2> {
    (0..count as i64)
        .map(|i| Point2::from_ints((i * 37) % 101 - 50, (i * 59) % 97 - 48))
        .collect()
}
