//! Seeded random realizations for experiments and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use convcode_core::geometry::{int, rat};
use convcode_core::{convex_hull, ConvexFigure, Error, Point2, Realization, Semantics};

const QUARTERS: i64 = 4;

/// Each set is the hull of up to `max_vertices` random points with
/// coordinates in `{0, 1/4, …, grid}`. Open realizations get full-dimensional
/// sets only.
pub fn random(
    seed: u64,
    n: usize,
    semantics: Semantics,
    max_vertices: usize,
    grid: u32,
) -> Result<Realization, Error> {
    let min_vertices = match semantics {
        Semantics::Closed => 1,
        Semantics::Open => 3,
    };
    if max_vertices < min_vertices {
        return Err(Error::InvalidArgument(format!(
            "{semantics} sets need at least {min_vertices} vertices"
        )));
    }
    if semantics == Semantics::Open && grid == 0 {
        return Err(Error::InvalidArgument(
            "open sets need a grid of at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = i64::from(grid) * QUARTERS;
    let figures = (0..n)
        .map(|_| loop {
            let k = rng.gen_range(min_vertices..=max_vertices);
            let pts: Vec<Point2> = (0..k)
                .map(|_| {
                    Point2::new(
                        rat(rng.gen_range(0..=top), QUARTERS),
                        rat(rng.gen_range(0..=top), QUARTERS),
                    )
                })
                .collect();
            let hull = convex_hull(&pts).expect("nonempty");
            if semantics == Semantics::Closed || !hull.is_degenerate() {
                break hull;
            }
        })
        .collect();
    Realization::new(semantics, figures)
}

/// One near-regular `k`-gon of radius 8 centered at `(8, 8)`.
pub fn polygon(k: usize, semantics: Semantics) -> Result<Realization, Error> {
    if k < 3 {
        return Err(Error::InvalidArgument(
            "a polygon needs at least 3 vertices".into(),
        ));
    }
    let f = ConvexFigure::inscribed(k, &Point2::from_ints(8, 8), &int(8));
    Realization::new(semantics, vec![f])
}
