//! Brute-force realization search over small integer grids.
//!
//! Independent of the shrinking machinery, so it serves as a cross-check on
//! both the sentence emitter and the minimizer at desk scale.

use rayon::prelude::*;

use crate::code::{code_of, Code, Codeword, Realization};
use crate::geometry::{convex_hull, intersect_figures, ConvexFigure, Point2, Semantics};
use num_traits::Zero;

/// Largest `n` the search accepts.
pub const MAX_SEARCH_SETS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub semantics: Semantics,
    /// Vertices range over `{0..grid}²`.
    pub grid: u32,
    pub max_vertices: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            semantics: Semantics::Closed,
            grid: 4,
            max_vertices: 4,
        }
    }
}

/// Convex polygons (and, for closed semantics, segments and points) with
/// vertices in `{0..grid}²` and at most `max_vertices` vertices, ordered by
/// vertex count and then by vertex list.
fn grid_figures(grid: u32, max_vertices: usize, semantics: Semantics) -> Vec<ConvexFigure> {
    let side = i64::from(grid);
    let points: Vec<Point2> = (0..=side)
        .flat_map(|x| (0..=side).map(move |y| Point2::from_ints(x, y)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Point2> = Vec::new();

    // Convex position is hereditary, so a subset that already has a point
    // inside its hull can be abandoned with all its extensions.
    fn extend(
        points: &[Point2],
        from: usize,
        max: usize,
        chosen: &mut Vec<Point2>,
        out: &mut Vec<ConvexFigure>,
    ) {
        for i in from..points.len() {
            chosen.push(points[i].clone());
            let hull = convex_hull(chosen).expect("nonempty");
            if hull.len() == chosen.len() {
                out.push(hull);
                if chosen.len() < max {
                    extend(points, i + 1, max, chosen, out);
                }
            }
            chosen.pop();
        }
    }
    if max_vertices > 0 {
        extend(&points, 0, max_vertices, &mut chosen, &mut out);
    }
    if semantics == Semantics::Open {
        out.retain(|f| !f.is_degenerate());
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.vertices().cmp(b.vertices()))
    });
    out
}

fn meets(f: &ConvexFigure, g: &ConvexFigure, semantics: Semantics) -> bool {
    match intersect_figures(f, g) {
        None => false,
        Some(h) => semantics == Semantics::Closed || !h.is_degenerate(),
    }
}

struct Search<'a> {
    code: &'a Code,
    semantics: Semantics,
    figures: &'a [ConvexFigure],
    /// `together[i][j]`: some codeword contains both `i` and `j`.
    together: Vec<Vec<bool>>,
}

impl Search<'_> {
    fn prefix_ok(&self, tuple: &[usize]) -> bool {
        let k = tuple.len();
        let last = &self.figures[tuple[k - 1]];
        for (i, &f) in tuple[..k - 1].iter().enumerate() {
            if meets(&self.figures[f], last, self.semantics) != self.together[i][k - 1] {
                return false;
            }
        }
        let r = self.realization(tuple);
        code_of(&r).words() == &self.code.project(k)
    }

    fn realization(&self, tuple: &[usize]) -> Realization {
        let figures = tuple.iter().map(|&i| self.figures[i].clone()).collect();
        Realization::new(self.semantics, figures).expect("at most three sets")
    }

    /// Only the translate touching both axes is kept.
    fn normalized(&self, tuple: &[usize]) -> bool {
        let pts = || tuple.iter().flat_map(|&i| self.figures[i].vertices());
        pts().any(|p| p.x.is_zero()) && pts().any(|p| p.y.is_zero())
    }

    fn dfs(&self, tuple: &mut Vec<usize>) -> Option<Realization> {
        if tuple.len() == self.code.n() {
            if !self.normalized(tuple) {
                return None;
            }
            let r = self.realization(tuple);
            return (code_of(&r) == *self.code).then_some(r);
        }
        for i in 0..self.figures.len() {
            tuple.push(i);
            if self.prefix_ok(tuple) {
                if let Some(r) = self.dfs(tuple) {
                    return Some(r);
                }
            }
            tuple.pop();
        }
        None
    }

    fn run(&self) -> Option<Realization> {
        (0..self.figures.len())
            .into_par_iter()
            .find_map_first(|first| {
                let mut tuple = vec![first];
                if !self.prefix_ok(&tuple) {
                    return None;
                }
                self.dfs(&mut tuple)
            })
    }
}

/// Searches for a realization of `code` with every vertex on the grid.
///
/// Stages grow the grid and the vertex cap together, so small witnesses are
/// found first. Within a stage the first witness in enumeration order wins
/// regardless of how the parallel workers are scheduled. `None` means no
/// realization exists in this finite family; it says nothing beyond it.
pub fn search_realization_with(code: &Code, options: &SearchOptions) -> Option<Realization> {
    let n = code.n();
    if n > MAX_SEARCH_SETS || !code.contains(Codeword::EMPTY) {
        return None;
    }
    let together: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| code.iter().any(|w| w.contains(i) && w.contains(j)))
                .collect()
        })
        .collect();
    for grid in 0..=options.grid {
        for cap in 1..=options.max_vertices {
            let figures = grid_figures(grid, cap, options.semantics);
            if figures.is_empty() {
                continue;
            }
            let search = Search {
                code,
                semantics: options.semantics,
                figures: &figures,
                together: together.clone(),
            };
            if let Some(r) = search.run() {
                // Cheap insurance: the answer is checked from scratch.
                debug_assert_eq!(code_of(&r), *code);
                return (code_of(&r) == *code).then_some(r);
            }
        }
    }
    None
}

/// Closed-semantics search on `{0..grid}²` with at most `max_vertices`
/// vertices per set.
pub fn search_realization(code: &Code, grid: u32, max_vertices: usize) -> Option<Realization> {
    search_realization_with(
        code,
        &SearchOptions {
            semantics: Semantics::Closed,
            grid,
            max_vertices,
        },
    )
}
