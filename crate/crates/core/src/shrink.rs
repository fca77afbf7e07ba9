//! Code-preserving local moves on closed polygonal realizations.
//!
//! Three moves shrink a realization without changing its code or the
//! intersection patterns at a pinned point set `P`:
//!
//! * simplification of a figure near a boundary point `p` relative to a
//!   convex neighborhood `B`,
//! * pulling a shared vertex `v` toward a point `v'` with the same pattern,
//! * deleting a vertex whose removal changes nothing observable.
//!
//! [`minimize`] composes removals and pulls into a greedy descent and
//! re-verifies containment, pinned patterns and code before returning.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::code::{
    build_arrangement, code_of, pattern_at, patterns_at, Code, Codeword, Realization,
};
use crate::decider::bounds::per_polygon_bound;
use crate::error::Error;
use crate::geometry::{
    convex_hull, intersect_figures, membership, on_open_segment, orientation, rat, ConvexFigure,
    Orientation, Point2, Rational, Semantics,
};

/// Halving cap used when none is given.
pub const DEFAULT_MAX_HALVINGS: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRef {
    pub figure_index: usize,
    pub vertex_index: usize,
    pub location: Point2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessReport {
    pub good: bool,
    pub very_good: bool,
    /// `(figure, edge)` pairs whose open edge contains the point.
    pub witnesses: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct PullOutcome {
    pub realization: Realization,
    pub epsilon: Rational,
    pub halvings: u32,
}

fn on_boundary(c: &ConvexFigure, p: &Point2) -> bool {
    membership(c, p, Semantics::Closed) && !membership(c, p, Semantics::Open)
}

/// Connected components of `∂B ∩ C`, walking the boundary of `B`.
///
/// Returns the pieces per edge of `B` and the number of components. Pieces
/// of consecutive edges join exactly when the shared vertex of `B` is in `C`.
pub fn boundary_components(
    b: &ConvexFigure,
    c: &ConvexFigure,
) -> (Vec<Option<ConvexFigure>>, usize) {
    let bv = b.vertices();
    let k = bv.len();
    let pieces: Vec<Option<ConvexFigure>> = (0..k)
        .map(|i| {
            let edge = ConvexFigure::segment(bv[i].clone(), bv[(i + 1) % k].clone());
            intersect_figures(&edge, c)
        })
        .collect();
    let starts = (0..k)
        .filter(|&i| pieces[i].is_some() && !membership(c, &bv[i], Semantics::Closed))
        .count();
    (pieces, starts)
}

/// Simplification of `c` near its boundary point `p` relative to the convex
/// neighborhood `b`.
///
/// Returns `conv({p} ∪ (C ∖ int B))`, built from `p`, the vertices of `C`
/// outside the interior of `B`, and the points where `∂C` meets `∂B`. When
/// `∂B ∩ C` is connected this equals `(C ∖ B) ∪ cone_p(∂B ∩ C)`.
pub fn simplify_at(c: &ConvexFigure, p: &Point2, b: &ConvexFigure) -> Result<ConvexFigure, Error> {
    if !on_boundary(c, p) {
        return Err(Error::Boundary(p.to_string()));
    }
    if !membership(b, p, Semantics::Open) {
        return Err(Error::Neighborhood(p.to_string()));
    }
    let (_, components) = boundary_components(b, c);
    if components > 1 {
        return Err(Error::DisconnectedArc { components });
    }

    let mut keep = vec![p.clone()];
    keep.extend(
        c.vertices()
            .iter()
            .filter(|v| !membership(b, v, Semantics::Open))
            .cloned(),
    );
    for (c0, c1) in c.edges() {
        let c_edge = ConvexFigure::segment(c0.clone(), c1.clone());
        for (b0, b1) in b.edges() {
            let b_edge = ConvexFigure::segment(b0.clone(), b1.clone());
            if let Some(x) = intersect_figures(&c_edge, &b_edge) {
                keep.extend(x.into_vertices());
            }
        }
    }
    Ok(convex_hull(&keep).expect("contains p"))
}

/// Good: `p` lies on no open edge of any figure. Very good: additionally `p`
/// is not a non-vertex point of the pivot figure.
pub fn classify_vertex(r: &Realization, p: &Point2, pivot: usize) -> GoodnessReport {
    let mut witnesses = Vec::new();
    for (i, f) in r.figures().iter().enumerate() {
        for (j, (a, b)) in f.edges().into_iter().enumerate() {
            if on_open_segment(p, a, b) {
                witnesses.push((i, j));
            }
        }
    }
    let good = witnesses.is_empty();
    let pivot_fig = r.figure(pivot);
    let inside_pivot = membership(pivot_fig, p, Semantics::Closed) && !pivot_fig.has_vertex(p);
    GoodnessReport {
        good,
        very_good: good && !inside_pivot,
        witnesses,
    }
}

fn is_good(r: &Realization, p: &Point2) -> bool {
    r.figures().iter().all(|f| f.on_open_edge(p).is_none())
}

fn vertex_ref(r: &Realization, p: &Point2) -> Option<VertexRef> {
    r.figures().iter().enumerate().find_map(|(i, f)| {
        f.vertex_index(p).map(|j| VertexRef {
            figure_index: i,
            vertex_index: j,
            location: p.clone(),
        })
    })
}

/// All good pairs in deterministic order: first pairs of polygon vertices,
/// then a vertex paired with a point of the arrangement's representative
/// pool. Each pair `(v, v')` has `v` a vertex, both good, neither in `pinned`,
/// `v ≠ v'` and equal patterns.
pub fn good_pairs<'a>(
    r: &'a Realization,
    pinned: &[Point2],
) -> impl Iterator<Item = (VertexRef, Point2)> + 'a {
    let pinned: BTreeSet<Point2> = pinned.iter().cloned().collect();
    let candidates: Vec<(Point2, Codeword)> = r
        .vertex_locations()
        .into_iter()
        .filter(|v| !pinned.contains(v) && is_good(r, v))
        .map(|v| {
            let w = pattern_at(r, &v);
            (v, w)
        })
        .collect();

    let mut vertex_pairs = Vec::new();
    for (i, (v, w)) in candidates.iter().enumerate() {
        for (j, (u, x)) in candidates.iter().enumerate() {
            if i != j && w == x {
                vertex_pairs.push((v.clone(), u.clone()));
            }
        }
    }

    let pool_pairs = std::iter::once(()).flat_map(move |_| {
        let vertices: BTreeSet<Point2> = r.vertex_locations().into_iter().collect();
        let pool: Vec<(Point2, Codeword)> = build_arrangement(r)
            .face_reps
            .into_iter()
            .map(|f| f.point)
            .filter(|q| !vertices.contains(q) && !pinned.contains(q) && is_good(r, q))
            .map(|q| {
                let w = pattern_at(r, &q);
                (q, w)
            })
            .collect();
        candidates
            .iter()
            .flat_map(|(v, w)| {
                pool.iter()
                    .filter(move |(_, pw)| pw == w)
                    .map(move |(q, _)| (v.clone(), q.clone()))
            })
            .collect::<Vec<_>>()
    });

    vertex_pairs
        .into_iter()
        .chain(pool_pairs)
        .map(move |(v, q)| (vertex_ref(r, &v).expect("candidate is a vertex"), q))
}

/// First good pair, if any.
pub fn find_good_pair(r: &Realization, pinned: &[Point2]) -> Option<(VertexRef, Point2)> {
    good_pairs(r, pinned).next()
}

/// Everything a move must preserve.
#[derive(Clone, Debug)]
struct Baseline {
    code: Code,
    pinned: Vec<Point2>,
    pinned_patterns: Vec<Codeword>,
}

impl Baseline {
    fn of(r: &Realization, pinned: &[Point2]) -> Baseline {
        Baseline {
            code: code_of(r),
            pinned: pinned.to_vec(),
            pinned_patterns: patterns_at(r, pinned),
        }
    }

    fn preserved_by(&self, r: &Realization) -> bool {
        patterns_at(r, &self.pinned) == self.pinned_patterns && code_of(r) == self.code
    }
}

/// Replaces `v` by `t` in a CCW cycle; `None` if the result is not convex.
fn replace_vertex(figure: &ConvexFigure, v: &Point2, t: &Point2) -> Option<ConvexFigure> {
    let verts: Vec<Point2> = figure
        .vertices()
        .iter()
        .map(|u| if u == v { t.clone() } else { u.clone() })
        .collect();
    let k = verts.len();
    if k < 3 {
        return convex_hull(&verts).filter(|h| h.len() == k);
    }
    let mut strict = Vec::with_capacity(k);
    for i in 0..k {
        match orientation(&verts[(i + k - 1) % k], &verts[i], &verts[(i + 1) % k]) {
            Orientation::Clockwise => return None,
            Orientation::CounterClockwise => strict.push(verts[i].clone()),
            Orientation::Collinear => {}
        }
    }
    ConvexFigure::new(strict).ok()
}

/// Moves vertex `v` toward `v_prime` by `ε = 1/2, 1/4, …` in every figure
/// that has `v` as a vertex, keeping the first `ε` that leaves all figures
/// convex, the code unchanged and every pinned pattern unchanged.
pub fn pull_vertex(
    r: &Realization,
    v: &Point2,
    v_prime: &Point2,
    pinned: &[Point2],
    max_halvings: u32,
) -> Result<PullOutcome, Error> {
    let baseline = Baseline::of(r, pinned);
    pull_against(r, v, v_prime, &baseline, max_halvings)
}

fn pull_against(
    r: &Realization,
    v: &Point2,
    v_prime: &Point2,
    baseline: &Baseline,
    max_halvings: u32,
) -> Result<PullOutcome, Error> {
    if v == v_prime {
        return Err(Error::InvalidPull("target equals the vertex".into()));
    }
    let owners: Vec<usize> = (0..r.n()).filter(|&i| r.figure(i).has_vertex(v)).collect();
    if owners.is_empty() {
        return Err(Error::InvalidPull(format!("{v} is not a vertex")));
    }
    if pattern_at(r, v) != pattern_at(r, v_prime) {
        return Err(Error::InvalidPull(format!(
            "{v} and {v_prime} have different patterns"
        )));
    }
    if baseline.pinned.iter().any(|q| q == v || q == v_prime) {
        return Err(Error::InvalidPull("pinned point".into()));
    }

    let mut epsilon = rat(1, 2);
    for k in 0..max_halvings {
        let target = v.lerp(v_prime, &epsilon);
        let mut candidate = r.clone();
        let mut convex = true;
        for &i in &owners {
            match replace_vertex(r.figure(i), v, &target) {
                Some(f) if f.is_subset_of(r.figure(i)) => candidate = candidate.with_figure(i, f),
                _ => {
                    convex = false;
                    break;
                }
            }
        }
        if convex && baseline.preserved_by(&candidate) {
            return Ok(PullOutcome {
                realization: candidate,
                epsilon,
                halvings: k,
            });
        }
        epsilon /= Rational::from_integer(2.into());
    }
    Err(Error::PullFailed {
        halvings: max_halvings,
    })
}

fn without_vertex(r: &Realization, v: &VertexRef) -> Option<Realization> {
    let fig = r.figure(v.figure_index);
    if fig.len() <= 1 {
        return None;
    }
    let rest: Vec<Point2> = fig
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != v.vertex_index)
        .map(|(_, p)| p.clone())
        .collect();
    let shrunk = convex_hull(&rest)?;
    Some(r.with_figure(v.figure_index, shrunk))
}

/// Deletes `v` from its figure (hull of the remaining vertices) and returns
/// the result if the code and every pinned pattern survive.
pub fn remove_vertex_if_redundant(
    r: &Realization,
    v: &VertexRef,
    pinned: &[Point2],
) -> Option<Realization> {
    let baseline = Baseline::of(r, pinned);
    without_vertex(r, v).filter(|c| baseline.preserved_by(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Removal {
        figure: usize,
        vertex: Point2,
    },
    Pull {
        from: Point2,
        toward: Point2,
        epsilon: Rational,
    },
}

#[derive(Clone, Debug)]
pub struct MinimizeConfig {
    /// Cap on the number of accepted moves.
    pub budget: usize,
    pub max_halvings: u32,
    /// Good pairs tried per pull round.
    pub max_pull_attempts: usize,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            budget: 1000,
            max_halvings: DEFAULT_MAX_HALVINGS,
            max_pull_attempts: 8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeOutcome {
    pub realization: Realization,
    pub moves: Vec<Move>,
    pub budget_exhausted: bool,
    pub vertices_before: usize,
    pub vertices_after: usize,
    /// Per-figure vertex bound `3^n (n-1)! |P|`.
    pub vertex_bound: BigUint,
    /// Whether each figure is within `vertex_bound`.
    pub within_bound: Vec<bool>,
    /// Total vertex count after each accepted move.
    pub history: Vec<usize>,
}

impl MinimizeOutcome {
    pub fn all_within_bound(&self) -> bool {
        self.within_bound.iter().all(|&b| b)
    }
}

/// One pass over all vertices in order, applying every removal that the
/// baseline allows. Returns the moves applied.
fn removal_sweep(current: &mut Realization, baseline: &Baseline, budget_left: usize) -> Vec<Move> {
    let mut moves = Vec::new();
    let mut i = 0;
    while i < current.n() {
        let mut j = 0;
        while j < current.figure(i).len() {
            if moves.len() >= budget_left {
                return moves;
            }
            let v = VertexRef {
                figure_index: i,
                vertex_index: j,
                location: current.figure(i).vertices()[j].clone(),
            };
            match without_vertex(current, &v).filter(|c| baseline.preserved_by(c)) {
                Some(next) => {
                    moves.push(Move::Removal {
                        figure: i,
                        vertex: v.location,
                    });
                    // hull order may have shifted; restart this figure
                    *current = next;
                    j = 0;
                }
                None => j += 1,
            }
        }
        i += 1;
    }
    moves
}

/// Greedy descent toward an inclusion-minimal realization.
///
/// Alternates removal sweeps with pulls along good pairs. A pull is kept
/// only when it unlocks at least one removal, so the total vertex count
/// strictly drops with every round and the loop terminates. The result is
/// re-verified against `r`: every figure shrank, pinned patterns and the
/// code are unchanged.
pub fn minimize(
    r: &Realization,
    pinned: &[Point2],
    config: &MinimizeConfig,
) -> Result<MinimizeOutcome, Error> {
    if r.semantics() != Semantics::Closed {
        return Err(Error::InvalidArgument(
            "minimize expects a closed realization".into(),
        ));
    }
    let baseline = Baseline::of(r, pinned);
    let hit: BTreeSet<Codeword> = baseline.pinned_patterns.iter().copied().collect();
    if &hit != baseline.code.words() {
        return Err(Error::InvalidArgument(
            "pinned points are not a set of representatives".into(),
        ));
    }

    let mut current = r.clone();
    let mut moves: Vec<Move> = Vec::new();
    let mut history = Vec::new();
    let mut exhausted = false;

    loop {
        let left = config.budget.saturating_sub(moves.len());
        if left == 0 {
            exhausted = true;
            break;
        }
        let swept = removal_sweep(&mut current, &baseline, left);
        if !swept.is_empty() {
            for _ in &swept {
                history.push(current.total_vertices());
            }
            moves.extend(swept);
            continue;
        }
        if left < 2 {
            exhausted = true;
            break;
        }
        match pull_round(&current, &baseline, config) {
            Some((next, pull, removal)) => {
                current = next;
                moves.push(pull);
                moves.push(removal);
                history.push(current.total_vertices());
                history.push(current.total_vertices());
            }
            None => break,
        }
    }

    for (i, (y, x)) in current.figures().iter().zip(r.figures()).enumerate() {
        if !y.is_subset_of(x) {
            return Err(Error::Verification(format!("figure {} grew", i + 1)));
        }
    }
    if !baseline.preserved_by(&current) {
        return Err(Error::Verification(
            "code or pinned patterns changed".into(),
        ));
    }

    let bound = per_polygon_bound(r.n(), pinned.len());
    let within_bound = current
        .figures()
        .iter()
        .map(|f| BigUint::from(f.len()) <= bound)
        .collect();
    Ok(MinimizeOutcome {
        vertices_before: r.total_vertices(),
        vertices_after: current.total_vertices(),
        realization: current,
        moves,
        budget_exhausted: exhausted,
        vertex_bound: bound,
        within_bound,
        history,
    })
}

/// Tries good pairs until a pull is followed by a successful removal.
fn pull_round(
    current: &Realization,
    baseline: &Baseline,
    config: &MinimizeConfig,
) -> Option<(Realization, Move, Move)> {
    for (v, target) in good_pairs(current, &baseline.pinned).take(config.max_pull_attempts) {
        let Ok(outcome) =
            pull_against(current, &v.location, &target, baseline, config.max_halvings)
        else {
            continue;
        };
        let mut pulled = outcome.realization.clone();
        let removal = removal_sweep(&mut pulled, baseline, 1);
        if let Some(m) = removal.into_iter().next() {
            let pull = Move::Pull {
                from: v.location,
                toward: target,
                epsilon: outcome.epsilon,
            };
            return Some((pulled, pull, m));
        }
    }
    None
}
