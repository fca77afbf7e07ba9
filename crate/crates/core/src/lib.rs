//! Exact-arithmetic workbench for convex codes in the plane.
//!
//! The crate computes the code of a polygonal realization under closed or
//! open semantics, shrinks realizations by code-preserving local moves,
//! relates open realizations to closed ones, bounds the number of vertices a
//! realization needs, and emits the first-order realizability sentence for
//! an external real-arithmetic solver.

pub mod bridge;
pub mod code;
pub mod decider;
pub mod error;
pub mod geometry;
mod homogeneous;
pub mod io;
pub mod shrink;
pub mod svg;

pub use bridge::{
    build_open_representatives, check_empty_interior_lemma, closure_realization, open_minimize,
    OpenReductionCertificate, SigmaLine,
};
pub use code::{
    build_arrangement, code_of, pattern_at, representatives_of, Arrangement, Code, Codeword,
    FaceRep, Realization, MAX_SETS,
};
pub use decider::{
    emit_sentence, render_smt, search_realization, solve_external, vertex_bound, Sentence,
    SolverStatus, VertexBudget,
};
pub use error::Error;
pub use geometry::{
    clip_halfplane, convex_hull, intersect_figures, membership, orientation, ConvexFigure,
    HalfplaneSide, Line2, Orientation, Point2, Rational, Semantics,
};
pub use shrink::{
    classify_vertex, find_good_pair, minimize, pull_vertex, remove_vertex_if_redundant,
    simplify_at, GoodnessReport, MinimizeConfig, MinimizeOutcome, PullOutcome, VertexRef,
};
