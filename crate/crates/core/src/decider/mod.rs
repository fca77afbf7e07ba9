//! Deciding planar realizability: vertex budgets, the first-order
//! realizability sentence, an external solver client, and a brute-force
//! grid search used as an independent oracle at desk scale.

pub mod bounds;
pub mod search;
pub mod sentence;
pub mod smt;
pub mod solver;

pub use bounds::{per_polygon_bound, representative_bound, vertex_bound, VertexBudget};
pub use search::{search_realization, search_realization_with, SearchOptions};
pub use sentence::{emit_sentence, Cmp, Formula, Sentence, SentenceCounts, Term};
pub use smt::{parse_smt, render_smt};
pub use solver::{solve_external, SolverStatus, SOLVER_ENV};
