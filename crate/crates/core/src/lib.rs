//! Finding majority, k-majority and plurality balls with SAME/DIFFERENT
//! queries: models, query-graph constructions, brute-force analysis, bound
//! formulas and the adaptive game.

pub mod adaptive;
pub mod analysis;
pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod formats;
pub mod model;

pub use model::{
    Answer, AnswerMap, BallId, Coloring, Edge, ProblemKind, ProblemSpec, QueryGraph, Verdict,
    WeightedInstance,
};
