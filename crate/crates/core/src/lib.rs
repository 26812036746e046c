//! Exact Turán-number laboratory for families built from paths and a
//! non-bipartite graph `H`.
//!
//! The crate computes `ex(n, F)` and `ex_conn(n, F)` by isomorph-free
//! exhaustive generation, evaluates the closed-form predictions for
//! `{P_k, H}`-free graphs, and audits the path-partition lemmas on every
//! small witness graph.

pub mod coloring;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod formulas;
pub mod graph;
pub mod structure;
pub mod subgraph;

pub use engine::{Mode, ResultCache, TuranEngine, TuranResult};
pub use error::{Error, Result};
pub use family::GraphFamily;
pub use graph::{CanonicalForm, ConstructionSpec, Graph};

/// Parses and builds a construction expression.
pub fn build(expr: &str) -> Result<Graph> {
    expr.parse::<ConstructionSpec>()?.build()
}
