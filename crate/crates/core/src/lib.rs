//! Graph-analysis library for domination-versus-covering questions:
//! exact oracles for γ, β, and α on small graphs, quadratic-time
//! recognizers for graphs whose domination and covering numbers agree
//! and for bipartite graphs dominated by their smaller side, a
//! constructive tree family with build scripts, and an extremal guard
//! cover solver for grids of orthogonal segments.

#[cfg(test)]
pub(crate) mod fixtures;
pub mod graph;
pub mod oracles;
pub mod grid;
pub mod recognition;
pub mod trees;

pub use graph::{Bipartition, Graph, GraphError, StructuralMarks, VertexId};
pub use grid::{Grid, GridError, GridGraph, Orientation, Segment};
pub use oracles::{OracleError, OracleResult, DEFAULT_SIZE_CAP};
pub use recognition::{Certificate, RecognitionError, Rule, Verdict};
pub use trees::{BuildScript, RootedTree, TreeError, TreeOp, TreeOpKind};
