//! Execution digraphs, quantum depth and preparation depth.

mod coloring;
mod digraph;
mod dot;

pub use coloring::{bipartite_coloring, misra_gries, preparation_depth, EdgeColoring};
pub use digraph::{combined_depth, execution_digraph, quantum_depth, ArcKind, ExecutionDigraph};
pub use dot::{execution_dot, geometry_dot};
