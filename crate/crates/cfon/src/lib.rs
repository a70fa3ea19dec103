//! Conflict-free open-neighborhood coloring of graphs with few colors relative
//! to their distance to a cluster graph.
//!
//! [`engine::color_graph`] colors any isolated-vertex-free graph with at most
//! `max(3, |X| + 1)` colors for a cluster-deletion set `X`. The [`oracle`]
//! module provides exact checks, and [`generators`] builds test instances.

pub mod engine;
pub mod generators;
pub mod graph;
pub mod modulator;
pub mod oracle;

pub use engine::{color_graph, Coloring, EngineError};
pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use modulator::{Modulator, ModulatorError};
