//! Graph isomorphism via auxiliary-digraph peeling.
//!
//! The matcher positions the vertices of two graphs relative to a chosen
//! root by BFS level, compares the resulting digraphs through per-vertex
//! input/output characteristic vectors (accumulated across rounds as
//! multi-floor histories), and peels off uniquely identified vertex pairs
//! until a full bijection is assembled. Every produced mapping is verified
//! edge by edge before an isomorphic verdict is reported; the algorithm is
//! treated as a heuristic whose failure modes are measured, not assumed
//! away. An exhaustive backtracking oracle provides independent ground
//! truth at small orders, and fuzz/bench harnesses quantify agreement and
//! empirical scaling.

pub mod bench;
pub mod digraph;
pub mod fixtures;
pub mod graph;
pub mod history;
pub mod matcher;
pub mod oracle;

pub use graph::{Graph, VertexId};
pub use matcher::{run, verify_mapping, Decision, Mapping, Mode, Verdict};
