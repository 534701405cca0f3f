//! Brute-force ground truth on small graphs: clique and independent-set
//! tests, triangle counts, Goodman's identity and exact edge numbers by
//! exhaustive enumeration.

mod graph;
mod search;

pub use graph::{goodman_check, is_mn_graph, triangle_count, triangle_count_at, Graph, MAX_ORDER};
pub use search::{exact_edge_numbers, EdgeSearch, Extremes, Prefix, DEFAULT_CEILING};
