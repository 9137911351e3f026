//! Enumeration of non-isomorphic interval graphs.
//!
//! Graphs are handled through string representations (every vertex appears
//! twice; the two occurrences delimit its interval) and MPQ-trees. Each
//! graph has a canonical string; the family of connected and disconnected
//! interval graphs on `n` vertices is a tree rooted at the complete graph,
//! where the parent of a graph adds one edge. Children are obtained by
//! removing an edge whose removal keeps the graph interval, and the tree is
//! traversed by reverse search.

pub mod canon;
pub mod edges;
pub mod family;
pub mod mpq;
pub mod strings;

pub use edges::{
    classify_edge, list_interval_edges, remove_edge_string, tree_path, EdgeClassification,
    EdgeError, IntervalEdge, NonIntervalReason, RemovalCase, SectionTables, TreePath, TreeTables,
};
pub use family::{
    children, children_counted, collect_parallel, complete_graph, count, enumerate,
    enumerate_parallel, parent, parent_string, prune_candidates, Emission, EnumerateOptions,
    FamilyError, Stats,
};
pub use canon::{canonize, compute_ranks, isomorphic, CanonicalString, Ranks, SubtreeTuple};
pub use mpq::{build_mpq, string_of, validate_mpq, MpqTree, Node, NodeId, PNode, QNode, Span, Violation};
pub use strings::{
    endpoints_of, graph_of, normalize_labels, EndpointKind, EndpointSeq, Graph, StringError,
    StringRep, Vertex,
};

#[cfg(test)]
pub(crate) mod fixtures {
    /// The 13-vertex running example: its string representation and the
    /// canonical string of its graph.
    pub const FIG1_INPUT: &str = "1,1,5,3,2,4,4,2,6,3,8,7,7,6,5,13,11,9,9,12,12,11,10,10,13,8";
    pub const FIG1_CANONICAL: &str =
        "1,1,2,3,4,5,5,4,6,3,7,8,8,6,2,9,10,10,11,12,12,13,13,11,9,7";
}
