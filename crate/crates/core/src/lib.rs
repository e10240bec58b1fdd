//! k-weights of positive-weighted graphs and realization of families of
//! `(n-1)`-weights by trees and graphs.
//!
//! All arithmetic is exact. A family `D` assigns to each label `i` in `1..n`
//! the minimum weight `D_î` of a connected subgraph containing every external
//! vertex except `i`.

pub mod class;
pub mod document;
pub mod family;
pub mod generate;
pub mod graph;
pub mod graphlike;
pub mod rational;
pub mod realization;
pub mod report;
pub mod steiner;
pub mod tree;

pub use class::{check, classify, realize};
pub use family::{DissimilarityFamily, FamilyError};
pub use graph::{EdgeKey, GraphError, GraphParts, VertexId, WeightedGraph};
pub use rational::{format_rational, parse_rational, Rational};
pub use realization::{verify, Construction, Realization, RealizationClass, RealizeError};
pub use report::{Verdict, Violation};
pub use steiner::{
    dissimilarity_vector, hat_vector, steiner_brute, steiner_weight, DissimilarityVector,
    Steiner, SteinerConfig, SteinerError, SteinerResult, TerminalSet,
};
