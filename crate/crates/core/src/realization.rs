//! Witness graphs and the shared machinery the constructions use: label
//! normalization, un-permutation and Steiner re-verification.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::family::{DissimilarityFamily, FamilyError};
use crate::graph::{GraphError, VertexId, WeightedGraph};
use crate::report::Verdict;
use crate::steiner::{Steiner, SteinerError};

/// The five realization settings for a family of `(n-1)`-weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RealizationClass {
    /// Positive-weighted tree with `1..n` among its vertices.
    TreeVertices,
    /// Positive-weighted tree with `1..n` among its leaves.
    TreeLeaves,
    /// Positive-weighted tree with exactly the vertices `1..n`.
    TreeExact,
    /// Positive-weighted graph with exactly the vertices `1..n`.
    GraphExact,
    /// Positive-weighted graph containing `1..4`, internal vertices allowed.
    GraphN4Internal,
}

impl RealizationClass {
    pub const ALL: [RealizationClass; 5] = [
        RealizationClass::TreeVertices,
        RealizationClass::TreeLeaves,
        RealizationClass::TreeExact,
        RealizationClass::GraphExact,
        RealizationClass::GraphN4Internal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RealizationClass::TreeVertices => "tree-vertices",
            RealizationClass::TreeLeaves => "tree-leaves",
            RealizationClass::TreeExact => "tree-exact",
            RealizationClass::GraphExact => "graph-exact",
            RealizationClass::GraphN4Internal => "graph-n4-internal",
        }
    }
}

impl fmt::Display for RealizationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RealizationClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RealizationClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("family is not realizable as {class}: {verdict}")]
    NotRealizable {
        class: RealizationClass,
        verdict: Verdict,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction requires n = {required}, got n = {n}")]
    WrongN { n: usize, required: usize },
    #[error("k = {k} is outside 1..={max}")]
    InvalidK { k: usize, max: usize },
    #[error("construction did not reproduce the family: expected {expected}, got {actual}")]
    VerificationFailed {
        expected: DissimilarityFamily,
        actual: DissimilarityFamily,
    },
    #[error("internal construction error: {0}")]
    Internal(String),
    #[error(transparent)]
    Steiner(#[from] SteinerError),
}

impl From<GraphError> for RealizeError {
    fn from(e: GraphError) -> Self {
        RealizeError::Internal(e.to_string())
    }
}

impl From<FamilyError> for RealizeError {
    fn from(e: FamilyError) -> Self {
        RealizeError::Internal(e.to_string())
    }
}

/// Which construction produced a realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    /// Star whose center is the new vertex `n + 1`.
    StarNewCenter,
    /// Star centered at the external vertex with this label.
    StarAtLabel(usize),
    /// Path on the `h` maximal labels with pendant leaves for the rest.
    Caterpillar { h: usize, split: usize },
    /// Complete graph on three labels.
    Triangle,
    /// Complete graph on the `k` maximal labels, every other label joined to
    /// two of them.
    RepeatedMax { k: usize },
    /// Four-vertex base graph extended by pendant edges.
    UniqueMax { levels: Vec<InductionLevel> },
    /// Seven-vertex graph with three internal vertices.
    FourWithInternal,
}

/// One pendant-extension step of the unique-maximum construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionLevel {
    pub n: usize,
    /// 1-based: `permutation[p]` is the label moved to position `p + 1`.
    pub permutation: Vec<usize>,
    /// Weight of the pendant edge: largest value minus second largest.
    pub x: crate::rational::Rational,
    /// The `(n-1)`-label family the smaller graph must realize.
    pub reduced: DissimilarityFamily,
}

/// A witness graph for a family, plus how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// External vertex `i` carries label `i`; internal vertices have ids
    /// above `n`.
    pub graph: WeightedGraph,
    /// 1-based: `permutation[p]` is the original label placed at position
    /// `p + 1` before the construction ran. Identity when no reordering was
    /// needed.
    pub permutation: Vec<usize>,
    pub trace: Vec<String>,
    pub construction: Construction,
}

impl Realization {
    pub fn internal_vertices(&self) -> Vec<VertexId> {
        self.graph.internal_vertices()
    }
}

pub(crate) fn label_vertex(label: usize) -> VertexId {
    VertexId(u32::try_from(label).expect("label fits in u32"))
}

pub(crate) fn external_labels(n: usize) -> Vec<VertexId> {
    (1..=n).map(label_vertex).collect()
}

/// Maps a graph built on normalized positions back to original labels.
/// `order[p]` is the 0-based original index placed at position `p`; vertices
/// with ids above `n` are left alone.
pub(crate) fn unpermute(graph: &WeightedGraph, order: &[usize]) -> Result<WeightedGraph, GraphError> {
    let n = order.len();
    let relabeled = graph.relabel(|v| {
        let id = v.0 as usize;
        if (1..=n).contains(&id) {
            label_vertex(order[id - 1] + 1)
        } else {
            v
        }
    })?;
    relabeled.with_external(external_labels(n))
}

pub(crate) fn one_based(order: &[usize]) -> Vec<usize> {
    order.iter().map(|&i| i + 1).collect()
}

/// Recomputes the hat family of `graph` with the Steiner dynamic program and
/// compares it with `expected`.
pub fn verify(graph: &WeightedGraph, expected: &DissimilarityFamily) -> Result<(), RealizeError> {
    let actual = Steiner::default().hat_vector(graph)?;
    if &actual == expected {
        Ok(())
    } else {
        Err(RealizeError::VerificationFailed {
            expected: expected.clone(),
            actual,
        })
    }
}
