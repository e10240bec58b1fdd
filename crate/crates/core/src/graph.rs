//! Positive-weighted simple graphs with a distinguished, ordered set of
//! external vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(id: u32) -> Self {
        VertexId(id)
    }
}

/// An unordered vertex pair, stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    lo: VertexId,
    hi: VertexId,
}

impl EdgeKey {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            EdgeKey { lo: a, hi: b }
        } else {
            EdgeKey { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> VertexId {
        self.lo
    }

    pub fn hi(&self) -> VertexId {
        self.hi
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({},{})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} listed more than once")]
    DuplicateVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0} appears more than once")]
    DuplicateEdge(EdgeKey),
    #[error("edge {edge} has non-positive weight {}", format_rational(weight))]
    NonPositiveWeight { edge: EdgeKey, weight: Rational },
    #[error("edge {edge} uses vertex {vertex}, which is not in the vertex set")]
    UnknownEndpoint { edge: EdgeKey, vertex: VertexId },
    #[error("external vertex {0} is not in the vertex set")]
    ExternalNotVertex(VertexId),
    #[error("external vertex {0} listed more than once")]
    DuplicateExternal(VertexId),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeKey),
}

/// Unvalidated graph description, as read from a document or assembled by
/// hand. Turn it into a [`WeightedGraph`] with `WeightedGraph::try_from`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphParts {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId, Rational)>,
    pub external: Vec<VertexId>,
}

/// Checks every [`WeightedGraph`] invariant and reports the first violation.
pub fn validate(parts: &GraphParts) -> Result<(), GraphError> {
    let mut vertices = BTreeSet::new();
    for &v in &parts.vertices {
        if !vertices.insert(v) {
            return Err(GraphError::DuplicateVertex(v));
        }
    }
    let mut seen = BTreeSet::new();
    for (u, v, w) in &parts.edges {
        let edge = EdgeKey::new(*u, *v);
        if u == v {
            return Err(GraphError::SelfLoop(*u));
        }
        for x in [u, v] {
            if !vertices.contains(x) {
                return Err(GraphError::UnknownEndpoint { edge, vertex: *x });
            }
        }
        if !seen.insert(edge) {
            return Err(GraphError::DuplicateEdge(edge));
        }
        if !w.is_positive() {
            return Err(GraphError::NonPositiveWeight {
                edge,
                weight: w.clone(),
            });
        }
    }
    let mut externals = BTreeSet::new();
    for &x in &parts.external {
        if !vertices.contains(&x) {
            return Err(GraphError::ExternalNotVertex(x));
        }
        if !externals.insert(x) {
            return Err(GraphError::DuplicateExternal(x));
        }
    }
    Ok(())
}

/// A simple finite graph with positive rational edge weights.
///
/// `external()[i - 1]` is the vertex carrying label `i`. Values of this type
/// always satisfy the invariants checked by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeKey, Rational>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    external: Vec<VertexId>,
}

impl TryFrom<GraphParts> for WeightedGraph {
    type Error = GraphError;

    fn try_from(parts: GraphParts) -> Result<Self, GraphError> {
        validate(&parts)?;
        let vertices: BTreeSet<VertexId> = parts.vertices.into_iter().collect();
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> =
            vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        let mut edges = BTreeMap::new();
        for (u, v, w) in parts.edges {
            adjacency.entry(u).or_default().insert(v);
            adjacency.entry(v).or_default().insert(u);
            edges.insert(EdgeKey::new(u, v), w);
        }
        Ok(WeightedGraph {
            vertices,
            edges,
            adjacency,
            external: parts.external,
        })
    }
}

impl WeightedGraph {
    /// Builds a graph whose vertex set is the union of the external vertices,
    /// the extra `internal` vertices and all edge endpoints.
    pub fn from_edges<I>(
        external: Vec<VertexId>,
        internal: &[VertexId],
        edges: I,
    ) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Rational)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let vertices: BTreeSet<VertexId> = external
            .iter()
            .chain(internal)
            .copied()
            .chain(edges.iter().flat_map(|(u, v, _)| [*u, *v]))
            .collect();
        WeightedGraph::try_from(GraphParts {
            vertices: vertices.into_iter().collect(),
            edges,
            external,
        })
    }

    pub fn to_parts(&self) -> GraphParts {
        GraphParts {
            vertices: self.vertices.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .map(|(e, w)| (e.lo, e.hi, w.clone()))
                .collect(),
            external: self.external.clone(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Edges in ascending `(min, max)` order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeKey, &Rational)> + '_ {
        self.edges.iter().map(|(e, w)| (*e, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, edge: EdgeKey) -> Option<&Rational> {
        self.edges.get(&edge)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency.get(&v).map_or(0, BTreeSet::len)
    }

    /// Number of external vertices (the `n` of the labels `1..n`).
    pub fn n(&self) -> usize {
        self.external.len()
    }

    pub fn external(&self) -> &[VertexId] {
        &self.external
    }

    /// Vertex carrying the 1-based `label`.
    pub fn external_vertex(&self, label: usize) -> Option<VertexId> {
        label.checked_sub(1).and_then(|i| self.external.get(i)).copied()
    }

    pub fn internal_vertices(&self) -> Vec<VertexId> {
        let external: BTreeSet<_> = self.external.iter().collect();
        self.vertices
            .iter()
            .filter(|v| !external.contains(v))
            .copied()
            .collect()
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// Renames vertices through `map`, which must be injective on the vertex set.
    pub fn relabel<F>(&self, map: F) -> Result<WeightedGraph, GraphError>
    where
        F: Fn(VertexId) -> VertexId,
    {
        WeightedGraph::try_from(GraphParts {
            vertices: self.vertices.iter().map(|&v| map(v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|(e, w)| (map(e.lo), map(e.hi), w.clone()))
                .collect(),
            external: self.external.iter().map(|&v| map(v)).collect(),
        })
    }

    /// Same graph with a different ordered external list.
    pub fn with_external(&self, external: Vec<VertexId>) -> Result<WeightedGraph, GraphError> {
        let mut parts = self.to_parts();
        parts.external = external;
        WeightedGraph::try_from(parts)
    }

    /// Multiplies every edge weight by `factor`, which must be positive.
    pub fn scaled(&self, factor: &Rational) -> Result<WeightedGraph, GraphError> {
        let mut parts = self.to_parts();
        for edge in &mut parts.edges {
            edge.2 = &edge.2 * factor;
        }
        WeightedGraph::try_from(parts)
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        self.component_of(start).len() == self.vertices.len()
    }

    pub fn component_of(&self, start: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }
}

/// Weight of an edge subset together with the subset itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphWeight {
    pub value: Rational,
    pub edges: BTreeSet<EdgeKey>,
}

/// Sums the weights of `edges`; every edge must belong to `graph`.
pub fn subgraph_weight<I>(graph: &WeightedGraph, edges: I) -> Result<SubgraphWeight, GraphError>
where
    I: IntoIterator<Item = EdgeKey>,
{
    let edges: BTreeSet<EdgeKey> = edges.into_iter().collect();
    let mut value = Rational::zero();
    for e in &edges {
        value += graph.weight(*e).ok_or(GraphError::UnknownEdge(*e))?;
    }
    Ok(SubgraphWeight { value, edges })
}

/// True when `edges` form a tree (connected, acyclic) that touches every
/// vertex in `required`. An empty edge set is a tree only when at most one
/// vertex is required.
pub fn is_tree_spanning(edges: &BTreeSet<EdgeKey>, required: &BTreeSet<VertexId>) -> bool {
    let mut nodes: BTreeSet<VertexId> = edges.iter().flat_map(|e| [e.lo, e.hi]).collect();
    if edges.is_empty() {
        return required.len() <= 1;
    }
    if !required.is_subset(&nodes) || edges.len() + 1 != nodes.len() {
        return false;
    }
    let start = *nodes.iter().next().expect("non-empty");
    let mut stack = vec![start];
    nodes.remove(&start);
    while let Some(v) = stack.pop() {
        for e in edges {
            if let Some(u) = e.other(v) {
                if nodes.remove(&u) {
                    stack.push(u);
                }
            }
        }
    }
    nodes.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(id: u32) -> VertexId {
        VertexId(id)
    }

    fn triangle_parts() -> GraphParts {
        GraphParts {
            vertices: vec![v(1), v(2), v(3)],
            edges: vec![(v(1), v(2), int(1)), (v(1), v(3), int(2)), (v(2), v(3), int(3))],
            external: vec![v(1), v(2), v(3)],
        }
    }

    #[test]
    fn triangle_is_valid() {
        assert_eq!(validate(&triangle_parts()), Ok(()));
        let g = WeightedGraph::try_from(triangle_parts()).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_connected());
        assert!(!g.is_tree());
    }

    #[test]
    fn self_loop_rejected() {
        let mut parts = triangle_parts();
        parts.edges = vec![(v(1), v(1), int(1))];
        assert_eq!(validate(&parts), Err(GraphError::SelfLoop(v(1))));
    }

    #[test]
    fn zero_weight_rejected() {
        let mut parts = triangle_parts();
        parts.edges = vec![(v(1), v(2), int(0))];
        assert_eq!(
            validate(&parts),
            Err(GraphError::NonPositiveWeight {
                edge: EdgeKey::new(1, 2),
                weight: int(0)
            })
        );
    }

    #[test]
    fn duplicate_edge_in_either_orientation() {
        let mut parts = triangle_parts();
        parts.edges.push((v(2), v(1), int(7)));
        assert_eq!(
            validate(&parts),
            Err(GraphError::DuplicateEdge(EdgeKey::new(1, 2)))
        );
    }

    #[test]
    fn first_violation_is_reported() {
        let mut parts = triangle_parts();
        parts.edges = vec![(v(1), v(2), int(-1)), (v(3), v(3), int(1))];
        assert!(matches!(
            validate(&parts),
            Err(GraphError::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn external_must_be_vertex() {
        let mut parts = triangle_parts();
        parts.external.push(v(9));
        assert_eq!(validate(&parts), Err(GraphError::ExternalNotVertex(v(9))));
        let mut parts = triangle_parts();
        parts.external = vec![v(1), v(1)];
        assert_eq!(validate(&parts), Err(GraphError::DuplicateExternal(v(1))));
    }

    #[test]
    fn unknown_endpoint_rejected() {
        let mut parts = triangle_parts();
        parts.edges.push((v(3), v(4), int(1)));
        assert!(matches!(
            validate(&parts),
            Err(GraphError::UnknownEndpoint { vertex: VertexId(4), .. })
        ));
    }

    #[test]
    fn subgraph_weights() {
        let g = WeightedGraph::try_from(triangle_parts()).unwrap();
        assert_eq!(subgraph_weight(&g, []).unwrap().value, int(0));
        let two = [EdgeKey::new(1, 2), EdgeKey::new(3, 2)];
        assert_eq!(subgraph_weight(&g, two).unwrap().value, int(4));
        let all: Vec<_> = g.edges().map(|(e, _)| e).collect();
        assert_eq!(subgraph_weight(&g, all).unwrap().value, int(6));
        assert_eq!(
            subgraph_weight(&g, [EdgeKey::new(1, 4)]),
            Err(GraphError::UnknownEdge(EdgeKey::new(1, 4)))
        );
    }

    #[test]
    fn tree_spanning_check() {
        let path: BTreeSet<_> = [EdgeKey::new(1, 2), EdgeKey::new(2, 3)].into();
        let ends: BTreeSet<_> = [v(1), v(3)].into();
        assert!(is_tree_spanning(&path, &ends));
        let cycle: BTreeSet<_> = [EdgeKey::new(1, 2), EdgeKey::new(2, 3), EdgeKey::new(1, 3)].into();
        assert!(!is_tree_spanning(&cycle, &ends));
        let split: BTreeSet<_> = [EdgeKey::new(1, 2), EdgeKey::new(3, 4)].into();
        assert!(!is_tree_spanning(&split, &ends));
        assert!(is_tree_spanning(&BTreeSet::new(), &[v(1)].into()));
    }

    #[test]
    fn relabel_and_scale() {
        let g = WeightedGraph::try_from(triangle_parts()).unwrap();
        let h = g.relabel(|x| VertexId(x.0 + 10)).unwrap();
        assert_eq!(h.external(), &[v(11), v(12), v(13)]);
        assert_eq!(h.weight(EdgeKey::new(12, 13)), Some(&int(3)));
        let s = g.scaled(&int(3)).unwrap();
        assert_eq!(s.total_weight(), int(18));
    }
}
