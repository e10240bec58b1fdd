//! Brute-force Steiner oracle: every vertex superset of the terminals, each
//! scored by the minimum spanning tree of its induced subgraph.
//!
//! Shares nothing with the dynamic program beyond the graph type.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::graph::{EdgeKey, VertexId, WeightedGraph};
use crate::rational::Rational;

use super::SteinerResult;

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Kruskal on the subgraph induced by `members`; `None` if it is disconnected.
fn induced_mst(
    edges: &[(EdgeKey, Rational, usize, usize)],
    members: u64,
    size: usize,
) -> Option<(Rational, Vec<EdgeKey>)> {
    let count = members.count_ones() as usize;
    let mut sets = DisjointSets::new(size);
    let mut total = Rational::zero();
    let mut chosen = Vec::with_capacity(count.saturating_sub(1));
    for (key, w, a, b) in edges {
        if members >> a & 1 == 1 && members >> b & 1 == 1 && sets.union(*a, *b) {
            total += w;
            chosen.push(*key);
            if chosen.len() + 1 == count {
                break;
            }
        }
    }
    (chosen.len() + 1 == count).then_some((total, chosen))
}

pub(crate) fn solve(graph: &WeightedGraph, terminals: &[VertexId]) -> Option<SteinerResult> {
    let ids: Vec<VertexId> = graph.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges: Vec<(EdgeKey, Rational, usize, usize)> = graph
        .edges()
        .map(|(e, w)| (e, w.clone(), index[&e.lo()], index[&e.hi()]))
        .collect();
    edges.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));

    let required: u64 = terminals.iter().fold(0, |acc, t| acc | 1 << index[t]);
    let optional: Vec<usize> = (0..ids.len()).filter(|i| required >> i & 1 == 0).collect();

    let mut best: Option<(Rational, Vec<EdgeKey>)> = None;
    for choice in 0u64..(1 << optional.len()) {
        let mut members = required;
        for (bit, &v) in optional.iter().enumerate() {
            if choice >> bit & 1 == 1 {
                members |= 1 << v;
            }
        }
        if let Some((w, tree)) = induced_mst(&edges, members, ids.len()) {
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                best = Some((w, tree));
            }
        }
    }
    best.map(|(weight, tree)| SteinerResult {
        weight,
        witness: tree.into_iter().collect::<BTreeSet<_>>(),
    })
}
