#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dissim::{DissimilarityFamily, Rational, VertexId, WeightedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn v(id: u32) -> VertexId {
    VertexId(id)
}

/// Positive weight `p/q` with `p` in `1..=20` and `q` in `1..=4`.
pub fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=20i64).into(), rng.gen_range(1..=4i64).into())
}

pub fn random_positive<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=60i64).into(), rng.gen_range(1..=6i64).into())
}

/// Random tree on vertices `1..=size`: vertex `i` attaches to a random
/// earlier vertex.
pub fn random_tree_edges<R: Rng>(rng: &mut R, size: u32) -> Vec<(VertexId, VertexId, Rational)> {
    (2..=size)
        .map(|i| (v(rng.gen_range(1..i)), v(i), random_weight(rng)))
        .collect()
}

/// Connected graph on `1..=size` with up to `max_edges` edges: a random
/// spanning tree plus random extra pairs.
pub fn random_connected_edges<R: Rng>(
    rng: &mut R,
    size: u32,
    max_edges: usize,
) -> Vec<(VertexId, VertexId, Rational)> {
    let mut edges = random_tree_edges(rng, size);
    let mut used: BTreeSet<(u32, u32)> = edges.iter().map(|(a, b, _)| (a.0.min(b.0), a.0.max(b.0))).collect();
    let possible = (size * size.saturating_sub(1) / 2) as usize;
    let target = rng.gen_range(edges.len()..=max_edges.min(possible).max(edges.len()));
    while edges.len() < target {
        let a = rng.gen_range(1..=size);
        let b = rng.gen_range(1..=size);
        if a == b || !used.insert((a.min(b), a.max(b))) {
            continue;
        }
        edges.push((v(a), v(b), random_weight(rng)));
    }
    edges
}

/// Shuffled relabeling of `1..=size` so that external vertices are not
/// always the smallest ids.
pub fn shuffled_ids<R: Rng>(rng: &mut R, size: u32) -> Vec<VertexId> {
    let mut ids: Vec<VertexId> = (1..=size).map(v).collect();
    ids.shuffle(rng);
    ids
}

/// Random connected graph with `size` vertices, `n` of them external.
pub fn random_graph<R: Rng>(rng: &mut R, size: u32, max_edges: usize, n: usize) -> WeightedGraph {
    let edges = random_connected_edges(rng, size, max_edges);
    let external = shuffled_ids(rng, size)[..n].to_vec();
    WeightedGraph::from_edges(external, &[], edges).unwrap()
}

/// Random tree with `size` vertices whose external vertices are `n` random
/// vertices.
pub fn random_tree<R: Rng>(rng: &mut R, size: u32, n: usize) -> WeightedGraph {
    let edges = random_tree_edges(rng, size);
    let external = shuffled_ids(rng, size)[..n].to_vec();
    WeightedGraph::from_edges(external, &[], edges).unwrap()
}

/// Random tree whose leaves are exactly its external vertices. Returns
/// `None` when the tree has fewer than 3 leaves.
pub fn random_leaf_tree<R: Rng>(rng: &mut R, size: u32) -> Option<WeightedGraph> {
    let edges = random_tree_edges(rng, size);
    let tree = WeightedGraph::from_edges(vec![], &(1..=size).map(v).collect::<Vec<_>>(), edges).ok()?;
    let mut leaves: Vec<VertexId> = tree.vertices().filter(|&x| tree.degree(x) == 1).collect();
    if leaves.len() < 3 {
        return None;
    }
    leaves.shuffle(rng);
    tree.with_external(leaves).ok()
}

/// Weight-preserving isomorphism from `a` to `b` that maps external label
/// `i` of `a` to a label `j` of `b` with `fa_î = fb_ĵ`, and internal vertices
/// to internal vertices.
pub fn equivalent(
    a: &WeightedGraph,
    fa: &DissimilarityFamily,
    b: &WeightedGraph,
    fb: &DissimilarityFamily,
) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() || a.n() != b.n() {
        return false;
    }
    let av: Vec<VertexId> = a.vertices().collect();
    let bv: Vec<VertexId> = b.vertices().collect();
    let label_a: BTreeMap<VertexId, usize> =
        a.external().iter().enumerate().map(|(i, &x)| (x, i + 1)).collect();
    let label_b: BTreeMap<VertexId, usize> =
        b.external().iter().enumerate().map(|(i, &x)| (x, i + 1)).collect();
    let compatible = |x: VertexId, y: VertexId| match (label_a.get(&x), label_b.get(&y)) {
        (Some(&i), Some(&j)) => fa.hat(i) == fb.hat(j),
        (None, None) => a.degree(x) == b.degree(y),
        _ => false,
    };
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut taken: BTreeSet<VertexId> = BTreeSet::new();
    extend(0, &av, &bv, a, b, &compatible, &mut map, &mut taken)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    idx: usize,
    av: &[VertexId],
    bv: &[VertexId],
    a: &WeightedGraph,
    b: &WeightedGraph,
    compatible: &dyn Fn(VertexId, VertexId) -> bool,
    map: &mut BTreeMap<VertexId, VertexId>,
    taken: &mut BTreeSet<VertexId>,
) -> bool {
    let Some(&x) = av.get(idx) else {
        return true;
    };
    for &y in bv {
        if taken.contains(&y) || !compatible(x, y) || a.degree(x) != b.degree(y) {
            continue;
        }
        let consistent = map.iter().all(|(&p, &q)| {
            a.weight(dissim::EdgeKey::new(p, x)) == b.weight(dissim::EdgeKey::new(q, y))
        });
        if !consistent {
            continue;
        }
        map.insert(x, y);
        taken.insert(y);
        if extend(idx + 1, av, bv, a, b, compatible, map, taken) {
            return true;
        }
        map.remove(&x);
        taken.remove(&y);
    }
    false
}

pub fn family(values: &[Rational]) -> DissimilarityFamily {
    DissimilarityFamily::new(values.to_vec()).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    sigma
}
