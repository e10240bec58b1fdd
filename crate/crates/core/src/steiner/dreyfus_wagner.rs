//! Exact Dreyfus–Wagner Steiner tree dynamic program.
//!
//! Costs are compared as `(weight, Reverse(bonus))`, where the bonus of an
//! edge with rank `r` among `m` edges (sorted by `(min, max)` endpoint) is
//! `2^(m-1-r)`. This is an infinitesimal perturbation of the weights that
//! makes the optimum unique and equal to the minimum-weight tree whose
//! sorted edge list is lexicographically smallest. Comparisons are invariant
//! under positive scaling of the weights, so witnesses are too.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::graph::{EdgeKey, VertexId, WeightedGraph};
use crate::rational::Rational;

use super::SteinerResult;

/// Integer amounts the program adds and compares. Weights are scaled to a
/// common denominator first, so no rational arithmetic happens in the loops.
trait Amount: Clone + Ord + Zero + for<'a> Add<&'a Self, Output = Self> {}

impl Amount for i128 {}
impl Amount for u128 {}
impl Amount for BigInt {}
impl Amount for BigUint {}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cost<W, B> {
    weight: W,
    bonus: B,
}

impl<W: Amount, B: Amount> Cost<W, B> {
    fn zero() -> Self {
        Cost {
            weight: W::zero(),
            bonus: B::zero(),
        }
    }
}

impl<W: Amount, B: Amount> Ord for Cost<W, B> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| other.bonus.cmp(&self.bonus))
    }
}

impl<W: Amount, B: Amount> PartialOrd for Cost<W, B> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Amount, B: Amount> Add for &Cost<W, B> {
    type Output = Cost<W, B>;

    fn add(self, rhs: &Cost<W, B>) -> Cost<W, B> {
        Cost {
            weight: self.weight.clone() + &rhs.weight,
            bonus: self.bonus.clone() + &rhs.bonus,
        }
    }
}

fn improves<W: Amount, B: Amount>(candidate: &Cost<W, B>, current: &Option<Cost<W, B>>) -> bool {
    current.as_ref().is_none_or(|c| candidate < c)
}

/// Shortest-path tables under one choice of integer types.
struct Paths<W, B> {
    dist: Vec<Vec<Option<Cost<W, B>>>>,
    next: Vec<Vec<usize>>,
}

impl<W: Amount, B: Amount> Paths<W, B> {
    /// Floyd–Warshall from per-edge costs given as `(a, b, cost)` indices.
    fn new(size: usize, edges: Vec<(usize, usize, Cost<W, B>)>) -> Self {
        let mut dist: Vec<Vec<Option<Cost<W, B>>>> = vec![vec![None; size]; size];
        let mut next = vec![vec![usize::MAX; size]; size];
        for i in 0..size {
            dist[i][i] = Some(Cost::zero());
            next[i][i] = i;
        }
        for (a, b, cost) in edges {
            dist[a][b] = Some(cost.clone());
            dist[b][a] = Some(cost);
            next[a][b] = b;
            next[b][a] = a;
        }
        for k in 0..size {
            for i in 0..size {
                let Some(ik) = dist[i][k].clone() else {
                    continue;
                };
                for j in 0..size {
                    let Some(kj) = &dist[k][j] else {
                        continue;
                    };
                    let candidate = &ik + kj;
                    if improves(&candidate, &dist[i][j]) {
                        dist[i][j] = Some(candidate);
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        Paths { dist, next }
    }
}

enum Tables {
    Small(Paths<i128, u128>),
    Big(Paths<BigInt, BigUint>),
}

/// All-pairs shortest paths of one graph, reusable across terminal sets.
pub(crate) struct Solver<'g> {
    graph: &'g WeightedGraph,
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    edge_keys: Vec<EdgeKey>,
    /// Common denominator of all edge weights.
    scale: BigInt,
    tables: Tables,
}

impl<'g> Solver<'g> {
    pub(crate) fn new(graph: &'g WeightedGraph) -> Self {
        let ids: Vec<VertexId> = graph.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let size = ids.len();
        let edge_keys: Vec<EdgeKey> = graph.edges().map(|(e, _)| e).collect();
        let m = edge_keys.len();

        let scale = graph
            .edges()
            .fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()));
        let scaled: Vec<(usize, usize, BigInt)> = graph
            .edges()
            .map(|(e, w)| {
                let units = w.numer() * (&scale / w.denom());
                (index[&e.lo()], index[&e.hi()], units)
            })
            .collect();
        let total: BigInt = scaled.iter().map(|(_, _, w)| w).sum();
        // A program value is a sum of at most 2k - 1 path costs (k <= 63),
        // each bounded by `total` and by a bonus below 2^m, so these bounds
        // keep both halves well inside 128 bits.
        let fits = m <= 64 && total.bits() <= 100;
        let tables = if fits {
            Tables::Small(Paths::new(
                size,
                scaled
                    .into_iter()
                    .enumerate()
                    .map(|(rank, (a, b, w))| {
                        let cost = Cost {
                            weight: w.to_i128().expect("checked above"),
                            bonus: 1u128 << (m - 1 - rank),
                        };
                        (a, b, cost)
                    })
                    .collect(),
            ))
        } else {
            Tables::Big(Paths::new(
                size,
                scaled
                    .into_iter()
                    .enumerate()
                    .map(|(rank, (a, b, w))| {
                        let cost = Cost {
                            weight: w,
                            bonus: BigUint::one() << (m - 1 - rank),
                        };
                        (a, b, cost)
                    })
                    .collect(),
            ))
        };
        Solver {
            graph,
            ids,
            index,
            edge_keys,
            scale,
            tables,
        }
    }

    fn push_path(&self, next: &[Vec<usize>], from: usize, to: usize, out: &mut BTreeSet<EdgeKey>) {
        let mut at = from;
        while at != to {
            let step = next[at][to];
            out.insert(EdgeKey::new(self.ids[at], self.ids[step]));
            at = step;
        }
    }

    /// Minimum Steiner tree for `terminals`, or `None` if they are not all in
    /// one component. Terminals must be distinct vertices of the graph.
    pub(crate) fn solve(&self, terminals: &[VertexId]) -> Option<SteinerResult> {
        if terminals.len() <= 1 {
            return Some(SteinerResult {
                weight: Rational::zero(),
                witness: BTreeSet::new(),
            });
        }
        let (units, witness) = match &self.tables {
            Tables::Small(paths) => {
                let (w, tree) = self.run(paths, terminals)?;
                (BigInt::from(w), tree)
            }
            Tables::Big(paths) => self.run(paths, terminals)?,
        };
        let weight = Rational::new(units, self.scale.clone());
        debug_assert_eq!(
            witness
                .iter()
                .map(|e| self.graph.weight(*e).expect("witness edge"))
                .fold(Rational::zero(), |acc, w| acc + w),
            weight
        );
        debug_assert!(witness.iter().all(|e| self.edge_keys.binary_search(e).is_ok()));
        Some(SteinerResult { weight, witness })
    }

    fn run<W: Amount, B: Amount>(
        &self,
        paths: &Paths<W, B>,
        terminals: &[VertexId],
    ) -> Option<(W, BTreeSet<EdgeKey>)> {
        let k = terminals.len();
        let size = self.ids.len();
        let term: Vec<usize> = terminals.iter().map(|t| self.index[t]).collect();
        let root = term[k - 1];
        let q = k - 1;
        let full = (1usize << q) - 1;

        let mut dp: Vec<Vec<Option<Cost<W, B>>>> = vec![Vec::new(); 1 << q];
        let mut via: Vec<Vec<usize>> = vec![Vec::new(); 1 << q];
        let mut split: Vec<Vec<usize>> = vec![Vec::new(); 1 << q];
        for (i, &t) in term.iter().take(q).enumerate() {
            dp[1 << i] = paths.dist[t].clone();
        }

        for mask in 1..=full {
            if mask.count_ones() < 2 {
                continue;
            }
            let low = mask & mask.wrapping_neg();
            let mut merged: Vec<Option<Cost<W, B>>> = vec![None; size];
            let mut merged_split = vec![0usize; size];
            for u in 0..size {
                let mut sub = (mask - 1) & mask;
                while sub > 0 {
                    if sub & low != 0 {
                        if let (Some(a), Some(b)) = (&dp[sub][u], &dp[mask ^ sub][u]) {
                            let candidate = a + b;
                            if improves(&candidate, &merged[u]) {
                                merged[u] = Some(candidate);
                                merged_split[u] = sub;
                            }
                        }
                    }
                    sub = (sub - 1) & mask;
                }
            }
            let mut row: Vec<Option<Cost<W, B>>> = vec![None; size];
            let mut row_via = vec![usize::MAX; size];
            for v in 0..size {
                for (u, reach) in merged.iter().enumerate() {
                    if let (Some(a), Some(d)) = (reach, &paths.dist[u][v]) {
                        let candidate = a + d;
                        if improves(&candidate, &row[v]) {
                            row[v] = Some(candidate);
                            row_via[v] = u;
                        }
                    }
                }
            }
            dp[mask] = row;
            via[mask] = row_via;
            split[mask] = merged_split;
        }

        let best = dp[full][root].clone()?;
        let mut witness = BTreeSet::new();
        let mut stack = vec![(full, root)];
        while let Some((mask, v)) = stack.pop() {
            if mask.count_ones() == 1 {
                let i = mask.trailing_zeros() as usize;
                self.push_path(&paths.next, term[i], v, &mut witness);
                continue;
            }
            let u = via[mask][v];
            self.push_path(&paths.next, u, v, &mut witness);
            let sub = split[mask][u];
            stack.push((sub, u));
            stack.push((mask ^ sub, u));
        }
        Some((best.weight, witness))
    }
}
