//! k-weights: minimum weight of a connected subgraph containing a terminal set.
//!
//! [`steiner_weight`] runs an exact Dreyfus–Wagner dynamic program;
//! [`steiner_brute`] is an independent exhaustive oracle for small graphs.

mod brute;
mod dreyfus_wagner;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::family::DissimilarityFamily;
use crate::graph::{EdgeKey, VertexId, WeightedGraph};
use crate::rational::Rational;

/// Environment variable overriding [`SteinerConfig::terminal_cap`].
pub const TERMINAL_CAP_ENV: &str = "DISSIM_TERMINAL_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinerError {
    #[error("terminal set is empty")]
    EmptyTerminals,
    #[error("terminal {0} is not a vertex of the graph")]
    UnknownTerminal(VertexId),
    #[error("no connected subgraph contains all of the terminals {0:?}")]
    Disconnected(Vec<VertexId>),
    #[error("{count} terminals exceed the cap of {cap}")]
    TooManyTerminals { count: usize, cap: usize },
    #[error("{vertices} vertices exceed the brute-force cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("k = {k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("hat vectors need at least 3 external vertices, got {0}")]
    TooFewExternal(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteinerConfig {
    /// Largest terminal set the dynamic program accepts.
    pub terminal_cap: usize,
    /// Largest vertex count the brute-force oracle accepts (at most 63).
    pub brute_vertex_cap: usize,
}

impl Default for SteinerConfig {
    fn default() -> Self {
        SteinerConfig {
            terminal_cap: 20,
            brute_vertex_cap: 16,
        }
    }
}

impl SteinerConfig {
    /// Default configuration with `DISSIM_TERMINAL_CAP` applied when it is
    /// set to a positive integer.
    pub fn from_env() -> Self {
        let mut config = SteinerConfig::default();
        if let Some(cap) = std::env::var(TERMINAL_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
        {
            config.terminal_cap = cap;
        }
        config
    }
}

/// Non-empty set of distinct vertices of one graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TerminalSet(BTreeSet<VertexId>);

impl TerminalSet {
    pub fn new<I>(graph: &WeightedGraph, terminals: I) -> Result<Self, SteinerError>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let set: BTreeSet<VertexId> = terminals.into_iter().collect();
        if set.is_empty() {
            return Err(SteinerError::EmptyTerminals);
        }
        if let Some(&v) = set.iter().find(|v| !graph.contains_vertex(**v)) {
            return Err(SteinerError::UnknownTerminal(v));
        }
        Ok(TerminalSet(set))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<VertexId> {
        &self.0
    }

    fn to_vec(&self) -> Vec<VertexId> {
        self.0.iter().copied().collect()
    }
}

/// Minimum weight for a terminal set plus one tree attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerResult {
    pub weight: Rational,
    pub witness: BTreeSet<EdgeKey>,
}

/// The family of k-weights of a graph over its external labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissimilarityVector {
    pub n: usize,
    pub k: usize,
    /// Keys are sorted 1-based label subsets.
    pub entries: BTreeMap<Vec<usize>, Rational>,
}

/// Steiner computations under a fixed [`SteinerConfig`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Steiner {
    config: SteinerConfig,
}

impl Steiner {
    pub fn new(config: SteinerConfig) -> Self {
        Steiner { config }
    }

    pub fn config(&self) -> SteinerConfig {
        self.config
    }

    fn check_connected(graph: &WeightedGraph, terminals: &TerminalSet) -> Result<(), SteinerError> {
        let first = terminals.iter().next().ok_or(SteinerError::EmptyTerminals)?;
        let component = graph.component_of(first);
        if terminals.iter().all(|t| component.contains(&t)) {
            Ok(())
        } else {
            Err(SteinerError::Disconnected(terminals.to_vec()))
        }
    }

    fn check_cap(&self, terminals: &TerminalSet) -> Result<(), SteinerError> {
        if terminals.len() > self.config.terminal_cap {
            return Err(SteinerError::TooManyTerminals {
                count: terminals.len(),
                cap: self.config.terminal_cap,
            });
        }
        Ok(())
    }

    pub fn weight(
        &self,
        graph: &WeightedGraph,
        terminals: &TerminalSet,
    ) -> Result<SteinerResult, SteinerError> {
        self.check_cap(terminals)?;
        Self::check_connected(graph, terminals)?;
        dreyfus_wagner::Solver::new(graph)
            .solve(&terminals.to_vec())
            .ok_or_else(|| SteinerError::Disconnected(terminals.to_vec()))
    }

    pub fn brute(
        &self,
        graph: &WeightedGraph,
        terminals: &TerminalSet,
    ) -> Result<SteinerResult, SteinerError> {
        let cap = self.config.brute_vertex_cap.min(63);
        if graph.vertex_count() > cap {
            return Err(SteinerError::TooLarge {
                vertices: graph.vertex_count(),
                cap,
            });
        }
        Self::check_connected(graph, terminals)?;
        brute::solve(graph, &terminals.to_vec())
            .ok_or_else(|| SteinerError::Disconnected(terminals.to_vec()))
    }

    pub fn dissimilarity_vector(
        &self,
        graph: &WeightedGraph,
        k: usize,
    ) -> Result<DissimilarityVector, SteinerError> {
        let n = graph.n();
        if k == 0 || k > n {
            return Err(SteinerError::InvalidK { k, n });
        }
        let solver = dreyfus_wagner::Solver::new(graph);
        let mut entries = BTreeMap::new();
        for subset in label_subsets(n, k) {
            let terminals = TerminalSet::new(
                graph,
                subset.iter().map(|&l| graph.external()[l - 1]),
            )?;
            self.check_cap(&terminals)?;
            Self::check_connected(graph, &terminals)?;
            let result = solver
                .solve(&terminals.to_vec())
                .ok_or_else(|| SteinerError::Disconnected(terminals.to_vec()))?;
            entries.insert(subset, result.weight);
        }
        Ok(DissimilarityVector { n, k, entries })
    }

    pub fn hat_vector(&self, graph: &WeightedGraph) -> Result<DissimilarityFamily, SteinerError> {
        let n = graph.n();
        if n < 3 {
            return Err(SteinerError::TooFewExternal(n));
        }
        let vector = self.dissimilarity_vector(graph, n - 1)?;
        Ok(hat_from_vector(&vector))
    }
}

/// Re-indexes an `(n-1)`-dissimilarity vector by the omitted label.
fn hat_from_vector(vector: &DissimilarityVector) -> DissimilarityFamily {
    let n = vector.n;
    let values = (1..=n)
        .map(|omit| {
            let key: Vec<usize> = (1..=n).filter(|&l| l != omit).collect();
            vector.entries[&key].clone()
        })
        .collect();
    DissimilarityFamily::new(values).expect("weights of two or more distinct vertices are positive")
}

/// All k-subsets of `1..=n` in lexicographic order.
pub fn label_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for label in start..=n {
            if n - label + 1 < k - current.len() {
                break;
            }
            current.push(label);
            extend(label + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn steiner_weight(
    graph: &WeightedGraph,
    terminals: &TerminalSet,
) -> Result<SteinerResult, SteinerError> {
    Steiner::default().weight(graph, terminals)
}

pub fn steiner_brute(
    graph: &WeightedGraph,
    terminals: &TerminalSet,
) -> Result<SteinerResult, SteinerError> {
    Steiner::default().brute(graph, terminals)
}

pub fn dissimilarity_vector(
    graph: &WeightedGraph,
    k: usize,
) -> Result<DissimilarityVector, SteinerError> {
    Steiner::default().dissimilarity_vector(graph, k)
}

pub fn hat_vector(graph: &WeightedGraph) -> Result<DissimilarityFamily, SteinerError> {
    Steiner::default().hat_vector(graph)
}
