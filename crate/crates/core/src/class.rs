//! Dispatch over the five realization classes.

use crate::family::DissimilarityFamily;
use crate::graphlike::{check_graph_exact_n, check_n4_internal, realize_graph, GraphMode};
use crate::realization::{RealizationClass, Realization, RealizeError};
use crate::report::{Verdict, Violation};
use crate::tree::{check_tree_exact_n, check_tree_ge_n, check_tree_leaves, realize_tree, TreeMode};

/// Runs the checker for `class`. The four-label class reports a size
/// violation instead of failing when `n ≠ 4`.
pub fn check(class: RealizationClass, family: &DissimilarityFamily) -> Verdict {
    match class {
        RealizationClass::TreeVertices => check_tree_ge_n(family).verdict,
        RealizationClass::TreeLeaves => check_tree_leaves(family).verdict,
        RealizationClass::TreeExact => check_tree_exact_n(family).verdict,
        RealizationClass::GraphExact => check_graph_exact_n(family).verdict,
        RealizationClass::GraphN4Internal => match check_n4_internal(family) {
            Ok(a) => a.verdict,
            Err(_) => Verdict {
                violations: vec![Violation::WrongN {
                    n: family.n(),
                    required: 4,
                }],
            },
        },
    }
}

pub fn realize(
    class: RealizationClass,
    family: &DissimilarityFamily,
) -> Result<Realization, RealizeError> {
    match class {
        RealizationClass::TreeVertices => realize_tree(family, TreeMode::AtLeastNVertices),
        RealizationClass::TreeLeaves => realize_tree(family, TreeMode::AtLeastNLeaves),
        RealizationClass::TreeExact => realize_tree(family, TreeMode::ExactlyNVertices),
        RealizationClass::GraphExact => realize_graph(family, GraphMode::ExactlyNVertices),
        RealizationClass::GraphN4Internal => realize_graph(family, GraphMode::FourWithInternal),
    }
}

/// Verdict of every class, in [`RealizationClass::ALL`] order.
pub fn classify(family: &DissimilarityFamily) -> Vec<(RealizationClass, Verdict)> {
    RealizationClass::ALL
        .into_iter()
        .map(|c| (c, check(c, family)))
        .collect()
}
