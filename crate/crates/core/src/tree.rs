//! Tree realizations of `(n-1)`-weight families.
//!
//! Three settings are decided: trees with `1..n` among the vertices, among
//! the leaves, and as the whole vertex set. Every condition is a sign test on
//! the slacks `Σ_{j≠i} D_ĵ − (n−2)·D_î` plus, for exactly `n` vertices, a
//! count of how often the maximum is attained.

use num_traits::{Signed, Zero};

use crate::family::DissimilarityFamily;
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::{format_rational, Rational};
use crate::realization::{
    external_labels, label_vertex, one_based, unpermute, verify, Construction, RealizationClass,
    Realization, RealizeError,
};
use crate::report::{ConditionReport, Verdict, Violation};

/// Tree setting handled by [`realize_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeMode {
    AtLeastNVertices,
    AtLeastNLeaves,
    ExactlyNVertices,
}

impl TreeMode {
    pub fn class(self) -> RealizationClass {
        match self {
            TreeMode::AtLeastNVertices => RealizationClass::TreeVertices,
            TreeMode::AtLeastNLeaves => RealizationClass::TreeLeaves,
            TreeMode::ExactlyNVertices => RealizationClass::TreeExact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeAssessment {
    pub report: ConditionReport,
    pub verdict: Verdict,
}

fn nonnegative_with_one_equality(report: &ConditionReport) -> Verdict {
    let mut verdict = Verdict::pass();
    for v in report.negative_slacks() {
        verdict.push(v);
    }
    if report.equality_labels.len() > 1 {
        verdict.push(Violation::MultipleEqualities {
            labels: report.equality_labels.clone(),
        });
    }
    verdict
}

/// Trees with at least `n` vertices: all slacks `≥ 0`, at most one `= 0`.
pub fn check_tree_ge_n(family: &DissimilarityFamily) -> TreeAssessment {
    let report = ConditionReport::new(family);
    let verdict = nonnegative_with_one_equality(&report);
    TreeAssessment { report, verdict }
}

/// Trees with `1..n` among the leaves: all slacks strictly positive.
pub fn check_tree_leaves(family: &DissimilarityFamily) -> TreeAssessment {
    let report = ConditionReport::new(family);
    let mut verdict = Verdict::pass();
    for v in report.negative_slacks() {
        verdict.push(v);
    }
    for &label in &report.equality_labels {
        verdict.push(Violation::ZeroSlack { label });
    }
    TreeAssessment { report, verdict }
}

/// Trees on exactly `n` vertices: the at-least-`n`-vertices condition, an
/// equality or a repeated maximum, and a maximum attained at most `n − 2`
/// times.
pub fn check_tree_exact_n(family: &DissimilarityFamily) -> TreeAssessment {
    let report = ConditionReport::new(family);
    let mut verdict = nonnegative_with_one_equality(&report);
    if report.equality_labels.is_empty() && report.max_multiplicity < 2 {
        verdict.push(Violation::NoEqualityUniqueMax);
    }
    let limit = family.n() - 2;
    if report.max_multiplicity > limit {
        verdict.push(Violation::MaxTooFrequent {
            multiplicity: report.max_multiplicity,
            limit,
        });
    }
    TreeAssessment { report, verdict }
}

fn rat(x: usize) -> Rational {
    Rational::from_integer(x.into())
}

/// Star on `1..n` with the new center `n + 1`; leaf `k` gets
/// `slack_k / (n − 1)`. Requires every slack to be strictly positive.
pub fn construct_star_center_new(family: &DissimilarityFamily) -> Result<Realization, RealizeError> {
    let n = family.n();
    let slacks = family.slacks();
    if let Some(i) = slacks.iter().position(|s| !s.is_positive()) {
        return Err(RealizeError::PreconditionViolated(format!(
            "star with a new center needs every slack positive; label {} has slack {}",
            i + 1,
            format_rational(&slacks[i])
        )));
    }
    let center = label_vertex(n + 1);
    let denom = rat(n - 1);
    let edges: Vec<(VertexId, VertexId, Rational)> = slacks
        .iter()
        .enumerate()
        .map(|(i, s)| (center, label_vertex(i + 1), s / &denom))
        .collect();
    let trace = vec![format!(
        "star with center {}: leaf k gets slack_k/{} = ({})",
        center,
        n - 1,
        edges
            .iter()
            .map(|(_, _, w)| format_rational(w))
            .collect::<Vec<_>>()
            .join(", ")
    )];
    let graph = WeightedGraph::from_edges(external_labels(n), &[center], edges)?;
    verify(&graph, family)?;
    Ok(Realization {
        graph,
        permutation: (1..=n).collect(),
        trace,
        construction: Construction::StarNewCenter,
    })
}

/// Star centered at label `r`, which must be the only label with zero
/// slack; every other slack must be positive.
pub fn construct_star_center_r(
    family: &DissimilarityFamily,
    r: usize,
) -> Result<Realization, RealizeError> {
    let n = family.n();
    if !(1..=n).contains(&r) {
        return Err(RealizeError::PreconditionViolated(format!(
            "center label {r} is outside 1..={n}"
        )));
    }
    let slacks = family.slacks();
    if !slacks[r - 1].is_zero() {
        return Err(RealizeError::PreconditionViolated(format!(
            "slack at center label {r} is {}, not zero",
            format_rational(&slacks[r - 1])
        )));
    }
    if let Some(i) = (0..n).find(|&i| i != r - 1 && !slacks[i].is_positive()) {
        return Err(RealizeError::PreconditionViolated(format!(
            "slack at label {} must be positive for a star centered at {r}",
            i + 1
        )));
    }
    let center = label_vertex(r);
    let denom = rat(n - 1);
    let edges: Vec<(VertexId, VertexId, Rational)> = (0..n)
        .filter(|&i| i != r - 1)
        .map(|i| (center, label_vertex(i + 1), &slacks[i] / &denom))
        .collect();
    let trace = vec![format!(
        "slack of label {r} is zero: star centered at {r}, leaf k gets slack_k/{}",
        n - 1
    )];
    let graph = WeightedGraph::from_edges(external_labels(n), &[], edges)?;
    verify(&graph, family)?;
    Ok(Realization {
        graph,
        permutation: (1..=n).collect(),
        trace,
        construction: Construction::StarAtLabel(r),
    })
}

/// Tree on exactly `n` vertices for a family with all slacks positive and a
/// maximum attained `h` times, `2 ≤ h ≤ n − 2`.
///
/// After sorting labels by descending value, positions `1..h` form a path
/// whose edges share `Σ_{j>h} D_ĵ − (n−h−1)·D_1̂` equally; positions
/// `h+1..h+split` hang off position 1 and the rest off position `h`, each
/// with weight `D_1̂ − D_k̂`.
pub fn construct_caterpillar(
    family: &DissimilarityFamily,
    split: usize,
) -> Result<Realization, RealizeError> {
    let n = family.n();
    let report = ConditionReport::new(family);
    if !report.all_positive() {
        return Err(RealizeError::PreconditionViolated(
            "caterpillar needs every slack positive".into(),
        ));
    }
    let h = report.max_multiplicity;
    if h < 2 {
        return Err(RealizeError::PreconditionViolated(
            "caterpillar needs the maximum attained at least twice".into(),
        ));
    }
    if n - h < 2 {
        return Err(RealizeError::PreconditionViolated(format!(
            "caterpillar needs at least two non-maximal labels, got {}",
            n - h
        )));
    }
    if split == 0 || split > n - h - 1 {
        return Err(RealizeError::PreconditionViolated(format!(
            "split {split} must lie in 1..={}",
            n - h - 1
        )));
    }

    let order = family.order_descending();
    let sorted = family.reordered(&order);
    let d = sorted.values();
    let top = &d[0];
    let tail_sum = d[h..].iter().fold(Rational::zero(), |acc, v| acc + v);
    let spine = (tail_sum - rat(n - h - 1) * top) / rat(h - 1);

    let mut edges = Vec::with_capacity(n - 1);
    for p in 1..h {
        edges.push((label_vertex(p), label_vertex(p + 1), spine.clone()));
    }
    for p in h + 1..=n {
        let anchor = if p <= h + split { 1 } else { h };
        edges.push((label_vertex(p), label_vertex(anchor), top - &d[p - 1]));
    }
    let normalized = WeightedGraph::from_edges(external_labels(n), &[], edges)?;
    let graph = unpermute(&normalized, &order)?;
    let trace = vec![
        format!(
            "sorted labels by descending value: {:?}",
            one_based(&order)
        ),
        format!(
            "maximum attained h = {h} times; spine edges {}; split {split}",
            format_rational(&spine)
        ),
    ];
    verify(&graph, family)?;
    Ok(Realization {
        graph,
        permutation: one_based(&order),
        trace,
        construction: Construction::Caterpillar { h, split },
    })
}

/// Checks `family` in the given setting and, if it passes, builds and
/// verifies a witness tree.
pub fn realize_tree(
    family: &DissimilarityFamily,
    mode: TreeMode,
) -> Result<Realization, RealizeError> {
    let assessment = match mode {
        TreeMode::AtLeastNVertices => check_tree_ge_n(family),
        TreeMode::AtLeastNLeaves => check_tree_leaves(family),
        TreeMode::ExactlyNVertices => check_tree_exact_n(family),
    };
    if !assessment.verdict.passed() {
        return Err(RealizeError::NotRealizable {
            class: mode.class(),
            verdict: assessment.verdict,
        });
    }
    let equality = assessment.report.equality_labels.first().copied();
    match (mode, equality) {
        (TreeMode::AtLeastNLeaves, _) => construct_star_center_new(family),
        (_, Some(r)) => construct_star_center_r(family, r),
        (TreeMode::AtLeastNVertices, None) => construct_star_center_new(family),
        (TreeMode::ExactlyNVertices, None) => construct_caterpillar(family, 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKey;
    use crate::rational::{int, ratio};
    use crate::steiner::hat_vector;

    fn fam(values: &[Rational]) -> DissimilarityFamily {
        DissimilarityFamily::new(values.to_vec()).unwrap()
    }

    fn ints(values: &[i64]) -> DissimilarityFamily {
        fam(&values.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    fn w(g: &WeightedGraph, a: u32, b: u32) -> Rational {
        g.weight(EdgeKey::new(a, b)).cloned().unwrap()
    }

    fn one_equality() -> DissimilarityFamily {
        fam(&[int(1), int(1), int(1), ratio(3, 2)])
    }

    #[test]
    fn ge_n_examples() {
        let a = check_tree_ge_n(&ints(&[1, 1, 1, 1]));
        assert!(a.verdict.passed());
        assert!(a.report.equality_labels.is_empty());

        let b = check_tree_ge_n(&one_equality());
        assert!(b.verdict.passed());
        assert_eq!(b.report.equality_labels, vec![4]);

        let c = check_tree_ge_n(&ints(&[5, 1, 1, 1]));
        assert!(!c.verdict.passed());
        assert_eq!(c.report.slacks[0], int(-7));
    }

    #[test]
    fn ge_n_rejects_two_equalities() {
        // Two zero slacks: D_1 = D_2 = S/(n-1).
        let f = ints(&[3, 3, 2, 1]);
        assert_eq!(f.slacks()[..2], [int(0), int(0)]);
        let a = check_tree_ge_n(&f);
        assert!(a.verdict.has("at-most-one-equality"));
    }

    #[test]
    fn leaves_examples() {
        assert!(check_tree_leaves(&ints(&[1, 1, 1, 1])).verdict.passed());
        let a = check_tree_leaves(&one_equality());
        assert_eq!(a.verdict.violations, vec![Violation::ZeroSlack { label: 4 }]);
        assert!(!check_tree_leaves(&ints(&[5, 1, 1, 1])).verdict.passed());
    }

    #[test]
    fn exact_n_examples() {
        let a = check_tree_exact_n(&ints(&[4, 4, 3, 2]));
        assert!(a.verdict.passed());
        assert_eq!(a.report.slacks, vec![int(1), int(1), int(4), int(7)]);

        let b = check_tree_exact_n(&ints(&[1, 1, 1, 1]));
        assert_eq!(
            b.verdict.violations,
            vec![Violation::MaxTooFrequent {
                multiplicity: 4,
                limit: 2
            }]
        );

        assert!(check_tree_exact_n(&one_equality()).verdict.passed());

        assert!(check_tree_exact_n(&ints(&[6, 4, 5, 3])).verdict.passed());
        let c = check_tree_exact_n(&ints(&[5, 4, 4, 3]));
        assert_eq!(c.verdict.violations, vec![Violation::NoEqualityUniqueMax]);
    }

    #[test]
    fn star_new_center_examples() {
        let r = construct_star_center_new(&ints(&[1, 1, 1, 1])).unwrap();
        for leaf in 1..=4 {
            assert_eq!(w(&r.graph, leaf, 5), ratio(1, 3));
        }
        assert_eq!(r.internal_vertices(), vec![VertexId(5)]);

        let r = construct_star_center_new(&ints(&[2, 2, 2])).unwrap();
        for leaf in 1..=3 {
            assert_eq!(w(&r.graph, leaf, 4), int(1));
        }
        assert_eq!(hat_vector(&r.graph).unwrap(), ints(&[2, 2, 2]));
    }

    #[test]
    fn star_new_center_reproduces_every_strict_family() {
        let f = ints(&[4, 4, 3, 2]);
        let r = construct_star_center_new(&f).unwrap();
        let weights: Vec<_> = (1..=4).map(|l| w(&r.graph, l, 5)).collect();
        assert_eq!(weights, vec![ratio(1, 3), ratio(1, 3), ratio(4, 3), ratio(7, 3)]);
        assert_eq!(hat_vector(&r.graph).unwrap(), f);
    }

    #[test]
    fn star_new_center_refuses_equalities() {
        assert!(matches!(
            construct_star_center_new(&one_equality()),
            Err(RealizeError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn star_at_label_examples() {
        let r = construct_star_center_r(&one_equality(), 4).unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
        for leaf in 1..=3 {
            assert_eq!(w(&r.graph, leaf, 4), ratio(1, 2));
        }
        assert_eq!(hat_vector(&r.graph).unwrap(), one_equality());

        let r = construct_star_center_r(&ints(&[2, 2, 2, 3]), 4).unwrap();
        for leaf in 1..=3 {
            assert_eq!(w(&r.graph, leaf, 4), int(1));
        }

        assert!(matches!(
            construct_star_center_r(&ints(&[1, 1, 1, 1]), 1),
            Err(RealizeError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn caterpillar_examples() {
        let f = ints(&[4, 4, 3, 2]);
        let r = construct_caterpillar(&f, 1).unwrap();
        assert_eq!(w(&r.graph, 1, 2), int(1));
        assert_eq!(w(&r.graph, 1, 3), int(1));
        assert_eq!(w(&r.graph, 2, 4), int(2));
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(hat_vector(&r.graph).unwrap(), f);

        let f = ints(&[6, 6, 6, 5, 4]);
        let r = construct_caterpillar(&f, 1).unwrap();
        assert_eq!(w(&r.graph, 1, 2), ratio(3, 2));
        assert_eq!(w(&r.graph, 2, 3), ratio(3, 2));
        assert_eq!(w(&r.graph, 1, 4), int(1));
        assert_eq!(w(&r.graph, 3, 5), int(2));
        assert_eq!(hat_vector(&r.graph).unwrap(), f);

        assert!(matches!(
            construct_caterpillar(&ints(&[1, 1, 1, 1]), 1),
            Err(RealizeError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn caterpillar_split_range() {
        let f = ints(&[10, 10, 9, 9, 9, 8]);
        for split in 1..=3 {
            let r = construct_caterpillar(&f, split).unwrap();
            assert_eq!(hat_vector(&r.graph).unwrap(), f);
        }
        assert!(construct_caterpillar(&f, 0).is_err());
        assert!(construct_caterpillar(&f, 4).is_err());
    }

    #[test]
    fn caterpillar_unpermutes_labels() {
        let f = ints(&[2, 4, 3, 4]);
        let r = construct_caterpillar(&f, 1).unwrap();
        assert_eq!(r.permutation, vec![2, 4, 3, 1]);
        assert_eq!(hat_vector(&r.graph).unwrap(), f);
        assert_eq!(r.graph.external(), external_labels(4).as_slice());
    }

    #[test]
    fn dispatcher_routes_by_case() {
        let r = realize_tree(&one_equality(), TreeMode::ExactlyNVertices).unwrap();
        assert_eq!(r.construction, Construction::StarAtLabel(4));
        let r = realize_tree(&ints(&[4, 4, 3, 2]), TreeMode::ExactlyNVertices).unwrap();
        assert!(matches!(r.construction, Construction::Caterpillar { h: 2, split: 1 }));
        let r = realize_tree(&ints(&[4, 4, 3, 2]), TreeMode::AtLeastNVertices).unwrap();
        assert_eq!(r.construction, Construction::StarNewCenter);
        let r = realize_tree(&one_equality(), TreeMode::AtLeastNVertices).unwrap();
        assert_eq!(r.construction, Construction::StarAtLabel(4));
        for mode in [
            TreeMode::AtLeastNVertices,
            TreeMode::AtLeastNLeaves,
            TreeMode::ExactlyNVertices,
        ] {
            assert!(matches!(
                realize_tree(&ints(&[5, 1, 1, 1]), mode),
                Err(RealizeError::NotRealizable { .. })
            ));
        }
    }

    #[test]
    fn three_labels_with_equality_give_a_path() {
        let f = ints(&[2, 1, 1]);
        let r = realize_tree(&f, TreeMode::ExactlyNVertices).unwrap();
        assert_eq!(r.construction, Construction::StarAtLabel(1));
        assert!(r.graph.is_tree());
        assert_eq!(w(&r.graph, 1, 2), int(1));
    }
}
