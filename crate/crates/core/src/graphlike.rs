//! Graph realizations of `(n-1)`-weight families: graphs on exactly the
//! vertices `1..n`, and graphs on `1..4` plus internal vertices.

use num_traits::{Signed, Zero};

use crate::family::DissimilarityFamily;
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::{format_rational, Rational};
use crate::realization::{
    external_labels, label_vertex, one_based, unpermute, verify, Construction, InductionLevel,
    RealizationClass, Realization, RealizeError,
};
use crate::report::{GraphConditionReport, Verdict, Violation};
use crate::steiner::label_subsets;

/// Graph setting handled by [`realize_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    ExactlyNVertices,
    FourWithInternal,
}

impl GraphMode {
    pub fn class(self) -> RealizationClass {
        match self {
            GraphMode::ExactlyNVertices => RealizationClass::GraphExact,
            GraphMode::FourWithInternal => RealizationClass::GraphN4Internal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAssessment {
    pub report: GraphConditionReport,
    pub verdict: Verdict,
}

fn rat(x: usize) -> Rational {
    Rational::from_integer(x.into())
}

/// Graphs on exactly `n` vertices: every slack `≥ 0`, and every slack `> 0`
/// when the maximum is attained more than once.
pub fn check_graph_exact_n(family: &DissimilarityFamily) -> GraphAssessment {
    let report = GraphConditionReport::new(family);
    let mut verdict = Verdict::pass();
    for v in report.base.negative_slacks() {
        verdict.push(v);
    }
    if report.base.max_multiplicity >= 2 && !report.base.equality_labels.is_empty() {
        verdict.push(Violation::EqualityWithRepeatedMax {
            labels: report.base.equality_labels.clone(),
            multiplicity: report.base.max_multiplicity,
        });
    }
    GraphAssessment { report, verdict }
}

/// `k·D_î ≤ Σ_{j∈J} D_ĵ` for every label `i` and every `(k+1)`-subset `J`
/// of the other labels. Follows from non-negative slacks; used as a
/// property, not a gate.
pub fn implied_inequalities(family: &DissimilarityFamily, k: usize) -> Result<Verdict, RealizeError> {
    let n = family.n();
    if k == 0 || k > n - 2 {
        return Err(RealizeError::InvalidK { k, max: n - 2 });
    }
    let factor = rat(k);
    let mut verdict = Verdict::pass();
    for label in 1..=n {
        let lhs = &factor * family.hat(label);
        let others: Vec<usize> = (1..=n).filter(|&l| l != label).collect();
        for pick in label_subsets(n - 1, k + 1) {
            let subset: Vec<usize> = pick.iter().map(|&p| others[p - 1]).collect();
            let rhs = subset
                .iter()
                .fold(Rational::zero(), |acc, &l| acc + family.hat(l));
            if lhs > rhs {
                verdict.push(Violation::SubsetSum { k, label, subset });
            }
        }
    }
    Ok(verdict)
}

/// Graphs on `1..4` with internal vertices allowed:
/// `5·D_t̂ ≤ 3·D_k̂ + 3·D_ĵ + 2·D_î` for distinct `t, k, j, i`, and strict
/// triangle inequalities.
pub fn check_n4_internal(family: &DissimilarityFamily) -> Result<GraphAssessment, RealizeError> {
    if family.n() != 4 {
        return Err(RealizeError::WrongN {
            n: family.n(),
            required: 4,
        });
    }
    let report = GraphConditionReport::new(family);
    let mut verdict = Verdict::pass();
    for ([t, k, j, i], value) in &report.quadruples {
        // k and j play symmetric roles; report each violation once.
        if k < j && value.is_negative() {
            verdict.push(Violation::WeightedQuadruple {
                t: *t,
                k: *k,
                j: *j,
                i: *i,
                excess: -value,
            });
        }
    }
    for ([i, j, k], value) in &report.triangles {
        if !value.is_positive() {
            verdict.push(Violation::TriangleNotStrict {
                i: *i,
                j: *j,
                k: *k,
            });
        }
    }
    Ok(GraphAssessment { report, verdict })
}

/// Triangle on `1, 2, 3` with `w(e(i,j)) = D_k̂` for `{i, j, k} = {1, 2, 3}`.
pub fn construct_triangle(family: &DissimilarityFamily) -> Result<Realization, RealizeError> {
    if family.n() != 3 {
        return Err(RealizeError::WrongN {
            n: family.n(),
            required: 3,
        });
    }
    let assessment = check_graph_exact_n(family);
    if !assessment.verdict.passed() {
        return Err(RealizeError::PreconditionViolated(format!(
            "triangle needs the exact-n graph condition: {}",
            assessment.verdict
        )));
    }
    let v = label_vertex;
    let d = |l| family.hat(l).clone();
    let edges = [(v(1), v(2), d(3)), (v(1), v(3), d(2)), (v(2), v(3), d(1))];
    let graph = WeightedGraph::from_edges(external_labels(3), &[], edges)?;
    verify(&graph, family)?;
    Ok(Realization {
        graph,
        permutation: vec![1, 2, 3],
        trace: vec!["triangle: edge opposite label i gets D^i".into()],
        construction: Construction::Triangle,
    })
}

/// `n ≥ 4`, maximum attained `k ≥ 2` times, every slack positive.
///
/// After sorting labels by descending value, positions `1..k` form a
/// complete graph with edge weight `a = (Σ_{j>k} D_ĵ − (n−k−1)·D_1̂)/(n−2)`
/// and every later position `i` is joined to positions 1 and `k` with weight
/// `x_i = (Σ_{j>k} D_ĵ + (k−1)·D_1̂)/(n−2) − D_î`. When every value is equal
/// (`k = n`) the tail is empty and the graph is the complete graph with
/// `a = D/(n−2)`.
pub fn construct_repeated_max(family: &DissimilarityFamily) -> Result<Realization, RealizeError> {
    let n = family.n();
    if n < 4 {
        return Err(RealizeError::PreconditionViolated(format!(
            "repeated-maximum construction needs n >= 4, got {n}"
        )));
    }
    let report = GraphConditionReport::new(family);
    let k = report.base.max_multiplicity;
    if k < 2 {
        return Err(RealizeError::PreconditionViolated(
            "maximum is attained only once".into(),
        ));
    }
    if !report.strict {
        return Err(RealizeError::PreconditionViolated(
            "repeated maximum needs every slack positive".into(),
        ));
    }

    let order = family.order_descending();
    let sorted = family.reordered(&order);
    let d = sorted.values();
    let top = &d[0];
    let tail_sum = d[k..].iter().fold(Rational::zero(), |acc, v| acc + v);
    let denom = rat(n - 2);
    // n - k - 1 is -1 when k = n.
    let a = (&tail_sum + top - rat(n - k) * top) / &denom;
    let base_x = (&tail_sum + rat(k - 1) * top) / &denom;
    let x: Vec<Rational> = d[k..].iter().map(|v| &base_x - v).collect();
    if let Some(bad) = x.iter().find(|xi| **xi < a) {
        return Err(RealizeError::Internal(format!(
            "pendant weight {} below clique weight {}",
            format_rational(bad),
            format_rational(&a)
        )));
    }

    let mut edges = Vec::new();
    for p in 1..=k {
        for q in p + 1..=k {
            edges.push((label_vertex(p), label_vertex(q), a.clone()));
        }
    }
    for (offset, xi) in x.iter().enumerate() {
        let p = label_vertex(k + 1 + offset);
        edges.push((p, label_vertex(1), xi.clone()));
        edges.push((p, label_vertex(k), xi.clone()));
    }
    let normalized = WeightedGraph::from_edges(external_labels(n), &[], edges)?;
    let graph = unpermute(&normalized, &order)?;
    let trace = vec![
        format!("sorted labels by descending value: {:?}", one_based(&order)),
        format!(
            "maximum attained k = {k} times; clique weight a = {}; pendant weights ({})",
            format_rational(&a),
            x.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        ),
    ];
    verify(&graph, family)?;
    Ok(Realization {
        graph,
        permutation: one_based(&order),
        trace,
        construction: Construction::RepeatedMax { k },
    })
}

/// Unique-maximum order, canonical in the values. The maximum goes first.
/// For `n = 4` the others are placed so that `D_3̂ ≥ D_2̂ ≥ D_4̂`; for larger
/// `n` they follow by ascending value, so the last position holds a largest
/// remaining value. Ties go by ascending index.
fn unique_max_order(family: &DissimilarityFamily) -> Vec<usize> {
    let descending = family.order_descending();
    let top = descending[0];
    if family.n() == 4 {
        return vec![top, descending[2], descending[1], descending[3]];
    }
    let ascending = family.order_ascending();
    std::iter::once(top)
        .chain(ascending.into_iter().filter(|&i| i != top))
        .collect()
}

/// Builds a graph on vertices `1..n` (in the labels of `family`) and records
/// one [`InductionLevel`] per pendant step.
fn build_unique_max(
    family: &DissimilarityFamily,
    levels: &mut Vec<InductionLevel>,
    trace: &mut Vec<String>,
) -> Result<WeightedGraph, RealizeError> {
    let n = family.n();
    let order = unique_max_order(family);
    let sorted = family.reordered(&order);
    let d = sorted.values();

    let normalized = if n == 4 {
        // Positions satisfy D1 > D3 >= D2 >= D4.
        let w23 = &d[0] - &d[1];
        let w13 = &d[1] + &d[3] - &d[0];
        let w14 = &d[0] - &d[3];
        let w12 = &d[2] + &d[3] - &d[0];
        trace.push(format!(
            "base on {}: w(1,2) = {}, w(1,3) = {}, w(1,4) = {}, w(2,3) = {} in sorted positions {:?}",
            sorted,
            format_rational(&w12),
            format_rational(&w13),
            format_rational(&w14),
            format_rational(&w23),
            one_based(&order)
        ));
        let v = label_vertex;
        WeightedGraph::from_edges(
            external_labels(4),
            &[],
            [
                (v(1), v(2), w12),
                (v(1), v(3), w13),
                (v(1), v(4), w14),
                (v(2), v(3), w23),
            ],
        )?
    } else {
        let x = &d[0] - &d[n - 1];
        let mut reduced_values = Vec::with_capacity(n - 1);
        reduced_values.push(d[n - 1].clone());
        reduced_values.extend(d[1..n - 1].iter().map(|v| v - &x));
        let reduced = DissimilarityFamily::new(reduced_values).map_err(|e| {
            RealizeError::Internal(format!("reduced family is not positive: {e}"))
        })?;
        if !x.is_positive() || reduced.max_multiplicity() != 1 || reduced.values()[0] != *reduced.max_value() {
            return Err(RealizeError::Internal(format!(
                "reduced family {reduced} lost its unique maximum at label 1"
            )));
        }
        trace.push(format!(
            "n = {n}: sorted positions {:?}, pendant x = {}, reduced family {}",
            one_based(&order),
            format_rational(&x),
            reduced
        ));
        levels.push(InductionLevel {
            n,
            permutation: one_based(&order),
            x: x.clone(),
            reduced: reduced.clone(),
        });
        let smaller = build_unique_max(&reduced, levels, trace)?;
        let mut parts = smaller.to_parts();
        let pendant = label_vertex(n);
        parts.vertices.push(pendant);
        parts.edges.push((label_vertex(1), pendant, x));
        parts.external.push(pendant);
        WeightedGraph::try_from(parts)?
    };
    Ok(unpermute(&normalized, &order)?)
}

/// `n ≥ 4`, non-negative slacks and a unique maximum: a four-vertex base
/// graph extended one pendant edge at a time.
pub fn construct_unique_max(family: &DissimilarityFamily) -> Result<Realization, RealizeError> {
    let n = family.n();
    if n < 4 {
        return Err(RealizeError::PreconditionViolated(format!(
            "unique-maximum construction needs n >= 4, got {n}"
        )));
    }
    let report = GraphConditionReport::new(family);
    if !report.base.all_nonnegative() {
        return Err(RealizeError::PreconditionViolated(
            "unique-maximum construction needs every slack non-negative".into(),
        ));
    }
    if report.base.max_multiplicity != 1 {
        return Err(RealizeError::PreconditionViolated(format!(
            "maximum is attained {} times, not once",
            report.base.max_multiplicity
        )));
    }
    let mut levels = Vec::new();
    let mut trace = Vec::new();
    let graph = build_unique_max(family, &mut levels, &mut trace)?;
    verify(&graph, family)?;
    Ok(Realization {
        graph,
        permutation: one_based(&unique_max_order(family)),
        trace,
        construction: Construction::UniqueMax { levels },
    })
}

/// Seven-vertex graph for `n = 4`: internal vertices `P_1, P_2, P_3` get
/// ids 5, 6, 7. With labels sorted so that `D_4̂ ≥ D_3̂ ≥ D_2̂ ≥ D_1̂`, vertex 4
/// joins each `P_i` with weight `h = (D_1̂ + D_2̂ − D_4̂)/2`, and label
/// `i ∈ {1,2,3}` joins `P_j` (`j ≠ i`) with weight `r_i`.
pub fn construct_n4_internal(family: &DissimilarityFamily) -> Result<Realization, RealizeError> {
    let assessment = check_n4_internal(family)?;
    if !assessment.verdict.passed() {
        return Err(RealizeError::PreconditionViolated(format!(
            "internal-vertex construction needs the four-label conditions: {}",
            assessment.verdict
        )));
    }
    let order = family.order_ascending();
    let sorted = family.reordered(&order);
    let d = sorted.values();
    let (d1, d2, d3, d4) = (&d[0], &d[1], &d[2], &d[3]);
    let two = rat(2);
    let three = rat(3);
    let four = rat(4);
    let h = (d1 + d2 - d4) / &two;
    let r1 = (d4 + d2 + &two * d3 - &three * d1) / &four;
    let r2 = (d4 + d1 + &two * d3 - &three * d2) / &four;
    let r3 = (d4 + d1 + d2 - &two * d3) / &four;
    let r = [r1, r2, r3];
    if !h.is_positive() || r.iter().any(|x| !x.is_positive()) {
        return Err(RealizeError::Internal(format!(
            "non-positive weight: h = {}, r = ({}, {}, {})",
            format_rational(&h),
            format_rational(&r[0]),
            format_rational(&r[1]),
            format_rational(&r[2])
        )));
    }
    if &two * &h < r[2] {
        return Err(RealizeError::Internal(format!(
            "2h = {} is below r3 = {}",
            format_rational(&(&two * &h)),
            format_rational(&r[2])
        )));
    }

    let hubs = [VertexId(5), VertexId(6), VertexId(7)];
    let mut edges = Vec::with_capacity(9);
    for hub in hubs {
        edges.push((label_vertex(4), hub, h.clone()));
    }
    for (i, ri) in r.iter().enumerate() {
        for (j, hub) in hubs.iter().enumerate() {
            if i != j {
                edges.push((label_vertex(i + 1), *hub, ri.clone()));
            }
        }
    }
    let normalized = WeightedGraph::from_edges(external_labels(4), &hubs, edges)?;
    let graph = unpermute(&normalized, &order)?;
    let trace = vec![
        format!("sorted labels by ascending value: {:?}", one_based(&order)),
        format!(
            "h = {}, r1 = {}, r2 = {}, r3 = {}; internal vertices 5, 6, 7",
            format_rational(&h),
            format_rational(&r[0]),
            format_rational(&r[1]),
            format_rational(&r[2])
        ),
    ];
    verify(&graph, family)?;
    Ok(Realization {
        graph,
        permutation: one_based(&order),
        trace,
        construction: Construction::FourWithInternal,
    })
}

/// Checks `family` in the given setting and, if it passes, builds and
/// verifies a witness graph.
pub fn realize_graph(
    family: &DissimilarityFamily,
    mode: GraphMode,
) -> Result<Realization, RealizeError> {
    let assessment = match mode {
        GraphMode::ExactlyNVertices => check_graph_exact_n(family),
        GraphMode::FourWithInternal => check_n4_internal(family)?,
    };
    if !assessment.verdict.passed() {
        return Err(RealizeError::NotRealizable {
            class: mode.class(),
            verdict: assessment.verdict,
        });
    }
    match mode {
        GraphMode::FourWithInternal => construct_n4_internal(family),
        GraphMode::ExactlyNVertices if family.n() == 3 => construct_triangle(family),
        GraphMode::ExactlyNVertices if assessment.report.base.max_multiplicity >= 2 => {
            construct_repeated_max(family)
        }
        GraphMode::ExactlyNVertices => construct_unique_max(family),
    }
}
