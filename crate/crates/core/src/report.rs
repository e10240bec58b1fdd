//! Verdicts of the realizability checkers and the reasons behind them.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::family::DissimilarityFamily;
use crate::rational::{format_rational, Rational};

/// One failed inequality or counting condition. Labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `(n-2)·D_label > Σ_{j≠label} D_j`.
    NegativeSlack { label: usize, slack: Rational },
    /// More than one of the slack inequalities holds with equality.
    MultipleEqualities { labels: Vec<usize> },
    /// A strict slack inequality holds with equality.
    ZeroSlack { label: usize },
    /// No slack equality and the maximum value is attained only once.
    NoEqualityUniqueMax,
    /// The maximum value is attained more than `limit` times.
    MaxTooFrequent { multiplicity: usize, limit: usize },
    /// The maximum is repeated but some slack inequality is an equality.
    EqualityWithRepeatedMax { labels: Vec<usize>, multiplicity: usize },
    /// `5·D_t > 3·D_k + 3·D_j + 2·D_i`.
    WeightedQuadruple {
        t: usize,
        k: usize,
        j: usize,
        i: usize,
        excess: Rational,
    },
    /// `D_i ≥ D_j + D_k` where strict inequality is required.
    TriangleNotStrict { i: usize, j: usize, k: usize },
    /// `k·D_label > Σ_{j∈subset} D_j`.
    SubsetSum {
        k: usize,
        label: usize,
        subset: Vec<usize>,
    },
    /// The class only exists for a fixed `n`.
    WrongN { n: usize, required: usize },
}

impl Violation {
    /// Short tag naming the condition that failed.
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::NegativeSlack { .. } => "slack-nonnegative",
            Violation::MultipleEqualities { .. } => "at-most-one-equality",
            Violation::ZeroSlack { .. } => "slack-strict",
            Violation::NoEqualityUniqueMax => "equality-or-repeated-max",
            Violation::MaxTooFrequent { .. } => "max-multiplicity",
            Violation::EqualityWithRepeatedMax { .. } => "repeated-max-needs-strict",
            Violation::WeightedQuadruple { .. } => "weighted-quadruple",
            Violation::TriangleNotStrict { .. } => "strict-triangle",
            Violation::SubsetSum { .. } => "subset-sum",
            Violation::WrongN { .. } => "size",
        }
    }
}

fn labels(ls: &[usize]) -> String {
    ls.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeSlack { label, slack } => write!(
                f,
                "(n-2)*D^{label} exceeds the sum of the other values by {}",
                format_rational(&-slack)
            ),
            Violation::MultipleEqualities { labels: ls } => write!(
                f,
                "slack inequality is an equality for more than one label ({})",
                labels(ls)
            ),
            Violation::ZeroSlack { label } => {
                write!(f, "(n-2)*D^{label} equals the sum of the other values; strict inequality required")
            }
            Violation::NoEqualityUniqueMax => write!(
                f,
                "no slack inequality is an equality and the maximum is attained only once"
            ),
            Violation::MaxTooFrequent {
                multiplicity,
                limit,
            } => write!(
                f,
                "maximum attained {multiplicity} times, more than n-2 = {limit}"
            ),
            Violation::EqualityWithRepeatedMax {
                labels: ls,
                multiplicity,
            } => write!(
                f,
                "maximum attained {multiplicity} times but slack inequality is an equality at label(s) {}",
                labels(ls)
            ),
            Violation::WeightedQuadruple { t, k, j, i, excess } => write!(
                f,
                "5*D^{t} exceeds 3*D^{k} + 3*D^{j} + 2*D^{i} by {}",
                format_rational(excess)
            ),
            Violation::TriangleNotStrict { i, j, k } => {
                write!(f, "D^{i} is not strictly less than D^{j} + D^{k}")
            }
            Violation::SubsetSum { k, label, subset } => write!(
                f,
                "{k}*D^{label} exceeds the sum over labels {{{}}}",
                labels(subset)
            ),
            Violation::WrongN { n, required } => {
                write!(f, "class requires n = {required}, got n = {n}")
            }
        }
    }
}

/// Outcome of one checker: passes exactly when there are no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: Verdict) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition() == condition)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        let reasons: Vec<String> = self.violations.iter().map(Violation::to_string).collect();
        write!(f, "fail: {}", reasons.join("; "))
    }
}

/// Exact slack data shared by the tree and graph checkers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// `slacks[i]` belongs to label `i + 1`.
    pub slacks: Vec<Rational>,
    /// 1-based labels whose slack is zero.
    pub equality_labels: Vec<usize>,
    pub max_value: Rational,
    pub max_multiplicity: usize,
}

impl ConditionReport {
    pub fn new(family: &DissimilarityFamily) -> Self {
        let slacks = family.slacks();
        let equality_labels = slacks
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_zero())
            .map(|(i, _)| i + 1)
            .collect();
        ConditionReport {
            slacks,
            equality_labels,
            max_value: family.max_value().clone(),
            max_multiplicity: family.max_multiplicity(),
        }
    }

    pub fn negative_slacks(&self) -> impl Iterator<Item = Violation> + '_ {
        self.slacks
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_negative())
            .map(|(i, s)| Violation::NegativeSlack {
                label: i + 1,
                slack: s.clone(),
            })
    }

    pub fn all_nonnegative(&self) -> bool {
        self.slacks.iter().all(|s| !s.is_negative())
    }

    pub fn all_positive(&self) -> bool {
        self.slacks.iter().all(Signed::is_positive)
    }
}

/// Slack data plus the four-label quantities used when internal vertices
/// are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphConditionReport {
    pub base: ConditionReport,
    /// All slacks strictly positive.
    pub strict: bool,
    /// For `n = 4`: `3·D_k + 3·D_j + 2·D_i − 5·D_t` over ordered distinct
    /// `(t, k, j, i)`. Empty otherwise.
    pub quadruples: Vec<([usize; 4], Rational)>,
    /// For `n = 4`: `D_j + D_k − D_i` for each label `i` and pair `j < k`
    /// of the remaining labels. Empty otherwise.
    pub triangles: Vec<([usize; 3], Rational)>,
}

impl GraphConditionReport {
    pub fn new(family: &DissimilarityFamily) -> Self {
        let base = ConditionReport::new(family);
        let strict = base.all_positive();
        let (quadruples, triangles) = if family.n() == 4 {
            four_label_quantities(family)
        } else {
            (Vec::new(), Vec::new())
        };
        GraphConditionReport {
            base,
            strict,
            quadruples,
            triangles,
        }
    }
}

type FourLabel = (Vec<([usize; 4], Rational)>, Vec<([usize; 3], Rational)>);

fn four_label_quantities(family: &DissimilarityFamily) -> FourLabel {
    let d = |l: usize| family.hat(l);
    let int = |x: i64| Rational::from_integer(x.into());
    let mut quadruples = Vec::with_capacity(24);
    let mut triangles = Vec::with_capacity(12);
    for t in 1..=4 {
        for k in 1..=4 {
            for j in 1..=4 {
                for i in 1..=4 {
                    let distinct = [t, k, j, i];
                    if (0..4).any(|a| (a + 1..4).any(|b| distinct[a] == distinct[b])) {
                        continue;
                    }
                    let value =
                        int(3) * d(k) + int(3) * d(j) + int(2) * d(i) - int(5) * d(t);
                    quadruples.push((distinct, value));
                }
            }
        }
    }
    for i in 1..=4 {
        let rest: Vec<usize> = (1..=4).filter(|&l| l != i).collect();
        for a in 0..3 {
            for b in a + 1..3 {
                let (j, k) = (rest[a], rest[b]);
                triangles.push(([i, j, k], d(j) + d(k) - d(i)));
            }
        }
    }
    (quadruples, triangles)
}
