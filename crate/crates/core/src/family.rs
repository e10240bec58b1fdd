//! Families of `(n-1)`-weights indexed by the omitted label.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a family needs at least 3 values, got {0}")]
    TooSmall(usize),
    #[error("value for label {label} must be positive, got {}", format_rational(value))]
    NonPositive { label: usize, value: Rational },
}

/// The `n` values `D_î`, where `D_î` is the weight of the terminal set
/// `[n] \ {i}`.
///
/// Labels are 1-based in the public accessors; `values()[i]` holds the value
/// for label `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DissimilarityFamily {
    values: Vec<Rational>,
}

impl DissimilarityFamily {
    pub fn new(values: Vec<Rational>) -> Result<Self, FamilyError> {
        if values.len() < 3 {
            return Err(FamilyError::TooSmall(values.len()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(FamilyError::NonPositive {
                label: i + 1,
                value: v.clone(),
            });
        }
        Ok(DissimilarityFamily { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `D_î` for the 1-based `label`. Panics when out of range.
    pub fn hat(&self, label: usize) -> &Rational {
        &self.values[label - 1]
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// `Σ_{j≠i} D_ĵ − (n−2)·D_î` for the 0-based index `i`.
    pub fn slack(&self, i: usize) -> Rational {
        let n = Rational::from_integer((self.n() as i64 - 1).into());
        self.total() - n * &self.values[i]
    }

    pub fn slacks(&self) -> Vec<Rational> {
        let total = self.total();
        let n1 = Rational::from_integer((self.n() as i64 - 1).into());
        self.values.iter().map(|v| &total - &n1 * v).collect()
    }

    pub fn max_value(&self) -> &Rational {
        self.values.iter().max().expect("n >= 3")
    }

    pub fn max_multiplicity(&self) -> usize {
        let max = self.max_value();
        self.values.iter().filter(|v| *v == max).count()
    }

    /// Family whose position `p` holds the value at original 0-based index
    /// `order[p]`. `order` must be a permutation of `0..n`.
    pub fn reordered(&self, order: &[usize]) -> DissimilarityFamily {
        debug_assert!(is_permutation(order, self.n()));
        DissimilarityFamily {
            values: order.iter().map(|&i| self.values[i].clone()).collect(),
        }
    }

    /// Moves the value of label `i` to label `sigma[i]` (both 0-based).
    pub fn permuted(&self, sigma: &[usize]) -> DissimilarityFamily {
        debug_assert!(is_permutation(sigma, self.n()));
        let mut values = self.values.clone();
        for (i, &target) in sigma.iter().enumerate() {
            values[target] = self.values[i].clone();
        }
        DissimilarityFamily { values }
    }

    pub fn scaled(&self, factor: &Rational) -> Result<DissimilarityFamily, FamilyError> {
        DissimilarityFamily::new(self.values.iter().map(|v| v * factor).collect())
    }

    /// Indices sorted by descending value, ties by ascending index.
    pub fn order_descending(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.values[b].cmp(&self.values[a]).then(a.cmp(&b)));
        order
    }

    /// Indices sorted by ascending value, ties by ascending index.
    pub fn order_ascending(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]).then(a.cmp(&b)));
        order
    }

    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        self.values[a].cmp(&self.values[b])
    }
}

impl fmt::Display for DissimilarityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub(crate) fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n
        && order
            .iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

/// Inverse of a 0-based permutation.
pub fn invert(order: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        inverse[i] = p;
    }
    inverse
}
