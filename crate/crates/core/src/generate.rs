//! Seeded random families for a chosen class, by rejection sampling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::class::{check, classify};
use crate::family::DissimilarityFamily;
use crate::rational::Rational;
use crate::realization::RealizationClass;

/// Values are `numerator / DENOMINATOR` with numerators in `1..=MAX_NUMERATOR`.
pub const DENOMINATOR: i64 = 4;
pub const MAX_NUMERATOR: i64 = 1000;
pub const MAX_ATTEMPTS: usize = 10_000;

/// What a generated family must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Passes the checker of this class.
    Class(RealizationClass),
    /// Fails every checker.
    None,
}

impl Target {
    fn accepts(self, family: &DissimilarityFamily) -> bool {
        match self {
            Target::Class(c) => check(c, family).passed(),
            Target::None => classify(family).iter().all(|(_, v)| !v.passed()),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Class(c) => write!(f, "{c}"),
            Target::None => f.write_str("none"),
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "none" {
            Ok(Target::None)
        } else {
            s.parse().map(Target::Class)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("families need n >= 3, got {0}")]
    TooSmall(usize),
    #[error("{target} requires n = {required}, got n = {n}")]
    WrongN {
        target: Target,
        n: usize,
        required: usize,
    },
    #[error("no {target} family for n = {n} after {attempts} attempts")]
    Exhausted {
        target: Target,
        n: usize,
        attempts: usize,
    },
}

/// Deterministic stream of families for one `(n, target, seed)`.
pub struct Generator {
    n: usize,
    target: Target,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(n: usize, target: Target, seed: u64) -> Result<Self, GenerateError> {
        if n < 3 {
            return Err(GenerateError::TooSmall(n));
        }
        if target == Target::Class(RealizationClass::GraphN4Internal) && n != 4 {
            return Err(GenerateError::WrongN {
                target,
                n,
                required: 4,
            });
        }
        Ok(Generator {
            n,
            target,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn next_family(&mut self) -> Result<DissimilarityFamily, GenerateError> {
        for _ in 0..MAX_ATTEMPTS {
            let Some(numerators) = self.propose() else {
                continue;
            };
            let values = numerators
                .into_iter()
                .map(|p| Rational::new(p.into(), DENOMINATOR.into()))
                .collect();
            let family = DissimilarityFamily::new(values).expect("numerators are positive");
            if self.target.accepts(&family) {
                return Ok(family);
            }
        }
        Err(GenerateError::Exhausted {
            target: self.target,
            n: self.n,
            attempts: MAX_ATTEMPTS,
        })
    }

    fn propose(&mut self) -> Option<Vec<i64>> {
        if self.target == Target::None {
            return Some(self.uniform(1));
        }
        // Narrow bands make the slack conditions likely at larger n.
        let width = (MAX_NUMERATOR >> self.rng.gen_range(0..10)).max(1);
        let mut values = self.uniform(MAX_NUMERATOR - width + 1);
        match self.rng.gen_range(0..3) {
            0 => {}
            1 => self.repeat_max(&mut values),
            _ => self.force_equality(&mut values)?,
        }
        Some(values)
    }

    fn uniform(&mut self, lo: i64) -> Vec<i64> {
        (0..self.n)
            .map(|_| self.rng.gen_range(lo..=MAX_NUMERATOR))
            .collect()
    }

    fn repeat_max(&mut self, values: &mut [i64]) {
        let top = *values.iter().max().expect("n >= 3");
        let copies = self.rng.gen_range(1..values.len());
        for _ in 0..copies {
            let i = self.rng.gen_range(0..values.len());
            values[i] = top;
        }
    }

    /// Sets one value so that its slack is zero; rejects draws where that
    /// value is not a numerator in range.
    fn force_equality(&mut self, values: &mut [i64]) -> Option<()> {
        let n = values.len() as i64;
        let r = self.rng.gen_range(0..values.len());
        let others: i64 = values.iter().sum::<i64>() - values[r];
        if others % (n - 2) != 0 {
            return None;
        }
        let v = others / (n - 2);
        if !(1..=MAX_NUMERATOR).contains(&v) {
            return None;
        }
        values[r] = v;
        Some(())
    }
}

/// `count` families in seed order.
pub fn generate(
    n: usize,
    target: Target,
    seed: u64,
    count: usize,
) -> Result<Vec<DissimilarityFamily>, GenerateError> {
    let mut generator = Generator::new(n, target, seed)?;
    (0..count).map(|_| generator.next_family()).collect()
}
