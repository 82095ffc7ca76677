use core::cmp::Ordering;
use core::ops::Add;

use crate::error::{Error, Result};

/// Two-tier objective: number of cold (never observed) arms covered, then the
/// finite weight sum. Cold arms carry weight `+∞`; comparing the tiers
/// lexicographically is how `+∞` summands are ordered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub cold: u32,
    pub sum: f64,
}

impl Score {
    pub const ZERO: Score = Score { cold: 0, sum: 0.0 };

    /// Score of a single arm weight. `+∞` marks a cold arm.
    pub fn of(w: f64) -> Self {
        if w == f64::INFINITY {
            Score { cold: 1, sum: 0.0 }
        } else {
            Score { cold: 0, sum: w }
        }
    }

    /// Same cold tier, finite part negated (turns a minimization into a maximization).
    pub fn negated_sum(self) -> Self {
        Score {
            cold: self.cold,
            sum: -self.sum,
        }
    }

    /// Extended-real value: `+∞` when any cold arm is covered.
    pub fn value(self) -> f64 {
        if self.cold > 0 {
            f64::INFINITY
        } else {
            self.sum
        }
    }

    pub fn is_negative(self) -> bool {
        self.cold == 0 && self.sum < 0.0
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.cold
            .cmp(&other.cold)
            .then(self.sum.total_cmp(&other.sum))
    }
}

impl Add for Score {
    type Output = Score;
    fn add(self, rhs: Score) -> Score {
        Score {
            cold: self.cold + rhs.cold,
            sum: self.sum + rhs.sum,
        }
    }
}

/// Validates a weight vector: no NaN, no `-∞`.
pub(crate) fn scores(weights: &[f64], expected: usize) -> Result<alloc::vec::Vec<Score>> {
    if weights.len() != expected {
        return Err(Error::WeightLength {
            expected,
            got: weights.len(),
        });
    }
    weights
        .iter()
        .map(|&w| {
            if w.is_nan() || w == f64::NEG_INFINITY {
                Err(Error::InvalidWeight("NaN or -inf"))
            } else {
                Ok(Score::of(w))
            }
        })
        .collect()
}
