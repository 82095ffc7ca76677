//! Subsets of at most `N` arms whose bid sum strictly exceeds a threshold.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::score::{scores, Score};
use crate::error::{Error, Result};
use crate::strategy::Strategy;

/// Largest arm count solved by exhaustive enumeration.
pub const ENUMERATION_LIMIT: usize = 25;

/// Bucket budget for the dynamic program used above [`ENUMERATION_LIMIT`].
pub const DP_BUCKETS: usize = 2048;

/// Feasible set `{ s : 1 ≤ |s| ≤ N, Σ_{i∈s} bid_i > h }`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdInstance {
    bids: Vec<f64>,
    threshold: f64,
    max_size: usize,
}

impl ThresholdInstance {
    pub fn new(bids: Vec<f64>, threshold: f64, max_size: usize) -> Result<Self> {
        if bids.is_empty() {
            return Err(Error::DegenerateEnvironment("no arms"));
        }
        if bids.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
            return Err(Error::Domain("bids must be finite and nonnegative"));
        }
        if !threshold.is_finite() {
            return Err(Error::Domain("threshold must be finite"));
        }
        if max_size == 0 || max_size > bids.len() {
            return Err(Error::Domain("max size must be in 1..=K"));
        }
        Ok(Self {
            bids,
            threshold,
            max_size,
        })
    }

    pub fn bids(&self) -> &[f64] {
        &self.bids
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn num_arms(&self) -> usize {
        self.bids.len()
    }

    /// Bid sum accumulated in arm-index order.
    pub fn bid_sum(&self, s: &Strategy) -> f64 {
        s.arms().iter().map(|&i| self.bids[i]).sum()
    }

    pub fn is_feasible(&self, s: &Strategy) -> bool {
        s.check_range(self.num_arms()).is_ok()
            && s.len() <= self.max_size
            && self.bid_sum(s) > self.threshold
    }

    pub(crate) fn maximize_scores(&self, w: &[Score]) -> Result<(Strategy, Score)> {
        if self.num_arms() <= ENUMERATION_LIMIT {
            self.enumerate(w)
        } else {
            self.dynamic_program_scores(w, None)
        }
    }

    fn enumerate(&self, w: &[Score]) -> Result<(Strategy, Score)> {
        let k = self.num_arms();
        let mut bid_tail = vec![0.0; k + 1];
        for i in (0..k).rev() {
            bid_tail[i] = bid_tail[i + 1] + self.bids[i];
        }
        let mut search = Enumeration {
            inst: self,
            w,
            bid_tail,
            chosen: Vec::with_capacity(self.max_size),
            best: None,
        };
        search.visit(0, Score::ZERO, 0.0);
        search
            .best
            .map(|(arms, sc)| (Strategy::from_sorted(arms), sc))
            .ok_or(Error::NoFeasibleStrategy)
    }

    /// Knapsack-style program over (arms considered, subset size, discretized
    /// bid sum saturated at the threshold).
    ///
    /// Bids are floored to multiples of `resolution`, so a subset is accepted
    /// only when its floored sum already exceeds the threshold: every returned
    /// subset is feasible, but near-threshold subsets may be missed. Exact when
    /// all bids and the threshold are multiples of `resolution`. `None` picks a
    /// resolution that keeps the table within [`DP_BUCKETS`] buckets.
    pub fn dynamic_program(&self, weights: &[f64], resolution: Option<f64>) -> Result<Strategy> {
        let w = scores(weights, self.num_arms())?;
        self.dynamic_program_scores(&w, resolution).map(|(s, _)| s)
    }

    pub(crate) fn dynamic_program_scores(
        &self,
        w: &[Score],
        resolution: Option<f64>,
    ) -> Result<(Strategy, Score)> {
        const NOT_TAKEN: u32 = u32::MAX;
        let k = self.num_arms();
        let cap = self.max_size;
        // `need`: smallest floored bucket sum certifying Σ bid > h.
        let (need, res) = if self.threshold < 0.0 {
            (0usize, 1.0)
        } else {
            let res = resolution.unwrap_or_else(|| {
                (self.threshold / (DP_BUCKETS - 2) as f64).max(f64::MIN_POSITIVE)
            });
            if !(res > 0.0) {
                return Err(Error::Domain("resolution must be positive"));
            }
            (libm::floor(self.threshold / res) as usize + 1, res)
        };
        let units: Vec<usize> = self
            .bids
            .iter()
            .map(|b| (libm::floor(b / res) as usize).min(need))
            .collect();

        let width = need + 1;
        let cell = |c: usize, b: usize| c * width + b;
        let layer = (cap + 1) * width;
        let mut best: Vec<Option<Score>> = vec![None; layer];
        best[cell(0, 0)] = Some(Score::ZERO);
        // pred[i * layer + cell]: source bucket when arm i was taken to reach `cell`.
        let mut pred = vec![NOT_TAKEN; k * layer];
        for i in 0..k {
            // Descending size keeps row `c` at its previous-layer values while read.
            for c in (0..cap).rev() {
                for b in 0..width {
                    let Some(cur) = best[cell(c, b)] else {
                        continue;
                    };
                    let nb = (b + units[i]).min(need);
                    let cand = cur + w[i];
                    let target = cell(c + 1, nb);
                    let improves = match best[target] {
                        None => true,
                        Some(old) => cand.total_cmp(&old) == Ordering::Greater,
                    };
                    if improves {
                        best[target] = Some(cand);
                        pred[i * layer + target] = b as u32;
                    }
                }
            }
        }
        let mut pick: Option<(usize, Score)> = None;
        for c in 1..=cap {
            if let Some(sc) = best[cell(c, need)] {
                if pick.is_none_or(|(_, p)| sc.total_cmp(&p) == Ordering::Greater) {
                    pick = Some((c, sc));
                }
            }
        }
        let (mut c, score) = pick.ok_or(Error::NoFeasibleStrategy)?;
        let mut b = need;
        let mut arms = Vec::with_capacity(c);
        for i in (0..k).rev() {
            if c == 0 {
                break;
            }
            let from = pred[i * layer + cell(c, b)];
            if from != NOT_TAKEN {
                arms.push(i);
                c -= 1;
                b = from as usize;
            }
        }
        debug_assert_eq!(c, 0);
        arms.reverse();
        Ok((Strategy::from_sorted(arms), score))
    }
}

struct Enumeration<'a> {
    inst: &'a ThresholdInstance,
    w: &'a [Score],
    bid_tail: Vec<f64>,
    chosen: Vec<usize>,
    best: Option<(Vec<usize>, Score)>,
}

impl Enumeration<'_> {
    // Include-first depth-first order visits subsets in tie-break order, so
    // only strict improvements replace the incumbent.
    fn visit(&mut self, i: usize, score: Score, bid: f64) {
        let k = self.w.len();
        if i == k || self.chosen.len() == self.inst.max_size {
            if !self.chosen.is_empty() && bid > self.inst.threshold {
                let better = match &self.best {
                    None => true,
                    Some((_, b)) => score.total_cmp(b) == Ordering::Greater,
                };
                if better {
                    self.best = Some((self.chosen.clone(), score));
                }
            }
            return;
        }
        if bid + self.bid_tail[i] <= self.inst.threshold {
            return;
        }
        self.chosen.push(i);
        self.visit(i + 1, score + self.w[i], bid + self.inst.bids[i]);
        self.chosen.pop();
        self.visit(i + 1, score, bid);
    }
}

/// Maximizes `Σ weights` over subsets of at most `max_size` arms with bid sum
/// strictly above `threshold`.
pub fn threshold_subset_max(
    weights: &[f64],
    bids: &[f64],
    threshold: f64,
    max_size: usize,
) -> Result<Strategy> {
    let inst = ThresholdInstance::new(bids.to_vec(), threshold, max_size)?;
    let w = scores(weights, inst.num_arms())?;
    inst.maximize_scores(&w).map(|(s, _)| s)
}
