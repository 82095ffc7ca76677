//! Per-round maximizers over the feasible strategy set.
//!
//! Weights are extended reals: `+∞` marks a cold arm. Every oracle maximizes
//! first the number of cold arms covered, then the finite weight sum, and
//! breaks exact ties with [`Strategy::tie_order`].

mod conflict;
mod mwis;
mod path;
mod score;
mod threshold;

use alloc::vec::Vec;
use core::cmp::Ordering;

pub use conflict::{build_extended_conflict_graph, is_valid_assignment, ConflictGraph};
pub use mwis::{mwis_exact, mwis_greedy, MwisInstance, MwisMode, UndirectedGraph, MWIS_NODE_LIMIT};
pub use path::{shortest_path_select, DiGraph, PathDirection, PathInstance};
pub use score::Score;
pub use threshold::{threshold_subset_max, ThresholdInstance, DP_BUCKETS, ENUMERATION_LIMIT};

use crate::error::{Error, Result};
use crate::strategy::Strategy;

/// A feasible strategy set together with the method that searches it.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleProblem {
    /// Explicit list of strategies over `arms` arms.
    Exhaustive {
        arms: usize,
        strategies: Vec<Strategy>,
    },
    ThresholdSubset(ThresholdInstance),
    Path(PathInstance),
    Mwis(MwisInstance),
}

/// Oracle output. `value` is the weight sum of `strategy` (`+∞` if it covers
/// a cold arm; for minimizing path problems, the minimized sum).
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub strategy: Strategy,
    pub value: f64,
    pub beta: f64,
}

impl OracleProblem {
    pub fn exhaustive(arms: usize, strategies: Vec<Strategy>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::EmptyStrategySet);
        }
        if arms == 0 {
            return Err(Error::DegenerateEnvironment("no arms"));
        }
        for s in &strategies {
            s.check_range(arms)?;
        }
        Ok(Self::Exhaustive { arms, strategies })
    }

    pub fn num_arms(&self) -> usize {
        match self {
            Self::Exhaustive { arms, .. } => *arms,
            Self::ThresholdSubset(t) => t.num_arms(),
            Self::Path(p) => p.num_arms(),
            Self::Mwis(m) => m.graph().nodes(),
        }
    }

    /// Upper bound `N` on strategy length.
    pub fn max_strategy_len(&self) -> usize {
        match self {
            Self::Exhaustive { strategies, .. } => {
                strategies.iter().map(Strategy::len).max().unwrap_or(0)
            }
            Self::ThresholdSubset(t) => t.max_size(),
            Self::Path(p) => p.max_path_len(),
            Self::Mwis(m) => m.max_size(),
        }
    }

    /// Approximation factor of this oracle (1 unless greedy MWIS).
    pub fn beta(&self) -> f64 {
        match self {
            Self::Mwis(m) => m.beta(),
            _ => 1.0,
        }
    }

    /// The same feasible set, searched exactly and in maximization form.
    pub fn exact(&self) -> Self {
        match self {
            Self::Mwis(m) => Self::Mwis(m.with_mode(MwisMode::Exact)),
            Self::Path(p) => Self::Path(p.with_direction(PathDirection::GainOptimism)),
            other => other.clone(),
        }
    }

    /// Feasibility check independent of any search.
    pub fn is_feasible(&self, s: &Strategy) -> bool {
        match self {
            Self::Exhaustive { strategies, .. } => strategies.contains(s),
            Self::ThresholdSubset(t) => t.is_feasible(s),
            Self::Path(p) => p.is_feasible(s),
            Self::Mwis(m) => m.is_feasible(s),
        }
    }

    /// Explicit feasible set. For independent-set problems this is the set of
    /// maximal independent sets. Errors once more than `limit` strategies exist.
    pub fn enumerate_feasible(&self, limit: usize) -> Result<Vec<Strategy>> {
        let out = match self {
            Self::Exhaustive { strategies, .. } => strategies.clone(),
            Self::ThresholdSubset(t) => {
                let mut out = Vec::new();
                let mut chosen = Vec::new();
                enumerate_subsets(t, 0, 0.0, &mut chosen, &mut out, limit)?;
                out
            }
            Self::Path(p) => p.enumerate_paths(limit)?,
            Self::Mwis(m) => m.graph().maximal_independent_sets(limit)?,
        };
        if out.len() > limit {
            return Err(Error::InstanceTooLarge {
                size: out.len(),
                limit,
            });
        }
        if out.is_empty() {
            return Err(Error::NoFeasibleStrategy);
        }
        Ok(out)
    }
}

fn enumerate_subsets(
    t: &ThresholdInstance,
    i: usize,
    bid: f64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Strategy>,
    limit: usize,
) -> Result<()> {
    if i == t.num_arms() || chosen.len() == t.max_size() {
        if !chosen.is_empty() && bid > t.threshold() {
            if out.len() == limit {
                return Err(Error::InstanceTooLarge {
                    size: limit + 1,
                    limit,
                });
            }
            out.push(Strategy::from_sorted(chosen.clone()));
        }
        return Ok(());
    }
    chosen.push(i);
    enumerate_subsets(t, i + 1, bid + t.bids()[i], chosen, out, limit)?;
    chosen.pop();
    enumerate_subsets(t, i + 1, bid, chosen, out, limit)
}

/// Score of a strategy under per-arm scores, summed in index order.
fn strategy_score(s: &Strategy, w: &[Score]) -> Score {
    s.arms().iter().fold(Score::ZERO, |acc, &a| acc + w[a])
}

/// Solves `max_{s ∈ F} Σ_{k ∈ s} weights[k]` for `problem`.
pub fn maximize(problem: &OracleProblem, weights: &[f64]) -> Result<Selection> {
    let w = score::scores(weights, problem.num_arms())?;
    let beta = problem.beta();
    let (strategy, score) = match problem {
        OracleProblem::Exhaustive { strategies, .. } => {
            let mut best: Option<(&Strategy, Score)> = None;
            for s in strategies {
                let sc = strategy_score(s, &w);
                let better = match &best {
                    None => true,
                    Some((b, bs)) => match sc.total_cmp(bs) {
                        Ordering::Greater => true,
                        Ordering::Equal => s.tie_order(b) == Ordering::Less,
                        Ordering::Less => false,
                    },
                };
                if better {
                    best = Some((s, sc));
                }
            }
            let (s, sc) = best.ok_or(Error::EmptyStrategySet)?;
            (s.clone(), sc)
        }
        OracleProblem::ThresholdSubset(t) => t.maximize_scores(&w)?,
        OracleProblem::Path(p) => {
            let (s, sc) = p.optimize_scores(&w)?;
            let sc = match p.direction() {
                PathDirection::MinDelay => sc.negated_sum(),
                PathDirection::GainOptimism => sc,
            };
            (s, sc)
        }
        OracleProblem::Mwis(m) => m.maximize_scores(&w)?,
    };
    Ok(Selection {
        strategy,
        value: score.value(),
        beta,
    })
}

#[cfg(test)]
mod tests;
