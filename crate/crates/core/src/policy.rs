//! Index policies over per-arm statistics.
//!
//! DFL and LLR keep one [`ArmStats`] per arm and nothing else, whatever the
//! size of the feasible set; the per-round argmax is delegated to an oracle.
//! Naive MOSS treats every feasible strategy as a separate arm and is only
//! usable when the feasible set can be listed.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::env::Observation;
use crate::error::{Error, Result};
use crate::oracle::{maximize, OracleProblem, PathDirection, Selection};
use crate::strategy::Strategy;

/// Largest feasible set naive MOSS will enumerate on its own.
pub const MOSS_ENUMERATION_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    /// Distribution-free index `μ̃ + sqrt(max(ln(t^{2/3} / (K m)), 0) / m)`.
    Dfl,
    /// `μ̃ + sqrt((N + 1) ln t / m)`.
    Llr,
    /// MOSS over strategies, with known horizon.
    NaiveMoss { horizon: u64 },
}

impl PolicyKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Dfl => "dfl",
            Self::Llr => "llr",
            Self::NaiveMoss { .. } => "moss",
        }
    }
}

/// Play count and reward sum of one arm (or one strategy, for MOSS).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ArmStats {
    plays: u64,
    reward_sum: f64,
}

impl ArmStats {
    pub fn new(plays: u64, reward_sum: f64) -> Self {
        Self { plays, reward_sum }
    }

    pub fn plays(&self) -> u64 {
        self.plays
    }

    pub fn reward_sum(&self) -> f64 {
        self.reward_sum
    }

    /// `None` while the arm has never been observed.
    pub fn empirical_mean(&self) -> Option<f64> {
        (self.plays > 0).then(|| self.reward_sum / self.plays as f64)
    }

    pub fn is_cold(&self) -> bool {
        self.plays == 0
    }

    fn observe(&mut self, reward: f64) {
        self.plays += 1;
        self.reward_sum += reward;
    }
}

/// `t^{2/3}` in floating point.
pub fn t_two_thirds(t: f64) -> f64 {
    libm::pow(t, 2.0 / 3.0)
}

/// DFL exploration bonus for an arm observed `plays > 0` times.
///
/// Zero exactly when `t^{2/3} ≤ K·plays`.
pub fn dfl_bonus(plays: u64, t: f64, k: usize) -> f64 {
    debug_assert!(plays > 0);
    let m = plays as f64;
    let t23 = t_two_thirds(t);
    let km = k as f64 * m;
    if t23 <= km {
        return 0.0;
    }
    // ln(t23 / km) via log1p keeps the bonus strictly positive just above the clamp.
    libm::sqrt(libm::log1p((t23 - km) / km) / m)
}

/// DFL index; `+∞` for a cold arm.
pub fn dfl_index(stats: &ArmStats, t: f64, k: usize) -> f64 {
    match stats.empirical_mean() {
        None => f64::INFINITY,
        Some(mean) => mean + dfl_bonus(stats.plays, t, k),
    }
}

pub fn llr_bonus(plays: u64, t: f64, cap: usize) -> f64 {
    let ln_t = libm::log(t).max(0.0);
    libm::sqrt((cap as f64 + 1.0) * ln_t / plays as f64)
}

/// LLR index; `+∞` for a cold arm.
pub fn llr_index(stats: &ArmStats, t: f64, cap: usize) -> f64 {
    match stats.empirical_mean() {
        None => f64::INFINITY,
        Some(mean) => mean + llr_bonus(stats.plays, t, cap),
    }
}

/// Strategy-level MOSS index with horizon `n` and `kappa` strategies.
pub fn moss_index(stats: &ArmStats, horizon: u64, kappa: usize) -> f64 {
    match stats.empirical_mean() {
        None => f64::INFINITY,
        Some(mean) => {
            let m = stats.plays as f64;
            let ratio = horizon as f64 / (kappa as f64 * m);
            mean + libm::sqrt(libm::log(ratio).max(0.0) / m)
        }
    }
}

/// Learner state: per-arm statistics plus, for naive MOSS only, per-strategy statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyState {
    kind: PolicyKind,
    stats: Vec<ArmStats>,
    round: u64,
    strategy_stats: Option<BTreeMap<Strategy, ArmStats>>,
}

impl PolicyState {
    pub fn new(kind: PolicyKind, arms: usize) -> Result<Self> {
        if arms == 0 {
            return Err(Error::DegenerateEnvironment("no arms"));
        }
        let strategy_stats = matches!(kind, PolicyKind::NaiveMoss { .. }).then(BTreeMap::new);
        Ok(Self {
            kind,
            stats: vec![ArmStats::default(); arms],
            round: 0,
            strategy_stats,
        })
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn stats(&self) -> &[ArmStats] {
        &self.stats
    }

    pub fn num_arms(&self) -> usize {
        self.stats.len()
    }

    /// Completed rounds.
    pub fn round(&self) -> u64 {
        self.round
    }

    /// Index time of the next decision: completed rounds + 1.
    pub fn next_t(&self) -> u64 {
        self.round + 1
    }

    pub fn strategy_stats(&self, s: &Strategy) -> ArmStats {
        self.strategy_stats
            .as_ref()
            .and_then(|m| m.get(s).copied())
            .unwrap_or_default()
    }

    /// Folds one round of semi-bandit feedback into the statistics.
    ///
    /// The whole batch is validated first; on error nothing changes.
    pub fn update(&mut self, observations: &[Observation]) -> Result<()> {
        for o in observations {
            if o.arm >= self.stats.len() {
                return Err(Error::ArmOutOfRange {
                    arm: o.arm,
                    arms: self.stats.len(),
                });
            }
            if !(0.0..=1.0).contains(&o.reward) {
                return Err(Error::InvalidObservation {
                    arm: o.arm,
                    reward: o.reward,
                });
            }
        }
        if let Some(table) = self.strategy_stats.as_mut() {
            let s = Strategy::new(observations.iter().map(|o| o.arm).collect())?;
            let total: f64 = observations.iter().map(|o| o.reward).sum();
            table.entry(s).or_default().observe(total);
        }
        for o in observations {
            self.stats[o.arm].observe(o.reward);
        }
        self.round += 1;
        Ok(())
    }

    /// Index of every arm for decision time `t`; `+∞` marks cold arms.
    ///
    /// `delays` switches to the loss form used by the literal path rule:
    /// the empirical mean is replaced by `1 - μ̃`.
    pub fn arm_indices(&self, t: f64, cap: usize, delays: bool) -> Vec<f64> {
        let k = self.stats.len();
        self.stats
            .iter()
            .map(|s| {
                let Some(mean) = s.empirical_mean() else {
                    return f64::INFINITY;
                };
                let mean = if delays { 1.0 - mean } else { mean };
                let bonus = match self.kind {
                    PolicyKind::Llr => llr_bonus(s.plays, t, cap),
                    PolicyKind::Dfl | PolicyKind::NaiveMoss { .. } => dfl_bonus(s.plays, t, k),
                };
                mean + bonus
            })
            .collect()
    }

    /// Picks the strategy for the next round (`t = completed rounds + 1`).
    pub fn select(&self, problem: &OracleProblem) -> Result<Selection> {
        if problem.num_arms() != self.stats.len() {
            return Err(Error::Domain(
                "oracle arm count differs from policy arm count",
            ));
        }
        let t = self.next_t() as f64;
        match self.kind {
            PolicyKind::NaiveMoss { horizon } => {
                let owned;
                let strategies = match problem {
                    OracleProblem::Exhaustive { strategies, .. } => strategies,
                    other => {
                        owned = other.enumerate_feasible(MOSS_ENUMERATION_LIMIT)?;
                        &owned
                    }
                };
                let (strategy, value) = moss_argmax(self, strategies, horizon)?;
                Ok(Selection {
                    strategy,
                    value,
                    beta: 1.0,
                })
            }
            PolicyKind::Dfl | PolicyKind::Llr => {
                let delays = matches!(
                    problem,
                    OracleProblem::Path(p) if p.direction() == PathDirection::MinDelay
                );
                let w = self.arm_indices(t, problem.max_strategy_len(), delays);
                maximize(problem, &w)
            }
        }
    }

    /// Fixed-width little-endian snapshot.
    ///
    /// Layout: kind tag (u8), arm count, completed rounds, then per arm
    /// `plays` (u64) and `reward_sum` (f64 bits); naive MOSS appends its
    /// strategy table (count, then per entry: length, arm indices, plays, sum).
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(17 + 16 * self.stats.len());
        let tag = match self.kind {
            PolicyKind::Dfl => 0u8,
            PolicyKind::Llr => 1,
            PolicyKind::NaiveMoss { .. } => 2,
        };
        out.push(tag);
        out.extend_from_slice(&(self.stats.len() as u64).to_le_bytes());
        out.extend_from_slice(&self.round.to_le_bytes());
        for s in &self.stats {
            out.extend_from_slice(&s.plays.to_le_bytes());
            out.extend_from_slice(&s.reward_sum.to_bits().to_le_bytes());
        }
        if let Some(table) = &self.strategy_stats {
            out.extend_from_slice(&(table.len() as u64).to_le_bytes());
            for (s, st) in table {
                out.extend_from_slice(&(s.len() as u64).to_le_bytes());
                for &a in s.arms() {
                    out.extend_from_slice(&(a as u64).to_le_bytes());
                }
                out.extend_from_slice(&st.plays.to_le_bytes());
                out.extend_from_slice(&st.reward_sum.to_bits().to_le_bytes());
            }
        }
        out
    }
}

fn moss_argmax(
    state: &PolicyState,
    strategies: &[Strategy],
    horizon: u64,
) -> Result<(Strategy, f64)> {
    if strategies.is_empty() {
        return Err(Error::EmptyStrategySet);
    }
    let kappa = strategies.len();
    // Unplayed strategies first, in list order.
    if let Some(s) = strategies
        .iter()
        .find(|s| state.strategy_stats(s).is_cold())
    {
        return Ok((s.clone(), f64::INFINITY));
    }
    let mut best = (0usize, f64::NEG_INFINITY);
    for (i, s) in strategies.iter().enumerate() {
        let idx = moss_index(&state.strategy_stats(s), horizon, kappa);
        if idx.total_cmp(&best.1) == Ordering::Greater {
            best = (i, idx);
        }
    }
    Ok((strategies[best.0].clone(), best.1))
}

/// Strategy-level MOSS over an explicit list with horizon `horizon`.
pub fn naive_moss_select(
    state: &PolicyState,
    strategies: &[Strategy],
    horizon: u64,
) -> Result<Strategy> {
    moss_argmax(state, strategies, horizon).map(|(s, _)| s)
}
