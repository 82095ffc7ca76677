//! Stochastic arm environments with semi-bandit feedback.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::counter_uniform;
use crate::strategy::Strategy;

/// Distribution of an arm's normalized reward.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RewardFamily {
    /// Bernoulli(mean), i.e. 0/1 outcomes.
    #[default]
    Bernoulli,
    /// Uniform on `[mean - halfwidth, mean + halfwidth]`.
    UniformAround { halfwidth: f64 },
}

/// One arm: mean in `[0, 1]`, reward family and the factor restoring
/// application units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmModel {
    mean: f64,
    family: RewardFamily,
    scale: f64,
}

impl ArmModel {
    pub fn new(mean: f64, family: RewardFamily, scale: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mean) {
            return Err(Error::InvalidArm("mean outside [0, 1]"));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidArm("scale must be positive and finite"));
        }
        if let RewardFamily::UniformAround { halfwidth } = family {
            if !(halfwidth >= 0.0) || mean - halfwidth < 0.0 || mean + halfwidth > 1.0 {
                return Err(Error::InvalidArm("uniform support leaves [0, 1]"));
            }
        }
        Ok(Self {
            mean,
            family,
            scale,
        })
    }

    pub fn bernoulli(mean: f64) -> Result<Self> {
        Self::new(mean, RewardFamily::Bernoulli, 1.0)
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn family(&self) -> RewardFamily {
        self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Maps a uniform draw `u ∈ [0, 1)` to a reward.
    fn transform(&self, u: f64) -> f64 {
        match self.family {
            RewardFamily::Bernoulli => {
                if u < self.mean {
                    1.0
                } else {
                    0.0
                }
            }
            RewardFamily::UniformAround { halfwidth } => {
                let r = self.mean - halfwidth + 2.0 * halfwidth * u;
                r.clamp(0.0, 1.0)
            }
        }
    }
}

/// Reward revealed for one played arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub arm: usize,
    pub reward: f64,
}

/// `K` arms plus a seed and the round counter.
///
/// The reward of arm `k` in round `t` is a pure function of
/// `(seed, t, k)`, so what a policy plays never perturbs other draws.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    arms: Vec<ArmModel>,
    seed: u64,
    round: u64,
}

impl Environment {
    pub fn new(arms: Vec<ArmModel>, seed: u64) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::DegenerateEnvironment("no arms"));
        }
        Ok(Self {
            arms,
            seed,
            round: 0,
        })
    }

    /// Environment of Bernoulli arms with unit scale.
    pub fn bernoulli(means: &[f64], seed: u64) -> Result<Self> {
        let arms = means
            .iter()
            .map(|&m| ArmModel::bernoulli(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(arms, seed)
    }

    pub fn arms(&self) -> &[ArmModel] {
        &self.arms
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn means(&self) -> Vec<f64> {
        self.arms.iter().map(ArmModel::mean).collect()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of completed rounds.
    pub fn round(&self) -> u64 {
        self.round
    }

    /// Common unit-restoring factor (that of the first arm).
    pub fn scale(&self) -> f64 {
        self.arms[0].scale
    }

    /// Same arms, new seed, round counter reset.
    pub fn reseeded(&self, seed: u64) -> Self {
        Self {
            arms: self.arms.clone(),
            seed,
            round: 0,
        }
    }

    /// Reward arm `arm` would produce in round `round`.
    pub fn draw(&self, round: u64, arm: usize) -> f64 {
        self.arms[arm].transform(counter_uniform(self.seed, round, arm as u64))
    }

    /// Plays `selected` in the next round and reveals one reward per selected arm.
    ///
    /// The first call is round 1. On error the round counter is left untouched.
    pub fn sample_round(&mut self, selected: &Strategy) -> Result<Vec<Observation>> {
        selected.check_range(self.arms.len())?;
        self.round += 1;
        let t = self.round;
        Ok(selected
            .arms()
            .iter()
            .map(|&arm| Observation {
                arm,
                reward: self.draw(t, arm),
            })
            .collect())
    }
}

/// Normalizes raw nonnegative means by their maximum.
///
/// Returns the environment (every arm carrying the common scale) and the scale.
pub fn normalize_environment(
    raw_means: &[f64],
    family: RewardFamily,
    seed: u64,
) -> Result<(Environment, f64)> {
    if raw_means.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateEnvironment(
            "raw means must be finite and nonnegative",
        ));
    }
    let scale = raw_means.iter().copied().fold(0.0_f64, f64::max);
    if scale <= 0.0 {
        return Err(Error::DegenerateEnvironment("all raw means are zero"));
    }
    let arms = raw_means
        .iter()
        .map(|&v| ArmModel::new(v / scale, family, scale))
        .collect::<Result<Vec<_>>>()?;
    Ok((Environment::new(arms, seed)?, scale))
}
