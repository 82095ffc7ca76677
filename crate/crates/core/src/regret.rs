//! Static optima, regret ledgers and closed-form regret bounds.

use alloc::vec::Vec;
use core::f64::consts::E;

use crate::error::{Error, Result};
use crate::oracle::{maximize, OracleProblem};
use crate::strategy::Strategy;

/// Best static strategy under the true means and its mean reward `λ₁`.
///
/// Always solved exactly and as a maximization, whatever search mode
/// `problem` is configured with.
pub fn static_optimum(means: &[f64], problem: &OracleProblem) -> Result<(Strategy, f64)> {
    let sel = maximize(&problem.exact(), means)?;
    Ok((sel.strategy, sel.value))
}

/// One recorded round.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretRow {
    pub t: u64,
    pub strategy: Strategy,
    pub reward: f64,
    pub cum_reward: f64,
    pub avg_regret: f64,
    pub avg_beta_regret: f64,
}

/// Running regret and β-regret of one trajectory, in normalized units.
///
/// `avg_regret(t) = λ₁ − cum_reward / t` and
/// `avg_beta_regret(t) = λ₁ / β − cum_reward / t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretLedger {
    lambda1: f64,
    beta: f64,
    scale: f64,
    cum_reward: f64,
    rows: Vec<RegretRow>,
}

impl RegretLedger {
    pub fn new(lambda1: f64, beta: f64, scale: f64) -> Result<Self> {
        if !(beta >= 1.0) {
            return Err(Error::Domain("beta must be at least 1"));
        }
        if !lambda1.is_finite() || !(scale > 0.0) {
            return Err(Error::Domain("lambda1 must be finite and scale positive"));
        }
        Ok(Self {
            lambda1,
            beta,
            scale,
            cum_reward: 0.0,
            rows: Vec::new(),
        })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn cum_reward(&self) -> f64 {
        self.cum_reward
    }

    pub fn rows(&self) -> &[RegretRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<RegretRow> {
        self.rows
    }

    /// Realized regret `t·λ₁ − Σ reward` after the last recorded round.
    pub fn total_regret(&self) -> f64 {
        self.rows.len() as f64 * self.lambda1 - self.cum_reward
    }

    /// Appends round `t`; rounds must be recorded as 1, 2, 3, …
    pub fn record_round(&mut self, t: u64, strategy: Strategy, reward: f64) -> Result<&RegretRow> {
        let expected = self.rows.len() as u64 + 1;
        if t != expected {
            return Err(Error::Sequencing { expected, got: t });
        }
        if !reward.is_finite() {
            return Err(Error::Domain("reward must be finite"));
        }
        self.cum_reward += reward;
        let avg = self.cum_reward / t as f64;
        self.rows.push(RegretRow {
            t,
            strategy,
            reward,
            cum_reward: self.cum_reward,
            avg_regret: self.lambda1 - avg,
            avg_beta_regret: self.lambda1 / self.beta - avg,
        });
        Ok(self.rows.last().expect("just pushed"))
    }
}

fn check_positive(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite() && *v > 0.0) {
        Ok(())
    } else {
        Err(Error::Domain("bound parameters must be positive"))
    }
}

fn check_delta(delta: f64, cap: f64) -> Result<()> {
    if delta > 0.0 && delta <= cap {
        Ok(())
    } else {
        Err(Error::Domain("gap must lie in (0, N]"))
    }
}

// The bound expressions below are transcribed term by term.

/// Distribution-free regret bound of DFL:
/// `NK + √(Ke)·n^{2/3} + 16N³n^{3/4} + [K/e² + (1 + 4√K·N²)·N]·NK·n^{5/6}`.
pub fn bound_lemma1(n: f64, k: f64, cap: f64) -> Result<f64> {
    check_positive(&[n, k, cap])?;
    let t1 = cap * k;
    let t2 = libm::sqrt(k * E) * libm::pow(n, 2.0 / 3.0);
    let t3 = 16.0 * libm::pow(cap, 3.0) * libm::pow(n, 0.75);
    let bracket = k / (E * E) + (1.0 + 4.0 * libm::sqrt(k) * cap * cap) * cap;
    let t4 = bracket * cap * k * libm::pow(n, 5.0 / 6.0);
    Ok(t1 + t2 + t3 + t4)
}

/// Gap-dependent regret bound of DFL:
/// `e³K³/Δ⁵ + NK(1 + 16N²·ln(n^{2/3}N²/K)/Δ² + K·n^{1/3}/e²
///  + 8N³K·ln(nN²/K)/Δ²·n^{1/3} + KN/((1 − 1/e)Δ²))`.
pub fn bound_lemma2(n: f64, k: f64, cap: f64, delta_min: f64) -> Result<f64> {
    check_positive(&[n, k, cap])?;
    check_delta(delta_min, cap)?;
    let d2 = delta_min * delta_min;
    let lead = libm::pow(E, 3.0) * libm::pow(k, 3.0) / libm::pow(delta_min, 5.0);
    let n13 = libm::pow(n, 1.0 / 3.0);
    let inner = 1.0
        + 16.0 * cap * cap * libm::log(libm::pow(n, 2.0 / 3.0) / k * cap * cap) / d2
        + k * n13 / (E * E)
        + 8.0 * libm::pow(cap, 3.0) * k * libm::log(n / k * cap * cap) / d2 * n13
        + k * cap / ((1.0 - 1.0 / E) * d2);
    Ok(lead + cap * k * inner)
}

/// Distribution-free β-regret bound of β-approximation DFL:
/// `NK/β + √(eK)·n^{2/3} + 16N³n^{3/4}/β + (1 + 4√K·N²/β² + K/(e²N))·N²K/β·n^{5/6}`.
pub fn bound_lemma3(n: f64, k: f64, cap: f64, beta: f64) -> Result<f64> {
    check_positive(&[n, k, cap])?;
    if !(beta >= 1.0) {
        return Err(Error::Domain("beta must be at least 1"));
    }
    let t1 = cap * k / beta;
    let t2 = libm::sqrt(E * k) * libm::pow(n, 2.0 / 3.0);
    let t3 = 16.0 * libm::pow(cap, 3.0) * libm::pow(n, 0.75) / beta;
    let paren = 1.0 + 4.0 * libm::sqrt(k) * cap * cap / (beta * beta) + k / (E * E * cap);
    let t4 = paren * cap * cap * k / beta * libm::pow(n, 5.0 / 6.0);
    Ok(t1 + t2 + t3 + t4)
}

/// Gap-dependent β-regret bound:
/// `e³K³/Δ⁵ + NK/β·(1 + 16N²·ln(n^{2/3}N²/K)/Δ² + K·n^{1/3}/e²
///  + 8N³K·n^{1/3}·ln(nN²/K)/(β²Δ²) + NK/((1 − 1/e)Δ²))`.
pub fn bound_lemma4(n: f64, k: f64, cap: f64, beta: f64, delta_beta_min: f64) -> Result<f64> {
    check_positive(&[n, k, cap])?;
    if !(beta >= 1.0) {
        return Err(Error::Domain("beta must be at least 1"));
    }
    check_delta(delta_beta_min, cap)?;
    let d = delta_beta_min;
    let d2 = d * d;
    let lead = libm::pow(E, 3.0) * libm::pow(k, 3.0) / libm::pow(d, 5.0);
    let n13 = libm::pow(n, 1.0 / 3.0);
    let inner = 1.0
        + 16.0 * cap * cap * libm::log(libm::pow(n, 2.0 / 3.0) / k * cap * cap) / d2
        + k * n13 / (E * E)
        + 8.0 * libm::pow(cap, 3.0) * k * n13 * libm::log(n / k * cap * cap) / (beta * beta * d2)
        + cap * k / ((1.0 - 1.0 / E) * d2);
    Ok(lead + cap * k / beta * inner)
}

/// Combined regret bound: the smaller of [`bound_lemma1`] and [`bound_lemma2`].
pub fn bound_theorem_regret(n: f64, k: f64, cap: f64, delta_min: f64) -> Result<f64> {
    Ok(bound_lemma1(n, k, cap)?.min(bound_lemma2(n, k, cap, delta_min)?))
}

/// Combined β-regret bound: the smaller of [`bound_lemma3`] and [`bound_lemma4`].
pub fn bound_theorem_beta(n: f64, k: f64, cap: f64, beta: f64, delta_beta_min: f64) -> Result<f64> {
    Ok(bound_lemma3(n, k, cap, beta)?.min(bound_lemma4(n, k, cap, beta, delta_beta_min)?))
}
