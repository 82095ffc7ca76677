//! Experiment runner: replications of select → sample → update → record.

use cmab_core::oracle::OracleProblem;
use cmab_core::policy::MOSS_ENUMERATION_LIMIT;
use cmab_core::{PolicyKind, PolicyState, RegretLedger, Strategy};
use rayon::prelude::*;

use crate::config::{ConfigError, Experiment, PolicyName, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{module} error in replication {replication}, round {round}: {source}")]
    Round {
        module: &'static str,
        replication: u32,
        round: u64,
        source: cmab_core::Error,
    },
    #[error("oracle setup failed: {0}")]
    Setup(cmab_core::Error),
}

/// One emitted trace line.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub replication: u32,
    pub t: u64,
    pub strategy: Strategy,
    pub reward: f64,
    pub cum_reward: f64,
    pub avg_regret: f64,
    pub avg_beta_regret: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub t: u64,
    pub mean_avg_regret: f64,
    pub mean_avg_beta_regret: f64,
}

/// Per-round means over replications plus run metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    pub lambda1: f64,
    pub beta: f64,
    pub scale: f64,
    pub policy: PolicyName,
    pub oracle: crate::config::OracleMode,
    /// Mean over replications of the realized regret `n·λ₁ − Σ reward` at the horizon.
    pub mean_final_regret: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Ordered by replication, then round.
    pub traces: Vec<TraceRow>,
    pub summary: Summary,
}

/// Seed of replication `r`.
pub fn replication_seed(seed: u64, r: u32) -> u64 {
    seed ^ u64::from(r)
}

pub fn run(config: &RunConfig) -> Result<RunOutput, HarnessError> {
    let exp = config.build()?;
    run_experiment(&exp)
}

pub fn run_experiment(exp: &Experiment) -> Result<RunOutput, HarnessError> {
    // Naive MOSS needs the explicit feasible set; list it once per run.
    let problem = match exp.policy {
        PolicyKind::NaiveMoss { .. } => {
            let list = exp
                .problem
                .enumerate_feasible(MOSS_ENUMERATION_LIMIT)
                .map_err(HarnessError::Setup)?;
            OracleProblem::exhaustive(exp.problem.num_arms(), list).map_err(HarnessError::Setup)?
        }
        _ => exp.problem.clone(),
    };
    let reps = exp.config.replications;
    let per_rep: Vec<Vec<TraceRow>> = (0..reps)
        .into_par_iter()
        .map(|r| run_replication(exp, &problem, r))
        .collect::<Result<_, _>>()?;

    let n = exp.config.horizon as usize;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let (mut reg, mut beta_reg) = (0.0, 0.0);
        for rep in &per_rep {
            reg += rep[i].avg_regret;
            beta_reg += rep[i].avg_beta_regret;
        }
        rows.push(SummaryRow {
            t: i as u64 + 1,
            mean_avg_regret: reg / f64::from(reps),
            mean_avg_beta_regret: beta_reg / f64::from(reps),
        });
    }
    let mean_final_regret = per_rep
        .iter()
        .map(|rep| {
            let last = rep.last().expect("horizon >= 1");
            last.t as f64 * exp.lambda1 - last.cum_reward
        })
        .sum::<f64>()
        / f64::from(reps);
    let summary = Summary {
        rows,
        lambda1: exp.lambda1,
        beta: exp.beta,
        scale: exp.scale,
        policy: exp.config.policy,
        oracle: exp.config.oracle_mode,
        mean_final_regret,
    };
    Ok(RunOutput {
        traces: per_rep.into_iter().flatten().collect(),
        summary,
    })
}

fn run_replication(
    exp: &Experiment,
    problem: &OracleProblem,
    r: u32,
) -> Result<Vec<TraceRow>, HarnessError> {
    let fail = |module: &'static str, round: u64| {
        move |source: cmab_core::Error| HarnessError::Round {
            module,
            replication: r,
            round,
            source,
        }
    };
    let mut env = exp
        .environment
        .reseeded(replication_seed(exp.config.seed, r));
    let mut policy = PolicyState::new(exp.policy, env.num_arms()).map_err(fail("policy", 0))?;
    let mut ledger =
        RegretLedger::new(exp.lambda1, exp.beta, exp.scale).map_err(fail("regret", 0))?;
    for t in 1..=exp.config.horizon {
        let selection = policy.select(problem).map_err(fail("oracle", t))?;
        let observations = env
            .sample_round(&selection.strategy)
            .map_err(fail("env", t))?;
        policy.update(&observations).map_err(fail("policy", t))?;
        let reward: f64 = observations.iter().map(|o| o.reward).sum();
        ledger
            .record_round(t, selection.strategy, reward)
            .map_err(fail("regret", t))?;
    }
    Ok(ledger
        .into_rows()
        .into_iter()
        .map(|row| TraceRow {
            replication: r,
            t: row.t,
            strategy: row.strategy,
            reward: row.reward,
            cum_reward: row.cum_reward,
            avg_regret: row.avg_regret,
            avg_beta_regret: row.avg_beta_regret,
        })
        .collect())
}

/// Result of running several policies on the same environments and seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub policies: Vec<PolicyName>,
    pub summaries: Vec<Summary>,
}

pub fn compare(config: &RunConfig, policies: &[PolicyName]) -> Result<Comparison, HarnessError> {
    let summaries = policies
        .iter()
        .map(|&p| {
            let cfg = RunConfig {
                policy: p,
                ..config.clone()
            };
            run(&cfg).map(|out| out.summary)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Comparison {
        policies: policies.to_vec(),
        summaries,
    })
}
