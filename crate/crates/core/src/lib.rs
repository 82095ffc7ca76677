//! Combinatorial semi-bandits with linear rewards.
//!
//! `K` stochastic arms are played in feasible subsets (strategies) of at most
//! `N` arms; after each round the reward of every played arm is revealed. The
//! crate provides:
//!
//! - [`env`]: bounded i.i.d. arm environments with counter-based sampling, so a
//!   trace depends only on `(seed, round, arm)`.
//! - [`policy`]: per-arm statistics and the distribution-free index (`dfl`),
//!   the `llr` baseline and a strategy-level MOSS baseline.
//! - [`oracle`]: per-round maximizers over the feasible set: explicit lists,
//!   threshold-constrained subsets, source-sink paths and maximum-weight
//!   independent sets (exact and greedy) on extended conflict graphs.
//! - [`regret`]: static optima, regret / β-regret ledgers and the closed-form
//!   regret bounds.
//! - [`scenarios`]: the built-in instance data.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use cmab_core::{scenarios, Environment, PolicyKind, PolicyState};
//!
//! let problem = scenarios::ad_placement_problem()?;
//! let mut env = Environment::bernoulli(&scenarios::ad_click_rates(), 7)?;
//! let mut policy = PolicyState::new(PolicyKind::Dfl, env.num_arms())?;
//! for _ in 0..1000 {
//!     let choice = policy.select(&problem)?;
//!     let observed = env.sample_round(&choice.strategy)?;
//!     policy.update(&observed)?;
//! }
//! # Ok::<(), cmab_core::Error>(())
//! ```
#![no_std]
#![forbid(unsafe_code)]
// `!(x >= 0.0)` style checks deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod env;
mod error;
pub mod oracle;
pub mod policy;
pub mod regret;
mod rng;
pub mod scenarios;
mod strategy;

pub use env::{normalize_environment, ArmModel, Environment, Observation, RewardFamily};
pub use error::{Error, Result};
pub use oracle::{maximize, OracleProblem, Selection};
pub use policy::{dfl_index, llr_index, ArmStats, PolicyKind, PolicyState};
pub use regret::{static_optimum, RegretLedger, RegretRow};
pub use rng::{counter_u64, counter_uniform};
pub use strategy::Strategy;
