//! Run-config files (JSON) and the built-in scenarios.

use std::fs;
use std::path::Path;

use cmab_core::oracle::{
    build_extended_conflict_graph, ConflictGraph, DiGraph, MwisInstance, MwisMode, OracleProblem,
    PathDirection, PathInstance, ThresholdInstance, UndirectedGraph,
};
use cmab_core::{
    normalize_environment, scenarios, static_optimum, ArmModel, Environment, PolicyKind,
    RewardFamily, Strategy,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config at `{path}`: {message}")]
    Invalid { path: String, message: String },
    #[error(
        "unknown scenario `{0}` (expected ad_placement, channel_access or shortest_path_demo)"
    )]
    UnknownScenario(String),
}

impl ConfigError {
    fn at(path: &str, message: impl std::fmt::Display) -> Self {
        Self::Invalid {
            path: path.to_string(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    AdPlacement,
    ShortestPath,
    ChannelAccess,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyName {
    Dfl,
    Llr,
    Moss,
}

impl PolicyName {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dfl" => Some(Self::Dfl),
            "llr" => Some(Self::Llr),
            "moss" => Some(Self::Moss),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Dfl => "dfl",
            Self::Llr => "llr",
            Self::Moss => "moss",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    #[default]
    Exact,
    Greedy,
}

impl OracleMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Greedy => "greedy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    #[default]
    Bernoulli,
    UniformAround {
        halfwidth: f64,
    },
}

impl From<FamilySpec> for RewardFamily {
    fn from(f: FamilySpec) -> Self {
        match f {
            FamilySpec::Bernoulli => RewardFamily::Bernoulli,
            FamilySpec::UniformAround { halfwidth } => RewardFamily::UniformAround { halfwidth },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionSpec {
    MinDelay,
    #[default]
    GainOptimism,
}

/// One experiment: scenario and payload, policy, oracle mode, horizon,
/// replication count and base seed. An omitted `instance` uses the
/// scenario's built-in data (required for `custom`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub policy: PolicyName,
    #[serde(default)]
    pub oracle_mode: OracleMode,
    pub horizon: u64,
    pub replications: u32,
    pub seed: u64,
    #[serde(default)]
    pub family: FamilySpec,
    #[serde(default)]
    pub path_direction: DirectionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdPlacementInstance {
    pub click_rates: Vec<f64>,
    pub bids: Vec<f64>,
    pub threshold: f64,
    pub max_ads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelAccessInstance {
    /// 0/1 user conflict rows.
    pub conflicts: Vec<Vec<u8>>,
    /// Mean rate of user `i` on channel `j`, raw units.
    pub rates: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: usize,
    pub to: usize,
    /// Mean delay in `[0, 1]`.
    pub mean_delay: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShortestPathInstance {
    pub nodes: usize,
    pub edges: Vec<EdgeSpec>,
    pub source: usize,
    pub sink: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CustomOracle {
    Exhaustive {
        strategies: Vec<Vec<usize>>,
    },
    Threshold {
        bids: Vec<f64>,
        threshold: f64,
        max_size: usize,
    },
    Path {
        nodes: usize,
        edges: Vec<(usize, usize)>,
        source: usize,
        sink: usize,
    },
    Mwis {
        nodes: usize,
        edges: Vec<(usize, usize)>,
    },
    Conflict {
        conflicts: Vec<Vec<u8>>,
        channels: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomInstance {
    /// Arm means; normalized by their maximum when `normalize` is set.
    pub means: Vec<f64>,
    #[serde(default)]
    pub normalize: bool,
    pub oracle: CustomOracle,
}

/// A validated config turned into model objects.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: RunConfig,
    /// Arms with seed 0; each replication reseeds.
    pub environment: Environment,
    pub problem: OracleProblem,
    pub policy: PolicyKind,
    pub optimum: Strategy,
    /// Optimal mean reward, normalized units.
    pub lambda1: f64,
    pub beta: f64,
    pub scale: f64,
}

fn parse_at<T: DeserializeOwned>(prefix: &str, value: Value) -> Result<T, ConfigError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." {
            prefix.to_string()
        } else {
            format!("{prefix}.{inner}")
        };
        ConfigError::at(&path, e.into_inner())
    })
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ConfigError::at(&path, e.into_inner())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.horizon == 0 {
            return Err(ConfigError::at("horizon", "must be at least 1"));
        }
        if self.replications == 0 {
            return Err(ConfigError::at("replications", "must be at least 1"));
        }
        if self.scenario == Scenario::Custom && self.instance.is_none() {
            return Err(ConfigError::at(
                "instance",
                "required for the custom scenario",
            ));
        }
        Ok(())
    }

    /// Validates the payload and assembles environment, oracle and optimum.
    pub fn build(&self) -> Result<Experiment, ConfigError> {
        self.validate()?;
        let family: RewardFamily = self.family.into();
        let mwis_mode = match self.oracle_mode {
            OracleMode::Exact => MwisMode::Exact,
            OracleMode::Greedy => MwisMode::Greedy,
        };
        let invalid = |e: cmab_core::Error| ConfigError::at("instance", e);
        let (environment, problem, scale) = match self.scenario {
            Scenario::AdPlacement => {
                let inst: AdPlacementInstance = match &self.instance {
                    Some(v) => parse_at("instance", v.clone())?,
                    None => AdPlacementInstance {
                        click_rates: scenarios::ad_click_rates(),
                        bids: scenarios::ad_bids(),
                        threshold: scenarios::AD_THRESHOLD,
                        max_ads: scenarios::AD_SLOTS,
                    },
                };
                if inst.click_rates.len() != inst.bids.len() {
                    return Err(ConfigError::at(
                        "instance.bids",
                        "length differs from click_rates",
                    ));
                }
                let env = arms_env(&inst.click_rates, family, 1.0).map_err(invalid)?;
                let problem = ThresholdInstance::new(inst.bids, inst.threshold, inst.max_ads)
                    .map(OracleProblem::ThresholdSubset)
                    .map_err(invalid)?;
                (env, problem, 1.0)
            }
            Scenario::ChannelAccess => {
                let inst: ChannelAccessInstance = match &self.instance {
                    Some(v) => parse_at("instance", v.clone())?,
                    None => ChannelAccessInstance {
                        conflicts: scenarios::CHANNEL_CONFLICTS
                            .iter()
                            .map(|r| r.to_vec())
                            .collect(),
                        rates: scenarios::CHANNEL_RATES
                            .iter()
                            .map(|r| r.to_vec())
                            .collect(),
                    },
                };
                let users = inst.conflicts.len();
                if inst.rates.len() != users {
                    return Err(ConfigError::at(
                        "instance.rates",
                        "one row per user required",
                    ));
                }
                let channels = inst.rates.first().map_or(0, Vec::len);
                if inst.rates.iter().any(|r| r.len() != channels) {
                    return Err(ConfigError::at(
                        "instance.rates",
                        "rows must have equal length",
                    ));
                }
                let g = ConflictGraph::from_rows(&inst.conflicts, channels)
                    .map_err(|e| ConfigError::at("instance.conflicts", e))?;
                let raw: Vec<f64> = inst.rates.iter().flatten().copied().collect();
                let (env, scale) = normalize_environment(&raw, family, 0)
                    .map_err(|e| ConfigError::at("instance.rates", e))?;
                let h = build_extended_conflict_graph(&g);
                let problem = MwisInstance::new(h, mwis_mode, Some(users))
                    .map(OracleProblem::Mwis)
                    .map_err(invalid)?;
                (env, problem, scale)
            }
            Scenario::ShortestPath => {
                let inst: ShortestPathInstance = match &self.instance {
                    Some(v) => parse_at("instance", v.clone())?,
                    None => ShortestPathInstance {
                        nodes: scenarios::DEMO_NODES,
                        edges: scenarios::DEMO_EDGES
                            .iter()
                            .map(|&(from, to, mean_delay)| EdgeSpec {
                                from,
                                to,
                                mean_delay,
                            })
                            .collect(),
                        source: scenarios::DEMO_SOURCE,
                        sink: scenarios::DEMO_SINK,
                    },
                };
                if let Some(i) = inst
                    .edges
                    .iter()
                    .position(|e| !(0.0..=1.0).contains(&e.mean_delay))
                {
                    return Err(ConfigError::at(
                        &format!("instance.edges[{i}].mean_delay"),
                        "must lie in [0, 1]",
                    ));
                }
                let gains: Vec<f64> = inst.edges.iter().map(|e| 1.0 - e.mean_delay).collect();
                let env = arms_env(&gains, family, 1.0).map_err(invalid)?;
                let graph = DiGraph::new(
                    inst.nodes,
                    inst.edges.iter().map(|e| (e.from, e.to)).collect(),
                )
                .map_err(|e| ConfigError::at("instance.edges", e))?;
                let direction = match self.path_direction {
                    DirectionSpec::MinDelay => PathDirection::MinDelay,
                    DirectionSpec::GainOptimism => PathDirection::GainOptimism,
                };
                let problem = PathInstance::new(graph, inst.source, inst.sink, direction)
                    .map(OracleProblem::Path)
                    .map_err(invalid)?;
                (env, problem, 1.0)
            }
            Scenario::Custom => {
                let v = self.instance.clone().expect("validated");
                let inst: CustomInstance = parse_at("instance", v)?;
                let (env, scale) = if inst.normalize {
                    normalize_environment(&inst.means, family, 0)
                        .map_err(|e| ConfigError::at("instance.means", e))?
                } else {
                    (
                        arms_env(&inst.means, family, 1.0)
                            .map_err(|e| ConfigError::at("instance.means", e))?,
                        1.0,
                    )
                };
                let problem = custom_problem(inst.oracle, mwis_mode, env.num_arms())
                    .map_err(|e| ConfigError::at("instance.oracle", e))?;
                (env, problem, scale)
            }
        };
        if problem.num_arms() != environment.num_arms() {
            return Err(ConfigError::at(
                "instance",
                format!(
                    "oracle has {} arms but the environment has {}",
                    problem.num_arms(),
                    environment.num_arms()
                ),
            ));
        }
        let (optimum, lambda1) = static_optimum(&environment.means(), &problem).map_err(invalid)?;
        let policy = match self.policy {
            PolicyName::Dfl => PolicyKind::Dfl,
            PolicyName::Llr => PolicyKind::Llr,
            PolicyName::Moss => PolicyKind::NaiveMoss {
                horizon: self.horizon,
            },
        };
        let beta = problem.beta();
        Ok(Experiment {
            config: self.clone(),
            environment,
            problem,
            policy,
            optimum,
            lambda1,
            beta,
            scale,
        })
    }
}

fn arms_env(means: &[f64], family: RewardFamily, scale: f64) -> cmab_core::Result<Environment> {
    let arms = means
        .iter()
        .map(|&m| ArmModel::new(m, family, scale))
        .collect::<cmab_core::Result<Vec<_>>>()?;
    Environment::new(arms, 0)
}

fn custom_problem(
    spec: CustomOracle,
    mode: MwisMode,
    arms: usize,
) -> cmab_core::Result<OracleProblem> {
    Ok(match spec {
        CustomOracle::Exhaustive { strategies } => {
            let list = strategies
                .into_iter()
                .map(Strategy::new)
                .collect::<cmab_core::Result<Vec<_>>>()?;
            OracleProblem::exhaustive(arms, list)?
        }
        CustomOracle::Threshold {
            bids,
            threshold,
            max_size,
        } => OracleProblem::ThresholdSubset(ThresholdInstance::new(bids, threshold, max_size)?),
        CustomOracle::Path {
            nodes,
            edges,
            source,
            sink,
        } => OracleProblem::Path(PathInstance::new(
            DiGraph::new(nodes, edges)?,
            source,
            sink,
            PathDirection::GainOptimism,
        )?),
        CustomOracle::Mwis { nodes, edges } => OracleProblem::Mwis(MwisInstance::new(
            UndirectedGraph::new(nodes, &edges)?,
            mode,
            None,
        )?),
        CustomOracle::Conflict {
            conflicts,
            channels,
        } => {
            let g = ConflictGraph::from_rows(&conflicts, channels)?;
            let users = g.users();
            OracleProblem::Mwis(MwisInstance::new(
                build_extended_conflict_graph(&g),
                mode,
                Some(users),
            )?)
        }
    })
}

/// Built-in scenario configs: `ad_placement`, `channel_access`, `shortest_path_demo`.
///
/// Defaults: DFL, exact oracle, horizon 2000, 20 replications, seed 1,
/// Bernoulli rewards; the instance data is embedded.
pub fn builtin_scenario(name: &str) -> Result<RunConfig, ConfigError> {
    let scenario = match name {
        "ad_placement" => Scenario::AdPlacement,
        "channel_access" => Scenario::ChannelAccess,
        "shortest_path_demo" => Scenario::ShortestPath,
        other => return Err(ConfigError::UnknownScenario(other.to_string())),
    };
    Ok(RunConfig {
        scenario,
        policy: PolicyName::Dfl,
        oracle_mode: OracleMode::Exact,
        horizon: 2000,
        replications: 20,
        seed: 1,
        family: FamilySpec::Bernoulli,
        path_direction: DirectionSpec::GainOptimism,
        instance: None,
    })
}
