use cmab::config::{builtin_scenario, ConfigError, PolicyName, RunConfig};
use cmab::harness::{self, replication_seed};
use cmab::output::{write_summary, write_trace};
use cmab_core::Strategy;

fn small(name: &str, policy: PolicyName, horizon: u64, replications: u32) -> RunConfig {
    let mut cfg = builtin_scenario(name).unwrap();
    cfg.policy = policy;
    cfg.horizon = horizon;
    cfg.replications = replications;
    cfg
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn single_round_gives_one_row_per_replication() {
    for policy in [PolicyName::Dfl, PolicyName::Llr, PolicyName::Moss] {
        let out = harness::run(&small("ad_placement", policy, 1, 7)).unwrap();
        assert_eq!(out.traces.len(), 7);
        assert!(out.traces.iter().all(|r| r.t == 1));
        assert_eq!(out.summary.rows.len(), 1);
    }
}

#[test]
fn rows_satisfy_ledger_identities() {
    for (name, mode) in [
        ("ad_placement", "exact"),
        ("channel_access", "exact"),
        ("channel_access", "greedy"),
        ("shortest_path_demo", "exact"),
    ] {
        let mut cfg = small(name, PolicyName::Dfl, 150, 3);
        cfg.oracle_mode = serde_json::from_value(serde_json::json!(mode)).unwrap();
        let out = harness::run(&cfg).unwrap();
        let (l1, beta) = (out.summary.lambda1, out.summary.beta);
        for r in &out.traces {
            let t = r.t as f64;
            assert!(
                rel_close(t * r.avg_regret + r.cum_reward, t * l1, 1e-9),
                "{name}: {r:?}"
            );
            assert!(rel_close(
                t * r.avg_beta_regret + r.cum_reward,
                t * l1 / beta,
                1e-9
            ));
            assert!(r.avg_beta_regret <= r.avg_regret);
            assert!(r.reward >= 0.0 && r.reward <= r.strategy.len() as f64);
        }
    }
}

#[test]
fn rows_ordered_by_replication_then_round() {
    let out = harness::run(&small("channel_access", PolicyName::Llr, 40, 6)).unwrap();
    let keys: Vec<(u32, u64)> = out.traces.iter().map(|r| (r.replication, r.t)).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 240);
}

#[test]
fn summary_is_mean_over_replications() {
    let out = harness::run(&small("ad_placement", PolicyName::Dfl, 60, 5)).unwrap();
    for row in &out.summary.rows {
        let vals: Vec<f64> = out
            .traces
            .iter()
            .filter(|r| r.t == row.t)
            .map(|r| r.avg_regret)
            .collect();
        assert_eq!(vals.len(), 5);
        let mean = vals.iter().sum::<f64>() / 5.0;
        assert!((mean - row.mean_avg_regret).abs() < 1e-12);
    }
}

#[test]
fn reruns_are_byte_identical() {
    let cfg = small("channel_access", PolicyName::Dfl, 200, 4);
    let render = || {
        let out = harness::run(&cfg).unwrap();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        write_trace(&mut a, &out.traces).unwrap();
        write_summary(&mut b, &out.summary).unwrap();
        (a, b)
    };
    assert_eq!(render(), render());
}

#[test]
fn replications_do_not_affect_each_other() {
    let few = harness::run(&small("ad_placement", PolicyName::Dfl, 100, 2)).unwrap();
    let many = harness::run(&small("ad_placement", PolicyName::Dfl, 100, 5)).unwrap();
    assert_eq!(few.traces[..], many.traces[..few.traces.len()]);
    // Dropping replication 1 leaves replication 3 unchanged.
    let mut cfg = small("ad_placement", PolicyName::Dfl, 100, 4);
    let full = harness::run(&cfg).unwrap();
    cfg.replications = 1;
    cfg.seed = replication_seed(1, 3);
    let alone = harness::run(&cfg).unwrap();
    let rep3: Vec<_> = full.traces.iter().filter(|r| r.replication == 3).collect();
    for (a, b) in rep3.iter().zip(&alone.traces) {
        assert_eq!((a.t, &a.strategy, a.reward), (b.t, &b.strategy, b.reward));
    }
}

#[test]
fn different_seeds_give_different_traces() {
    let a = harness::run(&small("ad_placement", PolicyName::Dfl, 100, 1)).unwrap();
    let mut cfg = small("ad_placement", PolicyName::Dfl, 100, 1);
    cfg.seed = 99;
    let b = harness::run(&cfg).unwrap();
    assert_ne!(a.traces, b.traces);
}

#[test]
fn builtin_scenarios_match_their_instances() {
    let ad = builtin_scenario("ad_placement").unwrap().build().unwrap();
    assert_eq!(ad.environment.num_arms(), 10);
    assert!((ad.lambda1 - 3.8414).abs() <= 1e-9);
    assert_eq!(ad.optimum, Strategy::new(vec![1, 2, 4, 5, 9]).unwrap());

    let ch = builtin_scenario("channel_access").unwrap().build().unwrap();
    assert_eq!(ch.environment.num_arms(), 25);
    assert!((ch.lambda1 * ch.scale - 3732.56).abs() <= 0.01);

    // The demo optimum is checked against a sweep over every source-sink path.
    let sp = builtin_scenario("shortest_path_demo")
        .unwrap()
        .build()
        .unwrap();
    let means = sp.environment.means();
    let paths = sp.problem.enumerate_feasible(1000).unwrap();
    assert!(paths.len() > 1);
    let best = paths
        .iter()
        .map(|p| p.arms().iter().map(|&a| means[a]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((sp.lambda1 - best).abs() < 1e-12);

    assert!(matches!(
        builtin_scenario("nope"),
        Err(ConfigError::UnknownScenario(_))
    ));
}

#[test]
fn custom_single_strategy_is_the_optimum() {
    let cfg = RunConfig::from_json(
        r#"{"scenario":"custom","policy":"dfl","horizon":30,"replications":2,"seed":5,
            "instance":{"means":[0.1,0.9,0.4],"oracle":{"exhaustive":{"strategies":[[0,2]]}}}}"#,
    )
    .unwrap();
    let exp = cfg.build().unwrap();
    assert_eq!(exp.optimum, Strategy::new(vec![0, 2]).unwrap());
    let out = harness::run(&cfg).unwrap();
    assert!(out.traces.iter().all(|r| r.strategy == exp.optimum));
}

#[test]
fn config_errors_name_the_field() {
    let bad_type =
        r#"{"scenario":"ad_placement","policy":"dfl","horizon":"ten","replications":1,"seed":1}"#;
    let msg = RunConfig::from_json(bad_type).unwrap_err().to_string();
    assert!(msg.contains("horizon"), "{msg}");

    let zero =
        r#"{"scenario":"ad_placement","policy":"dfl","horizon":0,"replications":1,"seed":1}"#;
    assert!(RunConfig::from_json(zero)
        .unwrap_err()
        .to_string()
        .contains("horizon"));

    let unknown = r#"{"scenario":"ad_placement","policy":"dfl","horizon":5,"replications":1,"seed":1,"extra":2}"#;
    assert!(RunConfig::from_json(unknown)
        .unwrap_err()
        .to_string()
        .contains("extra"));

    let payload = r#"{"scenario":"ad_placement","policy":"dfl","horizon":5,"replications":1,"seed":1,
        "instance":{"click_rates":[0.5],"bids":["x"],"threshold":1.0,"max_ads":1}}"#;
    let cfg = RunConfig::from_json(payload).unwrap();
    let msg = cfg.build().unwrap_err().to_string();
    assert!(msg.contains("instance.bids[0]"), "{msg}");

    let bad_rate = r#"{"scenario":"custom","policy":"dfl","horizon":5,"replications":1,"seed":1,
        "instance":{"means":[1.5],"oracle":{"exhaustive":{"strategies":[[0]]}}}}"#;
    let cfg = RunConfig::from_json(bad_rate).unwrap();
    assert!(cfg.build().is_err());
}

#[test]
fn config_round_trips_through_json() {
    let cfg = builtin_scenario("channel_access").unwrap();
    assert_eq!(RunConfig::from_json(&cfg.to_json()).unwrap(), cfg);
}

#[test]
fn compare_uses_common_seeds() {
    let cfg = small("ad_placement", PolicyName::Dfl, 80, 3);
    let cmp = harness::compare(&cfg, &[PolicyName::Dfl, PolicyName::Llr]).unwrap();
    let solo = harness::run(&cfg).unwrap();
    assert_eq!(cmp.summaries[0], solo.summary);
    assert_eq!(cmp.summaries[1].policy, PolicyName::Llr);
}

#[test]
fn dfl_not_worse_than_llr_on_ad_placement() {
    let cfg = builtin_scenario("ad_placement").unwrap();
    assert_eq!((cfg.horizon, cfg.replications), (2000, 20));
    let cmp = harness::compare(&cfg, &[PolicyName::Dfl, PolicyName::Llr]).unwrap();
    let last = |i: usize| cmp.summaries[i].rows.last().unwrap().mean_avg_regret;
    assert!(last(0) <= last(1), "dfl {} llr {}", last(0), last(1));
}
