#![allow(clippy::needless_range_loop)]

use super::*;
use crate::scenarios;
use crate::strategy::Strategy;
use alloc::vec;
use alloc::vec::Vec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(arms: &[usize]) -> Strategy {
    Strategy::new(arms.to_vec()).unwrap()
}

#[test]
fn exhaustive_two_options() {
    let p = OracleProblem::exhaustive(2, vec![s(&[0]), s(&[1])]).unwrap();
    let sel = maximize(&p, &[0.2, 0.9]).unwrap();
    assert_eq!(
        sel,
        Selection {
            strategy: s(&[1]),
            value: 0.9,
            beta: 1.0
        }
    );
    assert!(OracleProblem::exhaustive(2, vec![]).is_err());
    assert!(OracleProblem::exhaustive(2, vec![s(&[2])]).is_err());
}

#[test]
fn exhaustive_ties_are_lexicographic() {
    let p = OracleProblem::exhaustive(4, vec![s(&[1, 3]), s(&[0, 2]), s(&[1, 2])]).unwrap();
    let sel = maximize(&p, &[0.5, 0.5, 0.5, 0.5]).unwrap();
    assert_eq!(sel.strategy, s(&[0, 2]));
}

#[test]
fn ad_placement_static_optimum() {
    let p = scenarios::ad_placement_problem().unwrap();
    let sel = maximize(&p, &scenarios::ad_click_rates()).unwrap();
    assert_eq!(sel.strategy, s(&[1, 2, 4, 5, 9]));
    assert!((sel.value - 3.8414).abs() <= 1e-9);
    assert_eq!(sel.beta, 1.0);
    let OracleProblem::ThresholdSubset(t) = &p else {
        unreachable!()
    };
    assert!((t.bid_sum(&sel.strategy) - 3333.80551).abs() < 1e-9);
}

#[test]
fn threshold_singleton_and_infeasible() {
    let bids = scenarios::ad_bids();
    let w = scenarios::ad_click_rates();
    assert_eq!(threshold_subset_max(&w, &bids, -1.0, 1).unwrap(), s(&[2]));
    let all: f64 = bids.iter().sum();
    assert_eq!(
        threshold_subset_max(&w, &bids, all, 10),
        Err(Error::NoFeasibleStrategy)
    );
}

#[test]
fn threshold_dp_matches_enumeration_on_integer_bids() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let k = rng.gen_range(1..=12);
        let cap = rng.gen_range(1..=k.min(4));
        let bids: Vec<f64> = (0..k).map(|_| rng.gen_range(0..50) as f64).collect();
        let h = rng.gen_range(-5.0..120.0);
        let w: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
        let inst = ThresholdInstance::new(bids.clone(), h, cap).unwrap();
        let en = threshold_subset_max(&w, &bids, h, cap);
        let dp = inst.dynamic_program(&w, Some(1.0));
        match (en, dp) {
            (Ok(a), Ok(b)) => {
                let va: f64 = a.arms().iter().map(|&i| w[i]).sum();
                let vb: f64 = b.arms().iter().map(|&i| w[i]).sum();
                assert!((va - vb).abs() < 1e-12);
                assert!(inst.is_feasible(&b));
            }
            (Err(a), Err(b)) => assert_eq!(a, b),
            (a, b) => panic!("{a:?} vs {b:?}"),
        }
    }
}

#[test]
fn threshold_dp_is_used_above_enumeration_limit() {
    let k = 30;
    let bids: Vec<f64> = (0..k).map(|i| 10.0 + i as f64).collect();
    let w: Vec<f64> = (0..k).map(|i| if i % 3 == 0 { 0.9 } else { 0.1 }).collect();
    let got = threshold_subset_max(&w, &bids, 100.0, 4).unwrap();
    let inst = ThresholdInstance::new(bids, 100.0, 4).unwrap();
    assert!(inst.is_feasible(&got));
    // Four 0.9-weight arms can clear the threshold.
    let v: f64 = got.arms().iter().map(|&i| w[i]).sum();
    assert!((v - 3.6).abs() < 1e-12);
}

fn two_parallel_edges(direction: PathDirection) -> PathInstance {
    let g = DiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
    PathInstance::new(g, 0, 1, direction).unwrap()
}

#[test]
fn path_two_parallel_edges() {
    let p = two_parallel_edges(PathDirection::MinDelay);
    let lit = shortest_path_select(&p, &[0.3, 0.7], PathDirection::MinDelay).unwrap();
    assert_eq!(lit, s(&[0]));
    let gain = shortest_path_select(&p, &[0.3, 0.7], PathDirection::GainOptimism).unwrap();
    assert_eq!(gain, s(&[1]));
    let sel = maximize(&OracleProblem::Path(p), &[0.3, 0.7]).unwrap();
    assert_eq!(sel.value, 0.3);
}

#[test]
fn path_single_route_is_forced() {
    let g = DiGraph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
    let p = PathInstance::new(g, 0, 3, PathDirection::GainOptimism).unwrap();
    for dir in [PathDirection::MinDelay, PathDirection::GainOptimism] {
        assert_eq!(
            shortest_path_select(&p, &[0.9, 0.1, 0.5], dir).unwrap(),
            s(&[0, 1, 2])
        );
    }
}

#[test]
fn path_errors() {
    let g = DiGraph::new(3, vec![(0, 1)]).unwrap();
    assert_eq!(
        PathInstance::new(g, 0, 2, PathDirection::GainOptimism),
        Err(Error::NoFeasibleStrategy)
    );
    let cyclic = DiGraph::new(3, vec![(0, 1), (1, 0), (1, 2)]).unwrap();
    let p = PathInstance::new(cyclic, 0, 2, PathDirection::GainOptimism).unwrap();
    assert!(matches!(
        shortest_path_select(&p, &[0.1, 0.2, 0.3], PathDirection::GainOptimism),
        Err(Error::UnsupportedInstance(_))
    ));
    // Nonnegative costs on a cyclic graph are fine when minimizing.
    let got = shortest_path_select(&p, &[0.1, 0.2, 0.3], PathDirection::MinDelay).unwrap();
    assert_eq!(got, s(&[0, 2]));
}

#[test]
fn path_cold_edges_are_explored_in_both_directions() {
    let p = two_parallel_edges(PathDirection::MinDelay);
    let w = [0.1, f64::INFINITY];
    for dir in [PathDirection::MinDelay, PathDirection::GainOptimism] {
        assert_eq!(shortest_path_select(&p, &w, dir).unwrap(), s(&[1]));
    }
}

fn triangle() -> UndirectedGraph {
    UndirectedGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
}

#[test]
fn mwis_exact_examples() {
    let (set, v) = mwis_exact(&UndirectedGraph::edgeless(3), &[1.0, 2.0, 3.0]).unwrap();
    assert_eq!((set, v), (s(&[0, 1, 2]), 6.0));
    let (set, v) = mwis_exact(&triangle(), &[5.0, 1.0, 1.0]).unwrap();
    assert_eq!((set, v), (s(&[0]), 5.0));
    let big = UndirectedGraph::edgeless(MWIS_NODE_LIMIT + 1);
    assert!(matches!(
        mwis_exact(&big, &vec![1.0; MWIS_NODE_LIMIT + 1]),
        Err(Error::InstanceTooLarge { .. })
    ));
}

#[test]
fn mwis_greedy_examples() {
    let (set, v, beta) = mwis_greedy(&UndirectedGraph::edgeless(4), &[1.0, 2.0, 3.0, 4.0]).unwrap();
    assert_eq!((set, v, beta), (s(&[0, 1, 2, 3]), 10.0, 1.0));

    // Star K_{1,4}: centre ratio 10/5 = 2 beats leaf ratio 3/2, so the greedy
    // rule takes the centre; the guarantee 10 · 5 ≥ 12 still holds.
    let star = UndirectedGraph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    let w = [10.0, 3.0, 3.0, 3.0, 3.0];
    let (set, v, beta) = mwis_greedy(&star, &w).unwrap();
    assert_eq!((set, v, beta), (s(&[0]), 10.0, 5.0));
    let (exact, opt) = mwis_exact(&star, &w).unwrap();
    assert_eq!((exact, opt), (s(&[1, 2, 3, 4]), 12.0));
    assert!(v * beta >= opt);
}

#[test]
fn channel_access_optimum() {
    let p = scenarios::channel_access_problem(MwisMode::Exact).unwrap();
    let sel = maximize(&p, &scenarios::channel_raw_rates()).unwrap();
    assert!((sel.value - 3732.56).abs() <= 0.01, "{}", sel.value);
    let g = scenarios::channel_conflict_graph().unwrap();
    assert!(is_valid_assignment(&g, sel.strategy.arms()));
    // user 0 → ch 0, user 1 → ch 4, user 2 → ch 2, user 3 → ch 3, user 4 → ch 3
    assert_eq!(sel.strategy, s(&[0, 9, 12, 18, 23]));
}

#[test]
fn channel_access_without_conflicts_takes_row_maxima() {
    let p = scenarios::channel_access_without_conflicts().unwrap();
    let sel = maximize(&p, &scenarios::channel_raw_rates()).unwrap();
    assert!((sel.value - 3779.12).abs() < 1e-9);
}

#[test]
fn extended_graph_edge_count_from_matrix() {
    let g = scenarios::channel_conflict_graph().unwrap();
    // Off-diagonal ones in the upper triangle, counted straight from the table.
    let mut pairs = 0;
    for i in 0..5 {
        for p in i + 1..5 {
            pairs += usize::from(scenarios::CHANNEL_CONFLICTS[i][p]);
        }
    }
    assert_eq!(pairs, 6);
    let h = build_extended_conflict_graph(&g);
    assert_eq!(h.nodes(), 25);
    assert_eq!(h.edge_count(), 5 * 10 + 5 * pairs);
    assert_eq!(h.max_degree(), 4 + 3);
}

#[test]
fn enumerate_feasible_sets() {
    let p = scenarios::ad_placement_problem().unwrap();
    let all = p.enumerate_feasible(10_000).unwrap();
    assert!(all.iter().all(|x| p.is_feasible(x)));
    assert!(matches!(
        p.enumerate_feasible(3),
        Err(Error::InstanceTooLarge { .. })
    ));
    let tri = OracleProblem::Mwis(MwisInstance::new(triangle(), MwisMode::Exact, None).unwrap());
    assert_eq!(
        tri.enumerate_feasible(10).unwrap(),
        vec![s(&[0]), s(&[1]), s(&[2])]
    );
    assert_eq!(tri.max_strategy_len(), 1);
}

// ---- brute-force references (independent of the oracle code paths) ----

fn mask_sum(mask: u32, w: &[f64]) -> f64 {
    (0..w.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| w[i])
        .sum()
}

fn brute_threshold(w: &[f64], bids: &[f64], h: f64, cap: usize) -> Option<f64> {
    let k = w.len();
    (1u32..1 << k)
        .filter(|m| m.count_ones() as usize <= cap && mask_sum(*m, bids) > h)
        .map(|m| mask_sum(m, w))
        .max_by(f64::total_cmp)
}

fn brute_mwis(n: usize, edges: &[(usize, usize)], w: &[f64]) -> f64 {
    (0u32..1 << n)
        .filter(|m| {
            edges
                .iter()
                .all(|&(u, v)| !(m >> u & 1 == 1 && m >> v & 1 == 1))
        })
        .map(|m| mask_sum(m, w))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// All source-sink paths by recursion over edges (no oracle code).
fn brute_paths(nodes: usize, edges: &[(usize, usize)], src: usize, dst: usize) -> Vec<Vec<usize>> {
    fn go(
        at: usize,
        dst: usize,
        edges: &[(usize, usize)],
        seen: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == dst {
            out.push(cur.clone());
            return;
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u == at && !seen[v] {
                seen[v] = true;
                cur.push(e);
                go(v, dst, edges, seen, cur, out);
                cur.pop();
                seen[v] = false;
            }
        }
    }
    let mut seen = vec![false; nodes];
    seen[src] = true;
    let mut out = Vec::new();
    go(src, dst, edges, &mut seen, &mut Vec::new(), &mut out);
    out
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

#[test]
fn greedy_ratio_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let n = rng.gen_range(1..=16);
        let p = rng.gen_range(0.05..0.8);
        let edges = random_graph(&mut rng, n, p);
        let g = UndirectedGraph::new(n, &edges).unwrap();
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        let (exact_set, exact) = mwis_exact(&g, &w).unwrap();
        let (gset, gv, beta) = mwis_greedy(&g, &w).unwrap();
        assert!(g.is_independent(gset.arms()) && g.is_independent(exact_set.arms()));
        assert!(
            gv * beta >= exact - 1e-9,
            "greedy {gv} beta {beta} exact {exact}"
        );
        assert!((exact - brute_mwis(n, &edges, &w)).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn threshold_matches_brute_force(
        k in 1usize..=12,
        cap in 1usize..=4,
        bids in proptest::collection::vec(0.0f64..100.0, 12),
        w in proptest::collection::vec(0.0f64..1.0, 12),
        frac in -0.1f64..0.9,
    ) {
        let cap = cap.min(k);
        let (bids, w) = (&bids[..k], &w[..k]);
        let h = frac * bids.iter().sum::<f64>();
        let got = threshold_subset_max(w, bids, h, cap);
        match brute_threshold(w, bids, h, cap) {
            None => prop_assert_eq!(got, Err(Error::NoFeasibleStrategy)),
            Some(best) => {
                let got = got.unwrap();
                let inst = ThresholdInstance::new(bids.to_vec(), h, cap).unwrap();
                prop_assert!(inst.is_feasible(&got));
                let v: f64 = got.arms().iter().map(|&i| w[i]).sum();
                prop_assert!((v - best).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn mwis_exact_matches_brute_force(
        n in 1usize..=12,
        density in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_graph(&mut rng, n, density);
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..5.0)).collect();
        let g = UndirectedGraph::new(n, &edges).unwrap();
        let (set, v) = mwis_exact(&g, &w).unwrap();
        prop_assert!(g.is_independent(set.arms()));
        prop_assert!((v - brute_mwis(n, &edges, &w)).abs() < 1e-9);
        let (again, _) = mwis_exact(&g, &w).unwrap();
        prop_assert_eq!(set, again);
    }

    #[test]
    fn dag_paths_match_brute_force(
        nodes in 3usize..=7,
        density in 0.2f64..1.0,
        seed in any::<u64>(),
        literal in any::<bool>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Forward edges only (acyclic), spine 0→1→…→n-1 guarantees a path.
        let mut edges: Vec<(usize, usize)> = (0..nodes - 1).map(|u| (u, u + 1)).collect();
        for u in 0..nodes {
            for v in u + 2..nodes {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let w: Vec<f64> = edges.iter().map(|_| rng.gen_range(0.0..1.0)).collect();
        let dir = if literal { PathDirection::MinDelay } else { PathDirection::GainOptimism };
        let inst = PathInstance::new(DiGraph::new(nodes, edges.clone()).unwrap(), 0, nodes - 1, dir).unwrap();
        let got = shortest_path_select(&inst, &w, dir).unwrap();
        prop_assert!(inst.is_feasible(&got));
        let sums: Vec<f64> = brute_paths(nodes, &edges, 0, nodes - 1)
            .iter()
            .map(|p| p.iter().map(|&e| w[e]).sum())
            .collect();
        let best = if literal {
            sums.iter().copied().fold(f64::INFINITY, f64::min)
        } else {
            sums.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        };
        let v: f64 = got.arms().iter().map(|&e| w[e]).sum();
        prop_assert!((v - best).abs() < 1e-9);
    }

    #[test]
    fn extended_graph_independent_sets_are_valid_assignments(
        users in 1usize..=4,
        channels in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = vec![vec![false; users]; users];
        for i in 0..users {
            for p in i + 1..users {
                let c = rng.gen_bool(0.5);
                m[i][p] = c;
                m[p][i] = c;
            }
        }
        let g = ConflictGraph::new(m, channels).unwrap();
        let h = build_extended_conflict_graph(&g);
        prop_assert_eq!(h.nodes(), users * channels);
        let n = h.nodes();
        for mask in 0u32..1 << n {
            let nodes: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            prop_assert_eq!(h.is_independent(&nodes), is_valid_assignment(&g, &nodes));
        }
    }
}
