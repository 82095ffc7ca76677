//! Built-in instance data.

use alloc::vec::Vec;

use crate::error::Result;
use crate::oracle::{
    build_extended_conflict_graph, ConflictGraph, DiGraph, MwisInstance, MwisMode, OracleProblem,
    PathDirection, PathInstance, ThresholdInstance,
};

/// Ad categories: (mean click-through rate, bid).
pub const AD_CATEGORIES: [(f64, f64); 10] = [
    (0.4506, 640.9853),
    (0.7279, 173.41842),
    (0.8377, 924.09434),
    (0.1662, 601.3466),
    (0.8055, 705.72878),
    (0.7732, 759.04837),
    (0.2179, 302.2392),
    (0.2688, 809.4084),
    (0.3722, 421.9816),
    (0.6971, 771.5156),
];
pub const AD_THRESHOLD: f64 = 3000.0;
pub const AD_SLOTS: usize = 5;

pub fn ad_click_rates() -> Vec<f64> {
    AD_CATEGORIES.iter().map(|c| c.0).collect()
}

pub fn ad_bids() -> Vec<f64> {
    AD_CATEGORIES.iter().map(|c| c.1).collect()
}

pub fn ad_placement_problem() -> Result<OracleProblem> {
    Ok(OracleProblem::ThresholdSubset(ThresholdInstance::new(
        ad_bids(),
        AD_THRESHOLD,
        AD_SLOTS,
    )?))
}

/// User conflict matrix of the five-user network.
pub const CHANNEL_CONFLICTS: [[u8; 5]; 5] = [
    [1, 1, 1, 1, 0],
    [1, 1, 1, 0, 1],
    [1, 1, 1, 1, 0],
    [1, 0, 1, 1, 0],
    [0, 1, 0, 0, 1],
];

/// Mean data rate of user `i` (row) on channel `j` (column).
pub const CHANNEL_RATES: [[f64; 5]; 5] = [
    [631.98, 369.81, 128.43, 191.70, 155.64],
    [432.00, 53.93, 598.08, 30.93, 551.52],
    [199.55, 26.00, 1175.17, 524.34, 147.69],
    [127.38, 53.73, 68.34, 937.44, 117.62],
    [311.04, 101.28, 171.95, 436.45, 62.19],
];

pub fn channel_conflict_graph() -> Result<ConflictGraph> {
    let rows: Vec<Vec<u8>> = CHANNEL_CONFLICTS.iter().map(|r| r.to_vec()).collect();
    ConflictGraph::from_rows(&rows, CHANNEL_RATES[0].len())
}

/// Raw rates flattened in extended-graph node order (`user · M + channel`).
pub fn channel_raw_rates() -> Vec<f64> {
    CHANNEL_RATES.iter().flatten().copied().collect()
}

pub fn channel_access_problem(mode: MwisMode) -> Result<OracleProblem> {
    let g = channel_conflict_graph()?;
    let h = build_extended_conflict_graph(&g);
    Ok(OracleProblem::Mwis(MwisInstance::new(
        h,
        mode,
        Some(g.users()),
    )?))
}

/// Demo network: 6 nodes in layers {0} {1,2} {3,4} {5}; every source-sink
/// path has three edges, so maximizing gains `1 - delay` is the same as
/// minimizing delay. Entries are `(from, to, mean delay)`; edge `e` is arm `e`.
pub const DEMO_EDGES: [(usize, usize, f64); 8] = [
    (0, 1, 0.2),
    (0, 2, 0.5),
    (1, 3, 0.6),
    (1, 4, 0.3),
    (2, 3, 0.1),
    (2, 4, 0.4),
    (3, 5, 0.3),
    (4, 5, 0.5),
];
pub const DEMO_NODES: usize = 6;
pub const DEMO_SOURCE: usize = 0;
pub const DEMO_SINK: usize = 5;

/// Per-edge mean gains `1 - delay`.
pub fn demo_gains() -> Vec<f64> {
    DEMO_EDGES.iter().map(|e| 1.0 - e.2).collect()
}

pub fn shortest_path_demo_problem(direction: PathDirection) -> Result<OracleProblem> {
    let graph = DiGraph::new(DEMO_NODES, DEMO_EDGES.iter().map(|e| (e.0, e.1)).collect())?;
    Ok(OracleProblem::Path(PathInstance::new(
        graph,
        DEMO_SOURCE,
        DEMO_SINK,
        direction,
    )?))
}

/// Diagonal-only variant of the channel network (no inter-user conflicts).
pub fn channel_access_without_conflicts() -> Result<OracleProblem> {
    let n = CHANNEL_CONFLICTS.len();
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|i| (0..n).map(|p| u8::from(i == p)).collect())
        .collect();
    let g = ConflictGraph::from_rows(&rows, CHANNEL_RATES[0].len())?;
    let h = build_extended_conflict_graph(&g);
    Ok(OracleProblem::Mwis(MwisInstance::new(
        h,
        MwisMode::Exact,
        Some(n),
    )?))
}
