//! Maximum-weight independent sets: exact branch-and-bound and greedy.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::score::{scores, Score};
use crate::error::{Error, Result};
use crate::strategy::Strategy;

/// Node budget of [`mwis_exact`]; node sets are 64-bit masks.
pub const MWIS_NODE_LIMIT: usize = 40;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    /// Parallel edges are merged; self-loops are rejected.
    pub fn new(nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); nodes];
        for &(u, v) in edges {
            if u >= nodes || v >= nodes {
                return Err(Error::InvalidGraph("edge endpoint out of range"));
            }
            if u == v {
                return Err(Error::InvalidGraph("self-loop"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    pub fn edgeless(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_independent(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(i, &u)| nodes[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Independent and no further node can be added.
    pub fn is_maximal_independent(&self, nodes: &[usize]) -> bool {
        self.is_independent(nodes)
            && (0..self.nodes())
                .filter(|v| !nodes.contains(v))
                .all(|v| nodes.iter().any(|&u| self.has_edge(u, v)))
    }

    fn closed_masks(&self) -> Vec<u64> {
        self.adj
            .iter()
            .enumerate()
            .map(|(v, list)| list.iter().fold(1u64 << v, |m, &u| m | (1u64 << u)))
            .collect()
    }

    /// All maximal independent sets (Bron–Kerbosch on the complement, with pivoting).
    pub fn maximal_independent_sets(&self, limit: usize) -> Result<Vec<Strategy>> {
        let n = self.nodes();
        if n > 64 {
            return Err(Error::InstanceTooLarge { size: n, limit: 64 });
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let closed = self.closed_masks();
        // Non-neighbours (complement adjacency, no self).
        let free: Vec<u64> = closed.iter().map(|&m| !m & full_mask(n)).collect();
        let mut out = Vec::new();
        bron_kerbosch(0, full_mask(n), 0, &free, &mut out, limit)?;
        out.sort_by(|a: &Strategy, b| a.tie_order(b));
        Ok(out)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bron_kerbosch(
    r: u64,
    mut p: u64,
    mut x: u64,
    free: &[u64],
    out: &mut Vec<Strategy>,
    limit: usize,
) -> Result<()> {
    if p == 0 && x == 0 {
        if out.len() == limit {
            return Err(Error::InstanceTooLarge {
                size: limit + 1,
                limit,
            });
        }
        out.push(Strategy::from_mask(r));
        return Ok(());
    }
    let px = p | x;
    let pivot = px.trailing_zeros() as usize;
    let mut cand = p & !free[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        bron_kerbosch(r | bit, p & free[v], x & free[v], free, out, limit)?;
        p &= !bit;
        x |= bit;
        cand &= !bit;
    }
    Ok(())
}

/// Exact or greedy maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MwisMode {
    #[default]
    Exact,
    Greedy,
}

/// Independent-set problem: strategies are independent node sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MwisInstance {
    graph: UndirectedGraph,
    mode: MwisMode,
    max_size: usize,
}

impl MwisInstance {
    /// `max_size` bounds the strategy length (for extended conflict graphs,
    /// the number of users); `None` computes the independence number when the
    /// graph fits the exact solver and falls back to the node count otherwise.
    pub fn new(graph: UndirectedGraph, mode: MwisMode, max_size: Option<usize>) -> Result<Self> {
        if graph.nodes() == 0 {
            return Err(Error::InvalidGraph("no nodes"));
        }
        let max_size = match max_size {
            Some(m) => m,
            None if graph.nodes() <= MWIS_NODE_LIMIT => {
                let ones = vec![1.0; graph.nodes()];
                mwis_exact(&graph, &ones)?.0.len()
            }
            None => graph.nodes(),
        };
        Ok(Self {
            graph,
            mode,
            max_size,
        })
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn mode(&self) -> MwisMode {
        self.mode
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn with_mode(&self, mode: MwisMode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    /// Approximation factor of the configured maximizer.
    pub fn beta(&self) -> f64 {
        match self.mode {
            MwisMode::Exact => 1.0,
            MwisMode::Greedy => (self.graph.max_degree() + 1) as f64,
        }
    }

    pub fn is_feasible(&self, s: &Strategy) -> bool {
        s.check_range(self.graph.nodes()).is_ok() && self.graph.is_independent(s.arms())
    }

    pub(crate) fn maximize_scores(&self, w: &[Score]) -> Result<(Strategy, Score)> {
        match self.mode {
            MwisMode::Exact => exact_scores(&self.graph, w),
            MwisMode::Greedy => Ok(greedy_scores(&self.graph, w)),
        }
    }
}

struct BranchAndBound<'a> {
    w: &'a [Score],
    closed: Vec<u64>,
    lower: Score,
    found: Option<(u64, Score)>,
}

impl BranchAndBound<'_> {
    fn promising(&self, bound: Score) -> bool {
        match self.found {
            Some((_, best)) => bound.total_cmp(&best) == Ordering::Greater,
            None => bound.total_cmp(&self.lower) != Ordering::Less,
        }
    }

    // Branches on the lowest candidate, include first: sets are reached in
    // tie-break order, so only strict improvements replace the incumbent.
    fn search(&mut self, cand: u64, chosen: u64, score: Score) {
        if cand == 0 {
            let accept = match self.found {
                Some((_, best)) => score.total_cmp(&best) == Ordering::Greater,
                None => score.total_cmp(&self.lower) != Ordering::Less,
            };
            if accept {
                self.found = Some((chosen, score));
            }
            return;
        }
        let mut bound = score;
        let mut m = cand;
        while m != 0 {
            bound = bound + self.w[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        if !self.promising(bound) {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.search(cand & !self.closed[v], chosen | bit, score + self.w[v]);
        self.search(cand & !bit, chosen, score);
    }
}

pub(crate) fn exact_scores(graph: &UndirectedGraph, w: &[Score]) -> Result<(Strategy, Score)> {
    let n = graph.nodes();
    if n > MWIS_NODE_LIMIT {
        return Err(Error::InstanceTooLarge {
            size: n,
            limit: MWIS_NODE_LIMIT,
        });
    }
    let (greedy_set, lower) = greedy_scores(graph, w);
    // Negative nodes never improve a set.
    let cand = (0..n)
        .filter(|&v| !w[v].is_negative())
        .fold(0u64, |m, v| m | (1u64 << v));
    if cand == 0 {
        return Ok((greedy_set, lower));
    }
    let mut bb = BranchAndBound {
        w,
        closed: graph.closed_masks(),
        lower,
        found: None,
    };
    bb.search(cand, 0, Score::ZERO);
    let (mask, score) = bb.found.expect("greedy lower bound is attainable");
    Ok((Strategy::from_mask(mask), score))
}

/// Greedy: repeatedly take the live node maximizing `w / (live degree + 1)`
/// (cold nodes first, lowest live degree among them), then delete its closed
/// neighbourhood. Ties go to the lowest index. Nodes with negative weight are
/// never taken; if every node is negative the single best node is returned.
pub(crate) fn greedy_scores(graph: &UndirectedGraph, w: &[Score]) -> (Strategy, Score) {
    let n = graph.nodes();
    let mut live = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| graph.adj[v].len()).collect();
    let mut chosen = Vec::new();
    loop {
        let mut pick: Option<(usize, (u32, f64))> = None;
        for v in 0..n {
            if !live[v] || w[v].is_negative() {
                continue;
            }
            let d = (degree[v] + 1) as f64;
            let key = if w[v].cold > 0 {
                (1, 1.0 / d)
            } else {
                (0, w[v].sum / d)
            };
            let better = match pick {
                None => true,
                Some((_, k)) => key.0.cmp(&k.0).then(key.1.total_cmp(&k.1)) == Ordering::Greater,
            };
            if better {
                pick = Some((v, key));
            }
        }
        let Some((v, _)) = pick else { break };
        chosen.push(v);
        let mut removed = vec![v];
        removed.extend(graph.adj[v].iter().copied().filter(|&u| live[u]));
        for &u in &removed {
            live[u] = false;
        }
        for &u in &removed {
            for &x in &graph.adj[u] {
                if live[x] {
                    degree[x] -= 1;
                }
            }
        }
    }
    if chosen.is_empty() {
        let best = (0..n)
            .max_by(|&a, &b| w[a].total_cmp(&w[b]).then(b.cmp(&a)))
            .expect("nonempty graph");
        return (Strategy::from_sorted(vec![best]), w[best]);
    }
    chosen.sort_unstable();
    // Summed in index order, as the exact search does.
    let total = chosen.iter().fold(Score::ZERO, |acc, &v| acc + w[v]);
    (Strategy::from_sorted(chosen), total)
}

/// Maximum-weight independent set by branch-and-bound (greedy lower bound,
/// candidate weight-sum upper bound). At most [`MWIS_NODE_LIMIT`] nodes.
pub fn mwis_exact(graph: &UndirectedGraph, weights: &[f64]) -> Result<(Strategy, f64)> {
    let w = scores(weights, graph.nodes())?;
    if graph.nodes() == 0 {
        return Err(Error::NoFeasibleStrategy);
    }
    exact_scores(graph, &w).map(|(s, sc)| (s, sc.value()))
}

/// Greedy independent set with its guarantee `β = Δ_max + 1`.
pub fn mwis_greedy(graph: &UndirectedGraph, weights: &[f64]) -> Result<(Strategy, f64, f64)> {
    let w = scores(weights, graph.nodes())?;
    if graph.nodes() == 0 {
        return Err(Error::NoFeasibleStrategy);
    }
    let (s, sc) = greedy_scores(graph, &w);
    Ok((s, sc.value(), (graph.max_degree() + 1) as f64))
}
