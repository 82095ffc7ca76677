//! Source-sink paths whose edges are the arms.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::score::Score;
use crate::error::{Error, Result};
use crate::strategy::Strategy;

/// Directed multigraph; edge `e` is arm `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl DiGraph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::InvalidGraph("no nodes"));
        }
        let mut out = vec![Vec::new(); nodes];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= nodes || v >= nodes {
                return Err(Error::InvalidGraph("edge endpoint out of range"));
            }
            if u == v {
                return Err(Error::InvalidGraph("self-loop"));
            }
            out[u].push(e);
        }
        Ok(Self { nodes, edges, out })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Kahn order, or `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.nodes];
        for &(_, v) in &self.edges {
            indeg[v] += 1;
        }
        let mut stack: Vec<usize> = (0..self.nodes).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes);
        while let Some(u) = stack.pop() {
            order.push(u);
            for &e in self.out[u].iter().rev() {
                let v = self.edges[e].1;
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        (order.len() == self.nodes).then_some(order)
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for &e in &self.out[u] {
                let v = self.edges[e].1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }
}

/// Which objective the per-edge indices feed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathDirection {
    /// Minimize the index sum, indices built on delays.
    MinDelay,
    /// Maximize the index sum, indices built on gains `1 - delay`.
    #[default]
    GainOptimism,
}

/// Path problem: strategies are the edge sets of `source → sink` paths.
#[derive(Debug, Clone, PartialEq)]
pub struct PathInstance {
    graph: DiGraph,
    source: usize,
    sink: usize,
    direction: PathDirection,
}

impl PathInstance {
    pub fn new(
        graph: DiGraph,
        source: usize,
        sink: usize,
        direction: PathDirection,
    ) -> Result<Self> {
        if source >= graph.nodes || sink >= graph.nodes || source == sink {
            return Err(Error::InvalidGraph(
                "source and sink must be distinct nodes",
            ));
        }
        if !graph.reaches(source, sink) {
            return Err(Error::NoFeasibleStrategy);
        }
        Ok(Self {
            graph,
            source,
            sink,
            direction,
        })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.graph
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn direction(&self) -> PathDirection {
        self.direction
    }

    pub fn with_direction(&self, direction: PathDirection) -> Self {
        Self {
            direction,
            ..self.clone()
        }
    }

    pub fn num_arms(&self) -> usize {
        self.graph.edges.len()
    }

    /// True when the edge set forms one simple `source → sink` path.
    pub fn is_feasible(&self, s: &Strategy) -> bool {
        if s.check_range(self.num_arms()).is_err() {
            return false;
        }
        let mut remaining: Vec<usize> = s.arms().to_vec();
        let mut at = self.source;
        let mut visited = vec![false; self.graph.nodes];
        visited[at] = true;
        while !remaining.is_empty() {
            let Some(pos) = remaining.iter().position(|&e| self.graph.edges[e].0 == at) else {
                return false;
            };
            let e = remaining.swap_remove(pos);
            at = self.graph.edges[e].1;
            if visited[at] {
                return false;
            }
            visited[at] = true;
        }
        at == self.sink
    }

    /// All simple `source → sink` paths, depth-first in edge order.
    pub fn enumerate_paths(&self, limit: usize) -> Result<Vec<Strategy>> {
        let mut paths = Vec::new();
        let mut on_path = vec![false; self.graph.nodes];
        let mut edges = Vec::new();
        on_path[self.source] = true;
        self.walk(self.source, &mut on_path, &mut edges, &mut paths, limit)?;
        Ok(paths)
    }

    fn walk(
        &self,
        u: usize,
        on_path: &mut [bool],
        edges: &mut Vec<usize>,
        paths: &mut Vec<Strategy>,
        limit: usize,
    ) -> Result<()> {
        if u == self.sink {
            if paths.len() == limit {
                return Err(Error::InstanceTooLarge {
                    size: limit + 1,
                    limit,
                });
            }
            paths.push(Strategy::new(edges.clone())?);
            return Ok(());
        }
        for &e in &self.graph.out[u] {
            let v = self.graph.edges[e].1;
            if !on_path[v] {
                on_path[v] = true;
                edges.push(e);
                self.walk(v, on_path, edges, paths, limit)?;
                edges.pop();
                on_path[v] = false;
            }
        }
        Ok(())
    }

    /// Edge count of the longest simple path (upper bound on strategy length).
    pub fn max_path_len(&self) -> usize {
        match self.graph.topological_order() {
            Some(order) => {
                let mut len: Vec<Option<usize>> = vec![None; self.graph.nodes];
                len[self.source] = Some(0);
                for &u in &order {
                    let Some(l) = len[u] else { continue };
                    for &e in &self.graph.out[u] {
                        let v = self.graph.edges[e].1;
                        len[v] = Some(len[v].map_or(l + 1, |x| x.max(l + 1)));
                    }
                }
                len[self.sink].unwrap_or(0)
            }
            None => self.graph.nodes - 1,
        }
    }

    /// Best path under the configured direction. The returned score is in
    /// maximization form (finite part negated for [`PathDirection::MinDelay`]).
    pub(crate) fn optimize_scores(&self, w: &[Score]) -> Result<(Strategy, Score)> {
        let gains: Vec<Score> = match self.direction {
            PathDirection::GainOptimism => w.to_vec(),
            PathDirection::MinDelay => w.iter().map(|s| s.negated_sum()).collect(),
        };
        match self.graph.topological_order() {
            Some(order) => self.dag_longest(&order, &gains),
            None => {
                let plain_costs = self.direction == PathDirection::MinDelay
                    && w.iter().all(|s| s.cold == 0 && s.sum >= 0.0);
                if !plain_costs {
                    return Err(Error::UnsupportedInstance(
                        "cyclic graph needs finite nonnegative costs to minimize",
                    ));
                }
                let costs: Vec<f64> = w.iter().map(|s| s.sum).collect();
                let edges = self.dijkstra(&costs).ok_or(Error::NoFeasibleStrategy)?;
                let score = edges.iter().fold(Score::ZERO, |acc, &e| acc + gains[e]);
                Ok((Strategy::new(edges)?, score))
            }
        }
    }

    fn dag_longest(&self, order: &[usize], gains: &[Score]) -> Result<(Strategy, Score)> {
        let n = self.graph.nodes;
        // Best score and its path edges (sorted) for every node reachable from the source.
        let mut best: Vec<Option<(Score, Strategy)>> = vec![None; n];
        let mut reached = vec![false; n];
        reached[self.source] = true;
        let start = order
            .iter()
            .position(|&u| u == self.source)
            .expect("source in order");
        for &u in &order[start..] {
            if !reached[u] {
                continue;
            }
            let (base, base_edges) = match &best[u] {
                Some((s, p)) => (*s, Some(p.clone())),
                None => (Score::ZERO, None),
            };
            for &e in &self.graph.out[u] {
                let v = self.graph.edges[e].1;
                let cand_score = base + gains[e];
                let mut arms = base_edges
                    .as_ref()
                    .map_or_else(Vec::new, |p| p.arms().to_vec());
                let pos = arms.partition_point(|&x| x < e);
                arms.insert(pos, e);
                let cand = Strategy::from_sorted(arms);
                let replace = match &best[v] {
                    None => true,
                    Some((s, p)) => match cand_score.total_cmp(s) {
                        Ordering::Greater => true,
                        Ordering::Equal => cand.tie_order(p) == Ordering::Less,
                        Ordering::Less => false,
                    },
                };
                if replace {
                    best[v] = Some((cand_score, cand));
                }
                reached[v] = true;
            }
        }
        best[self.sink]
            .take()
            .map(|(s, p)| (p, s))
            .ok_or(Error::NoFeasibleStrategy)
    }

    fn dijkstra(&self, cost: &[f64]) -> Option<Vec<usize>> {
        #[derive(PartialEq)]
        struct Item(f64, usize);
        impl Eq for Item {}
        impl PartialOrd for Item {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Item {
            fn cmp(&self, other: &Self) -> Ordering {
                other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
            }
        }
        let n = self.graph.nodes;
        let mut dist = vec![f64::INFINITY; n];
        let mut via: Vec<Option<usize>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        dist[self.source] = 0.0;
        heap.push(Item(0.0, self.source));
        while let Some(Item(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &self.graph.out[u] {
                let v = self.graph.edges[e].1;
                let nd = d + cost[e];
                if nd < dist[v] {
                    dist[v] = nd;
                    via[v] = Some(e);
                    heap.push(Item(nd, v));
                }
            }
        }
        let mut edges = Vec::new();
        let mut at = self.sink;
        while at != self.source {
            let e = via[at]?;
            edges.push(e);
            at = self.graph.edges[e].0;
        }
        Some(edges)
    }
}

/// Per-edge index vector to best path (edge set), under `direction`.
pub fn shortest_path_select(
    instance: &PathInstance,
    index_per_edge: &[f64],
    direction: PathDirection,
) -> Result<Strategy> {
    let w = super::score::scores(index_per_edge, instance.num_arms())?;
    instance
        .with_direction(direction)
        .optimize_scores(&w)
        .map(|(s, _)| s)
}
