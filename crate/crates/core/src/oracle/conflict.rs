//! Conflict graphs over users and their channel-level extension.

use alloc::vec::Vec;

use super::mwis::UndirectedGraph;
use crate::error::{Error, Result};

/// `N` users, `M` channels, symmetric conflict relation (diagonal always set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    channels: usize,
    conflicts: Vec<Vec<bool>>,
}

impl ConflictGraph {
    /// `conflicts[i][p]` marks a conflict between users `i` and `p`.
    pub fn new(conflicts: Vec<Vec<bool>>, channels: usize) -> Result<Self> {
        let n = conflicts.len();
        if n == 0 || channels == 0 {
            return Err(Error::InvalidGraph(
                "need at least one user and one channel",
            ));
        }
        if conflicts.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGraph("conflict matrix is not square"));
        }
        if (0..n).any(|i| (i + 1..n).any(|p| conflicts[i][p] != conflicts[p][i])) {
            return Err(Error::InvalidGraph("conflict matrix is not symmetric"));
        }
        let mut conflicts = conflicts;
        for (i, row) in conflicts.iter_mut().enumerate() {
            row[i] = true;
        }
        Ok(Self {
            channels,
            conflicts,
        })
    }

    /// From 0/1 rows.
    pub fn from_rows(rows: &[Vec<u8>], channels: usize) -> Result<Self> {
        let mut m = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for &x in row {
                r.push(match x {
                    0 => false,
                    1 => true,
                    _ => return Err(Error::InvalidGraph("conflict entries must be 0 or 1")),
                });
            }
            m.push(r);
        }
        Self::new(m, channels)
    }

    pub fn users(&self) -> usize {
        self.conflicts.len()
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn conflicts(&self, i: usize, p: usize) -> bool {
        self.conflicts[i][p]
    }

    /// Off-diagonal conflicting pairs `(i, p)`, `i < p`.
    pub fn conflict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.users();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |p| (i, p)))
            .filter(|&(i, p)| self.conflicts[i][p])
            .collect()
    }

    /// Node of user `i` on channel `j`.
    pub fn node(&self, user: usize, channel: usize) -> usize {
        user * self.channels + channel
    }

    /// Inverse of [`Self::node`].
    pub fn user_channel(&self, node: usize) -> (usize, usize) {
        (node / self.channels, node % self.channels)
    }
}

/// Extended conflict graph on `N·M` nodes: each user's channels form a
/// clique, and `(i, j)`–`(p, j)` is an edge for every conflicting pair `(i, p)`.
pub fn build_extended_conflict_graph(g: &ConflictGraph) -> UndirectedGraph {
    let (n, m) = (g.users(), g.channels());
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            for k in j + 1..m {
                edges.push((g.node(i, j), g.node(i, k)));
            }
        }
    }
    for (i, p) in g.conflict_pairs() {
        for j in 0..m {
            edges.push((g.node(i, j), g.node(p, j)));
        }
    }
    UndirectedGraph::new(n * m, &edges).expect("extended graph edges are in range and loop-free")
}

/// Checks that a node set of the extended graph assigns at most one channel
/// per user and never the same channel to two conflicting users.
pub fn is_valid_assignment(g: &ConflictGraph, nodes: &[usize]) -> bool {
    let pairs: Vec<(usize, usize)> = nodes.iter().map(|&v| g.user_channel(v)).collect();
    pairs.iter().enumerate().all(|(a, &(i, j))| {
        pairs[a + 1..]
            .iter()
            .all(|&(p, k)| i != p && !(j == k && g.conflicts(i, p)))
    })
}
