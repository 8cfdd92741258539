//! Tree-width at most two, decided by series-parallel reduction.
//!
//! A graph has tree-width at most two iff repeatedly deleting vertices of
//! degree at most one and suppressing vertices of degree two (replacing the
//! vertex by an edge between its neighbors, merging it with an existing edge
//! if there is one) deletes every vertex.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ReductionOp {
    /// Delete a vertex with at most one neighbor.
    LeafPrune { vertex: usize },
    /// Delete a vertex with exactly two neighbors and join them.
    SuppressDegree2 { vertex: usize, ends: (usize, usize) },
    /// The edge created by the preceding suppression was already present.
    ParallelMerge { edge: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreewidthCertificate {
    pub verdict: bool,
    pub reduction_sequence: Vec<ReductionOp>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {step}: {reason}")]
pub struct ReplayError {
    pub step: usize,
    pub reason: String,
}

/// Transient multigraph state: simple adjacency plus the multiplicity that
/// only matters for recording merges.
struct Reducer {
    adj: Vec<HashSet<usize>>,
    alive: Vec<bool>,
    edges: usize,
}

impl Reducer {
    fn new(g: &Graph) -> Self {
        Reducer {
            adj: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            alive: vec![true; g.n()],
            edges: g.m(),
        }
    }

    fn remove(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].drain().collect();
        for w in nbrs {
            self.adj[w].remove(&v);
            self.edges -= 1;
        }
        self.alive[v] = false;
    }

    /// Applies `op`, validating its precondition.
    fn apply(&mut self, op: ReductionOp) -> Result<(), String> {
        match op {
            ReductionOp::LeafPrune { vertex } => {
                if vertex >= self.adj.len() || !self.alive[vertex] {
                    return Err(format!("vertex {vertex} is not present"));
                }
                if self.adj[vertex].len() > 1 {
                    return Err(format!("vertex {vertex} has degree {}", self.adj[vertex].len()));
                }
                self.remove(vertex);
            }
            ReductionOp::SuppressDegree2 { vertex, ends: (a, b) } => {
                if vertex >= self.adj.len() || !self.alive[vertex] {
                    return Err(format!("vertex {vertex} is not present"));
                }
                let nb = &self.adj[vertex];
                if nb.len() != 2 || !nb.contains(&a) || !nb.contains(&b) {
                    return Err(format!("vertex {vertex} does not have exactly the neighbors {a}, {b}"));
                }
                self.remove(vertex);
                if self.adj[a].insert(b) {
                    self.adj[b].insert(a);
                    self.edges += 1;
                }
            }
            ReductionOp::ParallelMerge { edge: (a, b) } => {
                if !self.adj.get(a).is_some_and(|s| s.contains(&b)) {
                    return Err(format!("edge {a}-{b} is not present"));
                }
            }
        }
        Ok(())
    }
}

pub fn treewidth_at_most_2(h: &Graph) -> TreewidthCertificate {
    let n = h.n();
    let mut red = Reducer::new(h);
    let mut seq = Vec::new();
    // worklist keyed by degree: vertices currently of degree at most two
    let mut low: BTreeSet<usize> = (0..n).filter(|&v| h.degree(v) <= 2).collect();
    while let Some(v) = low.pop_first() {
        if !red.alive[v] {
            continue;
        }
        let nb: Vec<usize> = red.adj[v].iter().copied().collect();
        match nb.as_slice() {
            [] | [_] => {
                seq.push(ReductionOp::LeafPrune { vertex: v });
                red.remove(v);
            }
            &[x, y] => {
                let (a, b) = (x.min(y), x.max(y));
                let merged = red.adj[a].contains(&b);
                seq.push(ReductionOp::SuppressDegree2 { vertex: v, ends: (a, b) });
                red.apply(ReductionOp::SuppressDegree2 { vertex: v, ends: (a, b) }).expect("valid suppression");
                if merged {
                    seq.push(ReductionOp::ParallelMerge { edge: (a, b) });
                }
            }
            _ => continue,
        }
        for w in nb {
            if red.adj[w].len() <= 2 {
                low.insert(w);
            }
        }
    }
    let verdict = red.alive.iter().all(|&a| !a);
    TreewidthCertificate { verdict, reduction_sequence: seq }
}

/// Replays a certificate on `h` and returns the number of edges left.
/// A consistent certificate leaves at most one edge iff its verdict is true.
pub fn replay_reduction(h: &Graph, cert: &TreewidthCertificate) -> Result<usize, ReplayError> {
    let mut red = Reducer::new(h);
    for (step, &op) in cert.reduction_sequence.iter().enumerate() {
        red.apply(op).map_err(|reason| ReplayError { step, reason })?;
    }
    let left = red.edges;
    if (left <= 1) != cert.verdict {
        return Err(ReplayError {
            step: cert.reduction_sequence.len(),
            reason: format!("{left} edges remain but the verdict is {}", cert.verdict),
        });
    }
    Ok(left)
}
