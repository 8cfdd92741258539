//! Exact all-pairs comparison of distances in `G` and `H`.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bfs_into, Graph, UNREACHABLE};
use crate::DISTORTION_BOUND;

/// Upper bound on `d_H(u, v)` for an edge `uv` of `G` with both ends on the
/// same BFS level (such ends always lie in the same cluster).
pub const SAME_CLUSTER_EDGE_BOUND: u32 = 5;
/// Upper bound on `d_H(u, v)` for every edge `uv` of `G`.
pub const G_EDGE_BOUND: u32 = 16;
/// Upper bound on `d_G(u, v)` for every edge `uv` of `H`.
pub const H_EDGE_BOUND: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistortionError {
    #[error("vertex sets differ: G has {g} vertices, H has {h}")]
    VertexSetMismatch { g: usize, h: usize },
    #[error("{0} is not connected")]
    Disconnected(&'static str),
    #[error("root {0} out of range")]
    RootOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    RootEquality,
    SameClusterEdge,
    GEdge,
    HEdge,
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub u: usize,
    pub v: usize,
    pub bound: BoundName,
    pub observed: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub max_abs_gap: u32,
    /// Lexicographically smallest pair attaining `max_abs_gap`.
    pub argmax_pair: Option<(usize, usize)>,
    pub root_equality: bool,
    pub violations: Vec<BoundViolation>,
    /// Unordered pairs compared.
    pub pair_count: u64,
}

impl DistortionReport {
    pub fn passed(&self) -> bool {
        self.root_equality && self.violations.is_empty()
    }
}

struct RowSummary {
    gap: u32,
    arg: Option<(usize, usize)>,
    violations: Vec<BoundViolation>,
}

/// Runs a BFS from every vertex in both graphs and compares all pairs.
/// Memory stays linear: rows are consumed as they are produced.
pub fn distortion_report(g: &Graph, h: &Graph, root: usize) -> Result<DistortionReport, DistortionError> {
    let n = g.n();
    if h.n() != n {
        return Err(DistortionError::VertexSetMismatch { g: n, h: h.n() });
    }
    if root >= n {
        return Err(DistortionError::RootOutOfRange(root));
    }
    if !g.is_connected() {
        return Err(DistortionError::Disconnected("G"));
    }
    if !h.is_connected() {
        return Err(DistortionError::Disconnected("H"));
    }
    let mut level = vec![UNREACHABLE; n];
    bfs_into(g, root, &mut level, &mut VecDeque::new());

    let rows: Vec<RowSummary> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], vec![0u32; n], VecDeque::new()),
            |(dg, dh, queue), s| {
                bfs_into(g, s, dg, queue);
                bfs_into(h, s, dh, queue);
                let mut row = RowSummary { gap: 0, arg: None, violations: Vec::new() };
                for t in s + 1..n {
                    let gap = dg[t].abs_diff(dh[t]);
                    if gap > row.gap {
                        row.gap = gap;
                        row.arg = Some((s, t));
                    }
                    if gap > DISTORTION_BOUND {
                        row.violations.push(BoundViolation { u: s, v: t, bound: BoundName::Global, observed: gap });
                    }
                }
                if s == root {
                    for t in 0..n {
                        if dg[t] != dh[t] {
                            row.violations.push(BoundViolation {
                                u: s,
                                v: t,
                                bound: BoundName::RootEquality,
                                observed: dh[t],
                            });
                        }
                    }
                }
                for &t in g.neighbors(s).iter().filter(|&&t| t > s) {
                    if dh[t] > G_EDGE_BOUND {
                        row.violations.push(BoundViolation { u: s, v: t, bound: BoundName::GEdge, observed: dh[t] });
                    }
                    if level[s] == level[t] && dh[t] > SAME_CLUSTER_EDGE_BOUND {
                        row.violations.push(BoundViolation {
                            u: s,
                            v: t,
                            bound: BoundName::SameClusterEdge,
                            observed: dh[t],
                        });
                    }
                }
                for &t in h.neighbors(s).iter().filter(|&&t| t > s) {
                    if dg[t] > H_EDGE_BOUND {
                        row.violations.push(BoundViolation { u: s, v: t, bound: BoundName::HEdge, observed: dg[t] });
                    }
                }
                row
            },
        )
        .collect();

    let mut report = DistortionReport {
        max_abs_gap: 0,
        argmax_pair: None,
        root_equality: true,
        violations: Vec::new(),
        pair_count: (n as u64) * (n as u64).saturating_sub(1) / 2,
    };
    for row in rows {
        // rows arrive in source order, so the first maximum is the smallest pair
        if row.gap > report.max_abs_gap {
            report.max_abs_gap = row.gap;
            report.argmax_pair = row.arg;
        }
        report.violations.extend(row.violations);
    }
    report.root_equality = !report.violations.iter().any(|v| v.bound == BoundName::RootEquality);
    Ok(report)
}
