//! Per-cluster shape of the host graph, and the intersection of its short
//! induced cycles with clusters.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::layering::LayeringPartition;
use crate::search::{for_each_induced_cycle, Budget};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterObservation {
    pub cluster: usize,
    /// Parent-set vertices with an `H`-neighbor in the cluster.
    pub parent_anchors: Vec<usize>,
    /// Members with two or more `H`-neighbors in the parent set.
    pub multi_attached: Vec<usize>,
    /// `H`-edges with both ends in the cluster.
    pub intra_edges: Vec<(usize, usize)>,
}

impl ClusterObservation {
    /// At most two anchors, at most one multiply attached member, at most
    /// one internal edge.
    pub fn within_limits(&self) -> bool {
        self.parent_anchors.len() <= 2 && self.multi_attached.len() <= 1 && self.intra_edges.len() <= 1
    }
}

pub fn cluster_observations(lp: &LayeringPartition, h: &Graph) -> Vec<ClusterObservation> {
    let mut out = Vec::with_capacity(lp.clusters.len().saturating_sub(1));
    for c in lp.clusters.iter().skip(1) {
        let parent = c.parent_cluster.expect("non-root cluster has a parent");
        let mut anchors = Vec::new();
        let mut multi = Vec::new();
        let mut intra = Vec::new();
        for &v in &c.members {
            let mut up = 0;
            for &w in h.neighbors(v) {
                if lp.cluster_of[w] == parent {
                    up += 1;
                    anchors.push(w);
                } else if lp.cluster_of[w] == c.id && w > v {
                    intra.push((v, w));
                }
            }
            if up >= 2 {
                multi.push(v);
            }
        }
        anchors.sort_unstable();
        anchors.dedup();
        out.push(ClusterObservation { cluster: c.id, parent_anchors: anchors, multi_attached: multi, intra_edges: intra });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClusterReport {
    pub cycles_checked: usize,
    /// False if the enumeration ran out of budget.
    pub complete: bool,
    /// Cycles with three or more vertices in one cluster.
    pub offending: Vec<Vec<usize>>,
}

/// Enumerates the induced cycles of `h` up to `max_len` and records those
/// meeting some cluster in more than two vertices.
pub fn cycle_cluster_check(lp: &LayeringPartition, h: &Graph, max_len: usize, budget: &mut Budget) -> CycleClusterReport {
    let mut cycles_checked = 0;
    let mut offending = Vec::new();
    let mut count = vec![0usize; lp.clusters.len()];
    let complete = for_each_induced_cycle(h, max_len, budget, |c| {
        cycles_checked += 1;
        for &v in c {
            count[lp.cluster_of[v]] += 1;
        }
        if c.iter().any(|&v| count[lp.cluster_of[v]] > 2) {
            offending.push(c.to_vec());
        }
        for &v in c {
            count[lp.cluster_of[v]] = 0;
        }
    });
    CycleClusterReport { cycles_checked, complete, offending }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{embed, EmbedMode};
    use crate::graph::fixtures::*;

    #[test]
    fn c5_shape() {
        let g = cycle(5);
        let res = embed(&g, 0, EmbedMode::General).unwrap();
        let obs = cluster_observations(&res.layering, &res.h);
        assert!(obs.iter().all(|o| o.within_limits()));
        // the level-2 cluster {2, 3} hangs off 1 and 4 and keeps the edge 2-3
        let last = obs.last().unwrap();
        assert_eq!(last.parent_anchors, vec![1, 4]);
        assert_eq!(last.intra_edges, vec![(2, 3)]);
        let rep = cycle_cluster_check(&res.layering, &res.h, 12, &mut Budget::default());
        assert!(rep.complete);
        assert_eq!(rep.cycles_checked, 1);
        assert!(rep.offending.is_empty());
    }

    #[test]
    fn c4_has_one_multi_attached_vertex() {
        let res = embed(&cycle(4), 0, EmbedMode::General).unwrap();
        let obs = cluster_observations(&res.layering, &res.h);
        assert_eq!(obs.last().unwrap().multi_attached, vec![2]);
    }
}
