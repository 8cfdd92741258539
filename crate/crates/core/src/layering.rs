//! Layering partition of a connected graph with respect to a root vertex.
//!
//! A cluster is a maximal set of vertices at the same BFS level `k` that are
//! pairwise connected once the ball of radius `k - 1` around the root is
//! removed. Clusters form a tree (the layering tree); the parent set of a
//! cluster is the set of level `k - 1` vertices adjacent to it, and it always
//! lies inside the parent cluster.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bfs_distances, induced_subgraph, DistanceVector, Graph, UNREACHABLE};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayeringError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("root {root} out of range for a graph on {n} vertices")]
    RootOutOfRange { root: usize, n: usize },
    #[error("no cluster with id {0}")]
    UnknownCluster(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub id: usize,
    pub level: u32,
    /// Sorted member ids.
    pub members: Vec<usize>,
    /// `None` only for the root cluster.
    pub parent_cluster: Option<usize>,
    /// Sorted; empty for the root cluster.
    pub parent_set: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeringPartition {
    pub root: usize,
    pub levels: DistanceVector,
    /// Ordered by `(level, smallest member)`; cluster 0 is `{root}`.
    pub clusters: Vec<Cluster>,
    pub cluster_of: Vec<usize>,
    /// `(parent, child)` pairs, one per non-root cluster, in child order.
    pub tree_edges: Vec<(usize, usize)>,
}

impl LayeringPartition {
    pub fn cluster(&self, id: usize) -> Result<&Cluster, LayeringError> {
        self.clusters.get(id).ok_or(LayeringError::UnknownCluster(id))
    }

    pub fn level(&self, v: usize) -> u32 {
        self.levels.dist[v]
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.tree_edges.iter().filter(move |e| e.0 == id).map(|e| e.1)
    }

    pub fn depth(&self) -> u32 {
        self.clusters.last().map_or(0, |c| c.level)
    }
}

/// Builds the layering partition by sweeping levels from the deepest one
/// upwards while merging vertices in a union-find structure. When level `k`
/// has been activated, the classes restricted to level `k` are exactly the
/// clusters at that level.
pub fn build_layering(g: &Graph, root: usize) -> Result<LayeringPartition, LayeringError> {
    let n = g.n();
    if root >= n {
        return Err(LayeringError::RootOutOfRange { root, n });
    }
    let levels = bfs_distances(g, root);
    if !levels.all_reachable() {
        return Err(LayeringError::Disconnected);
    }
    let dist = &levels.dist;
    let depth = levels.eccentricity() as usize;
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    for v in 0..n {
        buckets[dist[v] as usize].push(v);
    }

    let mut uf = UnionFind::new(n);
    // class representative -> index into `raw`, valid while `stamp` matches
    let mut slot = vec![usize::MAX; n];
    let mut stamp = vec![usize::MAX; n];
    let mut raw: Vec<(u32, Vec<usize>)> = Vec::with_capacity(n);
    for k in (0..=depth).rev() {
        for &v in &buckets[k] {
            for &w in g.neighbors(v) {
                if dist[w] as usize >= k {
                    uf.union(v, w);
                }
            }
        }
        for &v in &buckets[k] {
            let rep = uf.find(v);
            if stamp[rep] != k {
                stamp[rep] = k;
                slot[rep] = raw.len();
                raw.push((k as u32, Vec::new()));
            }
            raw[slot[rep]].1.push(v);
        }
    }
    // members are pushed in increasing id order, so they are already sorted
    raw.sort_unstable_by(|a, b| (a.0, a.1[0]).cmp(&(b.0, b.1[0])));

    let mut cluster_of = vec![usize::MAX; n];
    for (id, (_, members)) in raw.iter().enumerate() {
        for &v in members {
            cluster_of[v] = id;
        }
    }

    let mut mark = vec![usize::MAX; n];
    let mut clusters = Vec::with_capacity(raw.len());
    let mut tree_edges = Vec::with_capacity(raw.len().saturating_sub(1));
    for (id, (level, members)) in raw.into_iter().enumerate() {
        let mut parent_set = Vec::new();
        if level > 0 {
            for &v in &members {
                for &w in g.neighbors(v) {
                    if dist[w] + 1 == level && mark[w] != id {
                        mark[w] = id;
                        parent_set.push(w);
                    }
                }
            }
            parent_set.sort_unstable();
        }
        let parent_cluster = parent_set.first().map(|&p| cluster_of[p]);
        if let Some(p) = parent_cluster {
            tree_edges.push((p, id));
        }
        clusters.push(Cluster { id, level, members, parent_cluster, parent_set });
    }

    Ok(LayeringPartition { root, levels, clusters, cluster_of, tree_edges })
}

/// Connected components of `G[vertices]`, each sorted, ordered by smallest
/// member. `scratch` must have length `n` and hold no entry equal to `tag`.
pub(crate) fn components_within(
    g: &Graph,
    vertices: &[usize],
    scratch: &mut [usize],
    tag: usize,
) -> Vec<Vec<usize>> {
    // scratch[v] == tag: in the set and unvisited; tag + 1: visited
    for &v in vertices {
        scratch[v] = tag;
    }
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for &s in vertices {
        if scratch[s] != tag {
            continue;
        }
        scratch[s] = tag + 1;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if scratch[w] == tag {
                    scratch[w] = tag + 1;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParentSetViolation {
    /// More than two components.
    TooManyComponents { count: usize },
    /// Connected parent set whose diameter exceeds three.
    DiameterTooLarge { diameter: u32 },
    /// One of two components is not a clique.
    NonCliqueComponent { component: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentSetReport {
    pub cluster: usize,
    pub components: Vec<Vec<usize>>,
    /// Diameter of the parent set as a graph on its own; only when connected.
    pub diameter: Option<u32>,
    pub component_is_clique: Vec<bool>,
    pub violations: Vec<ParentSetViolation>,
}

/// Inspects the parent set of every non-root cluster. On a
/// K_{2,3}-induced-minor-free graph a parent set has at most two components,
/// diameter at most three when connected, and clique components when it has
/// two. Any violation proves the input is not K_{2,3}-induced-minor-free.
pub fn verify_parent_set_structure(g: &Graph, lp: &LayeringPartition) -> Vec<ParentSetReport> {
    lp.clusters
        .iter()
        .filter(|c| c.level > 0)
        .map(|c| {
            let sub = induced_subgraph(g, &c.parent_set);
            let f = &sub.graph;
            let comps = crate::graph::connected_components(f, None);
            let component_is_clique: Vec<bool> = comps
                .iter()
                .map(|comp| comp.iter().all(|&v| f.degree(v) == comp.len() - 1))
                .collect();
            let mut violations = Vec::new();
            let mut diameter = None;
            if comps.len() == 1 {
                let d = (0..f.n()).map(|s| bfs_distances(f, s).eccentricity()).max().unwrap_or(0);
                diameter = Some(d);
                if d > 3 {
                    violations.push(ParentSetViolation::DiameterTooLarge { diameter: d });
                }
            } else if comps.len() == 2 {
                for (i, &ok) in component_is_clique.iter().enumerate() {
                    if !ok {
                        violations.push(ParentSetViolation::NonCliqueComponent { component: i });
                    }
                }
            } else {
                violations.push(ParentSetViolation::TooManyComponents { count: comps.len() });
            }
            let components = comps
                .into_iter()
                .map(|comp| comp.into_iter().map(|v| sub.to_original[v]).collect())
                .collect();
            ParentSetReport { cluster: c.id, components, diameter, component_is_clique, violations }
        })
        .collect()
}

/// True when the root still reaches `target` after deleting `removed`.
fn reaches(g: &Graph, root: usize, target: usize, removed: &[bool]) -> bool {
    if removed[root] || removed[target] {
        return false;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(u) = stack.pop() {
        if u == target {
            return true;
        }
        for &w in g.neighbors(u) {
            if !seen[w] && !removed[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Checks that the parent set of `cluster_id` is a minimal cutset between
/// the root and the smallest member of the cluster. Removing the whole set
/// must separate them, and removing the set minus any single vertex must
/// not; by monotonicity that covers every proper subset.
pub fn verify_minimal_cutset(
    g: &Graph,
    lp: &LayeringPartition,
    cluster_id: usize,
) -> Result<bool, LayeringError> {
    let c = lp.cluster(cluster_id)?;
    if c.level == 0 {
        return Err(LayeringError::Precondition("the root cluster has no parent set".into()));
    }
    if c.parent_set == [lp.root] {
        return Err(LayeringError::Precondition(format!(
            "cluster {cluster_id} has the root as its whole parent set"
        )));
    }
    let u = c.members[0];
    let mut removed = vec![false; g.n()];
    for &p in &c.parent_set {
        removed[p] = true;
    }
    if reaches(g, lp.root, u, &removed) {
        return Ok(false);
    }
    for &p in &c.parent_set {
        removed[p] = false;
        let ok = reaches(g, lp.root, u, &removed);
        removed[p] = true;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For two sibling clusters whose parent sets both have two components,
/// counts the component pairs (one from each parent set) sharing a vertex
/// and returns whether there is at most one such pair.
pub fn verify_cross_children(
    g: &Graph,
    lp: &LayeringPartition,
    s1: usize,
    s2: usize,
) -> Result<bool, LayeringError> {
    let (c1, c2) = (lp.cluster(s1)?, lp.cluster(s2)?);
    if s1 == s2 || c1.parent_cluster.is_none() || c1.parent_cluster != c2.parent_cluster {
        return Err(LayeringError::Precondition(format!(
            "clusters {s1} and {s2} are not distinct siblings"
        )));
    }
    let mut scratch = vec![usize::MAX; g.n()];
    let comps1 = components_within(g, &c1.parent_set, &mut scratch, 0);
    let comps2 = components_within(g, &c2.parent_set, &mut scratch, 2);
    if comps1.len() != 2 || comps2.len() != 2 {
        return Err(LayeringError::Precondition(format!(
            "parent sets of {s1} and {s2} must both have two components"
        )));
    }
    let shared = comps1
        .iter()
        .flat_map(|y| comps2.iter().map(move |z| (y, z)))
        .filter(|(y, z)| y.iter().any(|v| z.binary_search(v).is_ok()))
        .count();
    Ok(shared <= 1)
}

/// Sibling pairs whose parent sets both split into two components.
pub fn two_component_sibling_pairs(g: &Graph, lp: &LayeringPartition) -> Vec<(usize, usize)> {
    let mut scratch = vec![usize::MAX; g.n()];
    let mut two_comp = vec![false; lp.clusters.len()];
    for (i, c) in lp.clusters.iter().enumerate().skip(1) {
        two_comp[i] = components_within(g, &c.parent_set, &mut scratch, 2 * i).len() == 2;
    }
    let mut pairs = Vec::new();
    for c in &lp.clusters {
        let kids: Vec<usize> = lp.children(c.id).filter(|&k| two_comp[k]).collect();
        for (i, &a) in kids.iter().enumerate() {
            for &b in &kids[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Checks the partition, level and tree invariants of a layering.
pub fn check_layering_invariants(g: &Graph, lp: &LayeringPartition) -> Result<(), String> {
    let n = g.n();
    let mut count = vec![0usize; n];
    for c in &lp.clusters {
        for &v in &c.members {
            count[v] += 1;
            if lp.levels.dist[v] != c.level {
                return Err(format!("vertex {v} has level {} but sits in a level-{} cluster", lp.levels.dist[v], c.level));
            }
            if lp.cluster_of[v] != c.id {
                return Err(format!("cluster_of[{v}] disagrees with cluster {}", c.id));
            }
        }
        if let Some(p) = c.parent_cluster {
            let parent = &lp.clusters[p];
            if parent.level + 1 != c.level {
                return Err(format!("cluster {} is not one level below its parent", c.id));
            }
            for &v in &c.parent_set {
                if lp.cluster_of[v] != p {
                    return Err(format!("parent set of {} leaves its parent cluster", c.id));
                }
                if !g.neighbors(v).iter().any(|w| lp.cluster_of[*w] == c.id) {
                    return Err(format!("parent vertex {v} has no neighbor in cluster {}", c.id));
                }
            }
        } else if c.level != 0 {
            return Err(format!("non-root cluster {} has no parent", c.id));
        }
    }
    if let Some(v) = count.iter().position(|&k| k != 1) {
        return Err(format!("vertex {v} lies in {} clusters", count[v]));
    }
    if lp.tree_edges.len() + 1 != lp.clusters.len() {
        return Err("layering tree has the wrong number of edges".into());
    }
    let mut uf = UnionFind::new(lp.clusters.len());
    for &(a, b) in &lp.tree_edges {
        if !uf.union(a, b) {
            return Err("layering tree has a cycle".into());
        }
    }
    // every G-edge joins the same cluster or a parent/child pair
    for (u, v) in g.edges() {
        let (cu, cv) = (lp.cluster_of[u], lp.cluster_of[v]);
        if cu != cv && lp.clusters[cu].parent_cluster != Some(cv) && lp.clusters[cv].parent_cluster != Some(cu) {
            return Err(format!("edge {u}-{v} joins clusters not adjacent in the tree"));
        }
    }
    debug_assert!(lp.levels.dist.iter().all(|&d| d != UNREACHABLE));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn members(lp: &LayeringPartition) -> Vec<Vec<usize>> {
        lp.clusters.iter().map(|c| c.members.clone()).collect()
    }

    #[test]
    fn path_gives_singletons() {
        let lp = build_layering(&path(3), 0).unwrap();
        assert_eq!(members(&lp), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(lp.tree_edges, vec![(0, 1), (1, 2)]);
        check_layering_invariants(&path(3), &lp).unwrap();
    }

    #[test]
    fn five_cycle() {
        let g = cycle(5);
        let lp = build_layering(&g, 0).unwrap();
        assert_eq!(members(&lp), vec![vec![0], vec![1, 4], vec![2, 3]]);
        assert_eq!(lp.clusters[2].parent_set, vec![1, 4]);
        assert_eq!(lp.clusters[1].parent_set, vec![0]);
        check_layering_invariants(&g, &lp).unwrap();

        let reports = verify_parent_set_structure(&g, &lp);
        let r = &reports[1];
        assert_eq!(r.cluster, 2);
        assert_eq!(r.components, vec![vec![1], vec![4]]);
        assert_eq!(r.component_is_clique, vec![true, true]);
        assert!(reports.iter().all(|r| r.violations.is_empty()));

        assert_eq!(verify_minimal_cutset(&g, &lp, 2), Ok(true));
        assert!(verify_minimal_cutset(&g, &lp, 1).is_err());
        assert!(verify_minimal_cutset(&g, &lp, 0).is_err());
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(build_layering(&g, 0), Err(LayeringError::Disconnected));
        assert!(matches!(build_layering(&g, 9), Err(LayeringError::RootOutOfRange { .. })));
    }

    #[test]
    fn trees_have_trivial_parent_sets() {
        // a spider with legs of length 3
        let g = Graph::from_edges(10, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)]).unwrap();
        let lp = build_layering(&g, 0).unwrap();
        assert_eq!(lp.clusters.len(), 10);
        for r in verify_parent_set_structure(&g, &lp) {
            assert_eq!(r.components.len(), 1);
            assert_eq!(r.diameter, Some(0));
        }
        for c in lp.clusters.iter().filter(|c| c.level >= 2) {
            assert_eq!(verify_minimal_cutset(&g, &lp, c.id), Ok(true));
        }
        assert_eq!(verify_minimal_cutset(&path(3), &build_layering(&path(3), 0).unwrap(), 2), Ok(true));
    }

    #[test]
    fn k23_from_degree_two_vertex_violates_structure() {
        // rooted at a degree-three vertex the far side sees a parent set of
        // three isolated vertices
        let g = k23();
        let lp = build_layering(&g, 0).unwrap();
        let reports = verify_parent_set_structure(&g, &lp);
        assert!(reports
            .iter()
            .any(|r| r.violations.contains(&ParentSetViolation::TooManyComponents { count: 3 })));
        let lp = build_layering(&g, 2).unwrap();
        assert_eq!(members(&lp), vec![vec![2], vec![0, 1], vec![3], vec![4]]);
    }

    #[test]
    fn cross_children() {
        // cluster {1,2,3} at level 1 whose two children have parent sets
        // {1,3} and {2,3}: components ({1},{3}) and ({2},{3}) share only {3}
        let g = Graph::from_edges(
            6,
            [(0, 1), (0, 2), (0, 3), (1, 4), (3, 4), (2, 5), (3, 5)],
        )
        .unwrap();
        let lp = build_layering(&g, 0).unwrap();
        assert_eq!(members(&lp), vec![vec![0], vec![1, 2, 3], vec![4], vec![5]]);
        assert_eq!(two_component_sibling_pairs(&g, &lp), vec![(2, 3)]);
        assert_eq!(verify_cross_children(&g, &lp, 2, 3), Ok(true));
        assert!(verify_cross_children(&g, &lp, 2, 2).is_err());
        assert!(verify_cross_children(&g, &lp, 1, 2).is_err());

        // both parent sets {1,3}: two shared pairs
        let g = Graph::from_edges(6, [(0, 1), (0, 3), (1, 4), (3, 4), (1, 5), (3, 5), (0, 2), (2, 1)]).unwrap();
        let lp = build_layering(&g, 0).unwrap();
        let pairs = two_component_sibling_pairs(&g, &lp);
        assert_eq!(pairs.len(), 1);
        assert_eq!(verify_cross_children(&g, &lp, pairs[0].0, pairs[0].1), Ok(false));
    }

    #[test]
    fn sibling_clusters_with_disjoint_parent_sets() {
        // root with two arms that each end in a 4-cycle
        let g = Graph::from_edges(
            9,
            [(0, 1), (0, 2), (1, 3), (1, 4), (3, 5), (4, 5), (2, 6), (2, 7), (6, 8), (7, 8)],
        )
        .unwrap();
        let lp = build_layering(&g, 0).unwrap();
        check_layering_invariants(&g, &lp).unwrap();
        assert!(two_component_sibling_pairs(&g, &lp).is_empty());
    }
}
