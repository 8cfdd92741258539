//! The embedding of a K_{2,3}-induced-minor-free graph `G` into a graph `H`
//! on the same vertex set with tree-width at most two.
//!
//! Every cluster of the layering partition is wired to its parent set:
//!
//! * connected parent set: every member is joined to one anchor `w`;
//! * two components `C1`, `C2` whose neighborhoods `D1`, `D2` in the cluster
//!   are disjoint: `D1` is joined to `w1 ∈ C1`, `D2` to `w2 ∈ C2`, plus one
//!   G-edge between `D1` and `D2` when such an edge exists;
//! * overlapping `D1`, `D2`: `D1` is joined to `w1`, `D2 \ D1` to `w2`, and a
//!   single vertex `u ∈ D1 ∩ D2` additionally to `w2`.
//!
//! All free choices take the smallest vertex id (smallest pair for the
//! `D1`–`D2` edge), and `C1` is the component holding the smallest id.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::layering::{build_layering, components_within, LayeringError, LayeringPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error(transparent)]
    Layering(#[from] LayeringError),
    #[error(
        "input violates K_{{2,3}}-induced-minor-freeness: parent set of cluster {cluster} has {components} components"
    )]
    TooManyParentComponents { cluster: usize, components: usize },
    #[error("trace inconsistent with graph at cluster {cluster}: {reason}")]
    InconsistentTrace { cluster: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EmbedMode {
    /// Component analysis of every parent set; valid on every
    /// K_{2,3}-induced-minor-free input.
    #[default]
    General,
    /// Constant-time connectivity test; only sound on universally signable
    /// inputs.
    UniversallySignableFast,
}

impl std::str::FromStr for EmbedMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "general" => Ok(EmbedMode::General),
            "fast" | "universally_signable_fast" | "us-fast" => Ok(EmbedMode::UniversallySignableFast),
            other => Err(format!("unknown mode {other:?} (expected general or fast)")),
        }
    }
}

/// Which branch handled a cluster, with the anchors it chose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Branch {
    Root,
    Connected {
        w: usize,
    },
    DisjointD {
        w1: usize,
        w2: usize,
        /// The `D1`–`D2` edge added to `H`, when `G` has one.
        cross_edge: Option<(usize, usize)>,
    },
    OverlappingD {
        w1: usize,
        w2: usize,
        u: usize,
        /// Vertices of `C1`. Recorded only; it does not influence `H`.
        blue: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterTrace {
    pub cluster: usize,
    #[serde(flatten)]
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchTrace {
    pub root: usize,
    pub mode: EmbedMode,
    pub clusters: Vec<ClusterTrace>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedStats {
    pub clusters: usize,
    pub connected: usize,
    pub disjoint_d: usize,
    /// Disjoint-D clusters without any `D1`–`D2` edge in `G`.
    pub disjoint_d_without_edge: usize,
    pub overlapping_d: usize,
    /// Adjacency entries scanned.
    pub work: u64,
}

#[derive(Debug, Clone)]
pub struct EmbeddingResult {
    pub h: Graph,
    pub root: usize,
    pub layering: LayeringPartition,
    pub trace: BranchTrace,
    pub stats: EmbedStats,
}

/// Connectivity test valid on universally signable graphs, where a parent set
/// is either a clique or a stable set of size two.
pub fn fast_parent_connectivity(parent_set: &[usize], g: &Graph) -> bool {
    match parent_set {
        [_, _, _, ..] | [_] => true,
        [a, b] => g.has_edge(*a, *b),
        [] => false,
    }
}

struct Scratch {
    comp: Vec<usize>,
    tag: usize,
    in_d1: Vec<usize>,
    in_d2: Vec<usize>,
}

pub fn embed(g: &Graph, root: usize, mode: EmbedMode) -> Result<EmbeddingResult, EmbedError> {
    let lp = build_layering(g, root)?;
    embed_with_layering(g, lp, mode)
}

pub fn embed_with_layering(
    g: &Graph,
    lp: LayeringPartition,
    mode: EmbedMode,
) -> Result<EmbeddingResult, EmbedError> {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n + n / 2);
    let mut stats = EmbedStats { clusters: lp.clusters.len(), ..Default::default() };
    let mut trace = Vec::with_capacity(lp.clusters.len());
    let mut s = Scratch { comp: vec![usize::MAX; n], tag: 0, in_d1: vec![usize::MAX; n], in_d2: vec![usize::MAX; n] };

    for cluster in &lp.clusters {
        let id = cluster.id;
        if cluster.level == 0 {
            trace.push(ClusterTrace { cluster: id, branch: Branch::Root });
            continue;
        }
        let parent = &cluster.parent_set;
        let comps: Vec<Vec<usize>> = match mode {
            EmbedMode::General => {
                s.tag += 2;
                stats.work += parent.iter().map(|&p| g.degree(p) as u64).sum::<u64>();
                components_within(g, parent, &mut s.comp, s.tag)
            }
            EmbedMode::UniversallySignableFast => {
                stats.work += 1;
                if fast_parent_connectivity(parent, g) {
                    vec![parent.clone()]
                } else {
                    vec![vec![parent[0]], vec![parent[1]]]
                }
            }
        };
        let branch = match comps.len() {
            1 => {
                let w = parent[0];
                edges.extend(cluster.members.iter().map(|&v| (v, w)));
                stats.connected += 1;
                Branch::Connected { w }
            }
            2 => {
                let (c1, c2) = (&comps[0], &comps[1]);
                let (w1, w2) = (c1[0], c2[0]);
                for &p in c1 {
                    s.in_d1[p] = id;
                }
                for &p in c2 {
                    s.in_d2[p] = id;
                }
                // D_i = members with a neighbor in C_i
                let mut d1 = Vec::new();
                let mut d2 = Vec::new();
                for &v in &cluster.members {
                    let nb = g.neighbors(v);
                    stats.work += nb.len() as u64;
                    if nb.iter().any(|&p| s.in_d1[p] == id) {
                        d1.push(v);
                    }
                    if nb.iter().any(|&p| s.in_d2[p] == id) {
                        d2.push(v);
                    }
                }
                // reuse the C-markers, now on cluster members, for D-membership
                let tag = id + n;
                for &v in &d1 {
                    s.in_d1[v] = tag;
                }
                for &v in &d2 {
                    s.in_d2[v] = tag;
                }
                let overlap = d1.iter().copied().find(|&v| s.in_d2[v] == tag);
                match overlap {
                    None => {
                        edges.extend(d1.iter().map(|&v| (v, w1)));
                        edges.extend(d2.iter().map(|&v| (v, w2)));
                        let mut cross_edge = None;
                        'search: for &a in &d1 {
                            for &b in g.neighbors(a) {
                                stats.work += 1;
                                if s.in_d2[b] == tag {
                                    cross_edge = Some((a, b));
                                    break 'search;
                                }
                            }
                        }
                        if let Some(e) = cross_edge {
                            edges.push(e);
                        } else {
                            stats.disjoint_d_without_edge += 1;
                        }
                        stats.disjoint_d += 1;
                        Branch::DisjointD { w1, w2, cross_edge }
                    }
                    Some(u) => {
                        edges.extend(d1.iter().map(|&v| (v, w1)));
                        edges.extend(d2.iter().filter(|&&v| s.in_d1[v] != tag).map(|&v| (v, w2)));
                        edges.push((u, w2));
                        stats.overlapping_d += 1;
                        Branch::OverlappingD { w1, w2, u, blue: c1.clone() }
                    }
                }
            }
            k => return Err(EmbedError::TooManyParentComponents { cluster: id, components: k }),
        };
        trace.push(ClusterTrace { cluster: id, branch });
    }

    let h = Graph::from_edges_dedup(n, &edges);
    Ok(EmbeddingResult {
        h,
        root: lp.root,
        trace: BranchTrace { root: lp.root, mode, clusters: trace },
        layering: lp,
        stats,
    })
}

/// Rebuilds `H` from a branch trace, checking every recorded anchor against
/// the layering of `g`.
pub fn replay_branch_trace(trace: &BranchTrace, g: &Graph, root: usize) -> Result<Graph, EmbedError> {
    let lp = build_layering(g, root)?;
    let bad = |cluster: usize, reason: String| EmbedError::InconsistentTrace { cluster, reason };
    if trace.root != root {
        return Err(bad(0, format!("trace was recorded for root {}", trace.root)));
    }
    if trace.clusters.len() != lp.clusters.len() {
        return Err(bad(0, format!("trace has {} clusters, layering has {}", trace.clusters.len(), lp.clusters.len())));
    }
    let n = g.n();
    let mut scratch = vec![usize::MAX; n];
    let mut edges = Vec::new();
    for (i, (ct, cluster)) in trace.clusters.iter().zip(&lp.clusters).enumerate() {
        if ct.cluster != cluster.id {
            return Err(bad(i, format!("entry {i} names cluster {}", ct.cluster)));
        }
        let id = cluster.id;
        if cluster.level == 0 {
            if ct.branch != Branch::Root {
                return Err(bad(id, "root cluster must carry the root branch".into()));
            }
            continue;
        }
        let parent = &cluster.parent_set;
        let comps = match trace.mode {
            EmbedMode::General => components_within(g, parent, &mut scratch, 2 * id),
            EmbedMode::UniversallySignableFast if fast_parent_connectivity(parent, g) => vec![parent.clone()],
            EmbedMode::UniversallySignableFast => vec![vec![parent[0]], vec![parent[1]]],
        };
        let touches = |v: usize, comp: &[usize]| g.neighbors(v).iter().any(|p| comp.binary_search(p).is_ok());
        match (&ct.branch, comps.len()) {
            (Branch::Connected { w }, 1) => {
                if parent.binary_search(w).is_err() {
                    return Err(bad(id, format!("anchor {w} is not in the parent set")));
                }
                edges.extend(cluster.members.iter().map(|&v| (v, *w)));
            }
            (Branch::DisjointD { w1, w2, .. } | Branch::OverlappingD { w1, w2, .. }, 2) =>
            {
                let (c1, c2) = (&comps[0], &comps[1]);
                if c1.binary_search(w1).is_err() || c2.binary_search(w2).is_err() {
                    return Err(bad(id, format!("anchors {w1}, {w2} do not lie in C1, C2")));
                }
                let d1: Vec<usize> = cluster.members.iter().copied().filter(|&v| touches(v, c1)).collect();
                let d2: Vec<usize> = cluster.members.iter().copied().filter(|&v| touches(v, c2)).collect();
                let in_d1 = |v: usize| d1.binary_search(&v).is_ok();
                let in_d2 = |v: usize| d2.binary_search(&v).is_ok();
                let overlapping = d1.iter().any(|&v| in_d2(v));
                edges.extend(d1.iter().map(|&v| (v, *w1)));
                match (&ct.branch, overlapping) {
                    (Branch::DisjointD { cross_edge, .. }, false) => {
                        edges.extend(d2.iter().map(|&v| (v, *w2)));
                        match cross_edge {
                            Some((a, b)) => {
                                if !(in_d1(*a) && in_d2(*b) && g.has_edge(*a, *b)) {
                                    return Err(bad(id, format!("{a}-{b} is not a D1-D2 edge of G")));
                                }
                                edges.push((*a, *b));
                            }
                            None => {
                                if d1.iter().any(|&a| g.neighbors(a).iter().any(|&b| in_d2(b))) {
                                    return Err(bad(id, "a D1-D2 edge exists but none was recorded".into()));
                                }
                            }
                        }
                    }
                    (Branch::OverlappingD { u, blue, .. }, true) => {
                        if !(in_d1(*u) && in_d2(*u)) {
                            return Err(bad(id, format!("{u} is not in D1 ∩ D2")));
                        }
                        if blue != c1 {
                            return Err(bad(id, "blue vertices differ from C1".into()));
                        }
                        edges.extend(d2.iter().filter(|&&v| !in_d1(v)).map(|&v| (v, *w2)));
                        edges.push((*u, *w2));
                    }
                    _ => return Err(bad(id, "branch does not match the overlap of D1 and D2".into())),
                }
            }
            (_, k) if k > 2 => return Err(EmbedError::TooManyParentComponents { cluster: id, components: k }),
            (b, k) => return Err(bad(id, format!("branch {b:?} recorded for a parent set with {k} components"))),
        }
    }
    Ok(Graph::from_edges_dedup(n, &edges))
}
