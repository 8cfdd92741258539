//! Independent reference implementations used by the integration tests.
//! They share no code with the library beyond `Graph` accessors.

#![allow(dead_code)]

use std::collections::HashMap;

use k23_embed::generators::{generate, Family, GenSpec};
use k23_embed::Graph;

pub const INF: u32 = u32::MAX;

/// The families known to be K_{2,3}-induced-minor-free.
pub const FREE_FAMILIES: [&str; 5] = ["tree", "cycle", "chordal", "split", "outerplanar"];

pub fn family(name: &str, n: usize) -> Family {
    Family::default_for(name, n).unwrap()
}

pub fn gen(name: &str, n: usize, seed: u64) -> Graph {
    generate(&GenSpec::new(family(name, n), n, seed)).unwrap()
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Floyd–Warshall on the adjacency matrix.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let a = adjacency_matrix(g);
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                d[u][v] = 0;
            } else if a[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn naive_diameter(g: &Graph) -> u32 {
    floyd_warshall(g).into_iter().flatten().max().unwrap_or(0)
}

/// Clusters straight from the definition: for each level `k`, components of
/// the subgraph induced by vertices at distance at least `k`, intersected
/// with level `k`. Ordered by level, then smallest member.
pub fn naive_clusters(g: &Graph, root: usize) -> Vec<Vec<usize>> {
    let d = floyd_warshall(g);
    let dist = &d[root];
    let a = adjacency_matrix(g);
    let n = g.n();
    let depth = dist.iter().copied().max().unwrap();
    let mut out = Vec::new();
    for k in 0..=depth {
        let mut label = vec![usize::MAX; n];
        for s in 0..n {
            if dist[s] < k || label[s] != usize::MAX {
                continue;
            }
            label[s] = s;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in 0..n {
                    if a[u][w] && dist[w] >= k && label[w] == usize::MAX {
                        label[w] = s;
                        stack.push(w);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            if dist[v] == k {
                groups.entry(label[v]).or_default().push(v);
            }
        }
        let mut level: Vec<Vec<usize>> = groups.into_values().collect();
        level.sort();
        out.extend(level);
    }
    out
}

/// Parent set of a cluster: the previous-level vertices adjacent to it.
pub fn naive_parent_set(g: &Graph, root: usize, cluster: &[usize]) -> Vec<usize> {
    let dist = &floyd_warshall(g)[root];
    let k = dist[cluster[0]];
    if k == 0 {
        return Vec::new();
    }
    (0..g.n()).filter(|&v| dist[v] + 1 == k && cluster.iter().any(|&u| g.has_edge(u, v))).collect()
}

/// Tree-width at most two, by searching elimination orderings. The graph
/// left after eliminating a set does not depend on the order, so the search
/// memoizes on the set of remaining vertices. Only for small `n`.
pub fn treewidth_le2_bruteforce(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 16);
    let a = adjacency_matrix(g);
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, bool> = HashMap::new();
    eliminable(full, &a, n, &mut memo)
}

/// Neighbors of `v` in the fill graph where everything outside `remaining`
/// has been eliminated: vertices of `remaining` reachable from `v` through
/// eliminated vertices only.
fn fill_neighbors(v: usize, remaining: u32, a: &[Vec<bool>], n: usize) -> u32 {
    let mut seen = 1u32 << v;
    let mut stack = vec![v];
    let mut out = 0u32;
    while let Some(u) = stack.pop() {
        for w in 0..n {
            if a[u][w] && seen & (1 << w) == 0 {
                seen |= 1 << w;
                if remaining & (1 << w) != 0 {
                    out |= 1 << w;
                } else {
                    stack.push(w);
                }
            }
        }
    }
    out
}

fn eliminable(remaining: u32, a: &[Vec<bool>], n: usize, memo: &mut HashMap<u32, bool>) -> bool {
    if remaining.count_ones() <= 3 {
        return true;
    }
    if let Some(&r) = memo.get(&remaining) {
        return r;
    }
    let mut ok = false;
    for v in 0..n {
        if remaining & (1 << v) != 0
            && fill_neighbors(v, remaining, a, n).count_ones() <= 2
            && eliminable(remaining & !(1 << v), a, n, memo)
        {
            ok = true;
            break;
        }
    }
    memo.insert(remaining, ok);
    ok
}

pub fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Sides `{0, 1}` and `{2, 3, 4}`.
pub fn k23() -> Graph {
    Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
}

/// Rim `0..k` in order, center `k`.
pub fn wheel(k: usize) -> Graph {
    Graph::from_edges(k + 1, (0..k).flat_map(|i| [(i, (i + 1) % k), (i, k)])).unwrap()
}
