//! Immutable simple undirected graphs on dense vertex ids `0..n`, the
//! edge-list text format, and the BFS primitives everything else builds on.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Distance value used for vertices that cannot be reached from the source.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// A finite simple undirected graph. Neighbor lists are sorted ascending and
/// stored back to back: the neighbors of `v` are `nbrs[offsets[v]..offsets[v + 1]]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EdgeListRepr", try_from = "EdgeListRepr")]
pub struct Graph {
    offsets: Vec<usize>,
    nbrs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeListRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for EdgeListRepr {
    fn from(g: Graph) -> Self {
        EdgeListRepr { n: g.n(), edges: g.edges().collect() }
    }
}

impl TryFrom<EdgeListRepr> for Graph {
    type Error = GraphError;
    fn try_from(r: EdgeListRepr) -> Result<Self, GraphError> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph { offsets: vec![0; n + 1], nbrs: Vec::new() }
    }

    /// Builds a graph, rejecting self-loops, repeated edges and bad ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u, v));
        }
        let g = Graph::assemble(n, &list);
        for u in 0..n {
            if let Some(w) = g.neighbors(u).windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(g)
    }

    /// Builds a graph from an edge list that may repeat edges.
    pub(crate) fn from_edges_dedup(n: usize, edges: &[(usize, usize)]) -> Self {
        let g = Graph::assemble(n, edges);
        if (0..n).all(|u| g.neighbors(u).windows(2).all(|w| w[0] != w[1])) {
            return g;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut nbrs = Vec::with_capacity(g.nbrs.len());
        offsets.push(0);
        for u in 0..n {
            let start = nbrs.len();
            for &w in g.neighbors(u) {
                if nbrs.len() == start || nbrs[nbrs.len() - 1] != w {
                    nbrs.push(w);
                }
            }
            offsets.push(nbrs.len());
        }
        Graph { offsets, nbrs }
    }

    /// Counting-sort construction; ids must be in range and loop-free.
    fn assemble(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut nbrs = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            nbrs[fill[u]] = v;
            fill[u] += 1;
            nbrs[fill[v]] = u;
            fill[v] += 1;
        }
        for u in 0..n {
            nbrs[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Graph { offsets, nbrs }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Parses the edge-list text format: the first non-comment line holds
    /// `n`, every further non-comment line holds `u v`. Lines starting with
    /// `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: line_no, msg };
            let mut tokens = line.split_whitespace();
            match n {
                None => {
                    let count: usize = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(format!("expected vertex count, found {line:?}")))?;
                    if tokens.next().is_some() {
                        return Err(err("vertex count line has extra tokens".into()));
                    }
                    n = Some(count);
                }
                Some(count) => {
                    let mut next = || -> Result<usize, GraphError> {
                        tokens
                            .next()
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| err(format!("expected \"u v\", found {line:?}")))
                    };
                    let u = next()?;
                    let v = next()?;
                    if tokens.next().is_some() {
                        return Err(err("edge line has extra tokens".into()));
                    }
                    if u == v {
                        return Err(err(format!("self-loop at vertex {u}")));
                    }
                    if u >= count || v >= count {
                        return Err(err(format!("vertex id {} out of range (n = {count})", u.max(v))));
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(err(format!("duplicate edge {}-{}", u.min(v), u.max(v))));
                    }
                    edges.push((u, v));
                }
            }
        }
        let Some(n) = n else {
            return Err(GraphError::Parse { line: text.lines().count().max(1), msg: "missing vertex count".into() });
        };
        Ok(Graph::assemble(n, &edges))
    }

    /// Canonical edge-list text: vertex count, then edges sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 + self.m() * 10);
        out.push_str(&self.n().to_string());
        out.push('\n');
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs_distances(self, 0).dist.iter().all(|&d| d != UNREACHABLE)
    }
}

/// BFS distances from one source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceVector {
    pub source: usize,
    pub dist: Vec<u32>,
}

impl DistanceVector {
    pub fn get(&self, v: usize) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Largest finite distance.
    pub fn eccentricity(&self) -> u32 {
        self.dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }

    pub fn all_reachable(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHABLE)
    }
}

pub fn bfs_distances(g: &Graph, source: usize) -> DistanceVector {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    bfs_into(g, source, &mut dist, &mut queue);
    DistanceVector { source, dist }
}

/// BFS reusing caller buffers; `dist` must have length `n`.
pub(crate) fn bfs_into(g: &Graph, source: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) {
    dist.fill(UNREACHABLE);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = du;
                queue.push_back(v);
            }
        }
    }
}

/// Dense `n × n` distance matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn max_entry(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }
}

/// One BFS per vertex, run in parallel.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut data = vec![UNREACHABLE; n * n];
    if n > 0 {
        data.par_chunks_mut(n).enumerate().for_each_init(VecDeque::new, |queue, (s, row)| {
            bfs_into(g, s, row, queue);
        });
    }
    DistanceMatrix { n, data }
}

/// Connected components of `g`, or of the subgraph induced by `restrict`.
/// Each component is sorted; components are ordered by smallest member.
pub fn connected_components(g: &Graph, restrict: Option<&[usize]>) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut allowed = vec![restrict.is_none(); n];
    let order: Vec<usize> = match restrict {
        Some(s) => {
            for &v in s {
                allowed[v] = true;
            }
            let mut s = s.to_vec();
            s.sort_unstable();
            s.dedup();
            s
        }
        None => (0..n).collect(),
    };
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for &start in order.iter() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if allowed[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Subgraph induced by a vertex subset, relabelled `0..|s|` in increasing
/// order of the original ids.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// new id -> original id
    pub to_original: Vec<usize>,
    /// original id -> new id
    pub from_original: Vec<Option<usize>>,
}

pub fn induced_subgraph(g: &Graph, s: &[usize]) -> InducedSubgraph {
    let mut to_original = s.to_vec();
    to_original.sort_unstable();
    to_original.dedup();
    let mut from_original = vec![None; g.n()];
    for (i, &v) in to_original.iter().enumerate() {
        from_original[v] = Some(i);
    }
    let mut offsets = Vec::with_capacity(to_original.len() + 1);
    let mut nbrs = Vec::new();
    offsets.push(0);
    for &v in &to_original {
        // relabelling is monotone, so the lists stay sorted
        nbrs.extend(g.neighbors(v).iter().filter_map(|&w| from_original[w]));
        offsets.push(nbrs.len());
    }
    InducedSubgraph { graph: Graph { offsets, nbrs }, to_original, from_original }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn parse_examples() {
        let g = Graph::parse("3\n0 1\n1 2").unwrap();
        assert_eq!(g, path(3));
        let g = Graph::parse("1").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let g = Graph::parse("5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
        assert_eq!(g, cycle(5));
    }

    #[test]
    fn parse_ignores_comments_and_order() {
        let a = Graph::parse("# c5\n5\n\n4 0\n# edge\n2 3\n0 1\n3 4\n1 2\n").unwrap();
        assert_eq!(a, cycle(5));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("3\n0 1\n1 0\n", 3),
            ("3\n0 0\n", 2),
            ("3\n0 1\n1 3\n", 3),
            ("3\n# x\n0 one\n", 3),
            ("3\n0 1 2\n", 2),
            ("x\n", 1),
        ];
        for (text, line) in cases {
            match Graph::parse(text) {
                Err(GraphError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(Graph::parse("# only comments\n").is_err());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn serialize_sorted() {
        let g = Graph::parse("4\n3 2\n0 3\n1 0\n").unwrap();
        assert_eq!(g.to_edge_list(), "4\n0 1\n0 3\n2 3\n");
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(bfs_distances(&cycle(5), 0).dist, vec![0, 1, 2, 2, 1]);
        assert_eq!(bfs_distances(&path(3), 0).dist, vec![0, 1, 2]);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = bfs_distances(&two, 0);
        assert_eq!(d.dist, vec![0, 1, UNREACHABLE, UNREACHABLE]);
        assert_eq!(d.get(2), None);
        assert!(!two.is_connected());
    }

    #[test]
    fn all_pairs_examples() {
        let d = all_pairs_distances(&path(2));
        assert_eq!((d.row(0), d.row(1)), (&[0, 1][..], &[1, 0][..]));
        let d = all_pairs_distances(&cycle(5));
        assert!(d.max_entry() == 2);
        assert_eq!(all_pairs_distances(&k23()).max_entry(), 2);
    }

    #[test]
    fn components_examples() {
        let c5 = cycle(5);
        assert_eq!(connected_components(&c5, Some(&[4, 1])), vec![vec![1], vec![4]]);
        assert_eq!(connected_components(&c5, Some(&[2, 3])), vec![vec![2, 3]]);
        assert_eq!(connected_components(&c5, None).len(), 1);
        let two = Graph::from_edges(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(connected_components(&two, None), vec![vec![0, 2], vec![1], vec![3, 4]]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = k23();
        let full = induced_subgraph(&g, &[4, 3, 2, 1, 0]);
        assert_eq!(full.graph, g);
        // drop degree-3 vertex 0: the other degree-3 vertex becomes a star center
        let s = induced_subgraph(&g, &[1, 2, 3, 4]);
        assert_eq!(s.graph.m(), 3);
        assert_eq!(s.graph.degree(0), 3);
        assert_eq!(s.to_original, vec![1, 2, 3, 4]);
        assert_eq!(s.from_original[0], None);
        let e = induced_subgraph(&g, &[]);
        assert_eq!((e.graph.n(), e.graph.m()), (0, 0));
    }

    #[test]
    fn serde_json_form() {
        let g = cycle(4);
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
