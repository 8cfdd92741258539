//! Budgeted backtracking search for thetas, pyramids, prisms and wheels.
//!
//! Every configuration is found by fixing a small anchor structure (the two
//! ends of a theta, apex plus triangle for a pyramid, two triangles for a
//! prism, center plus one rim vertex for a wheel) and then growing induced
//! paths between anchors one vertex at a time. A vertex may join the current
//! path only when its neighbors among the vertices placed so far are exactly
//! its predecessor (and the path's target, in which case the path closes).
//! Before every extension a BFS checks that the target is still reachable
//! through admissible vertices.
//!
//! Every placement costs one unit of budget. Running out yields
//! [`SearchOutcome::Inconclusive`], never a false "absent".

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::witness::StructureWitness;

/// Default number of node expansions per search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { witness: StructureWitness },
    Absent,
    Inconclusive,
}

impl SearchOutcome {
    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent)
    }

    pub fn witness(&self) -> Option<&StructureWitness> {
        match self {
            SearchOutcome::Found { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "found",
            SearchOutcome::Absent => "absent",
            SearchOutcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn exhausted(&self) -> bool {
        self.spent >= self.limit
    }

    fn tick(&mut self) -> bool {
        if self.spent >= self.limit {
            return false;
        }
        self.spent += 1;
        true
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Clone, Copy)]
struct PathSpec {
    from: usize,
    to: usize,
    min_len: usize,
    max_len: usize,
}

impl PathSpec {
    fn new(from: usize, to: usize, min_len: usize) -> Self {
        PathSpec { from, to, min_len, max_len: usize::MAX }
    }
}

struct Engine<'g, 'b> {
    g: &'g Graph,
    in_use: Vec<bool>,
    /// Number of counted placed vertices adjacent to each vertex.
    blocked: Vec<u32>,
    seen: Vec<u32>,
    stamp: u32,
    queue: VecDeque<usize>,
    budget: &'b mut Budget,
    out_of_budget: bool,
}

impl<'g, 'b> Engine<'g, 'b> {
    fn new(g: &'g Graph, budget: &'b mut Budget) -> Self {
        let n = g.n();
        Engine {
            g,
            in_use: vec![false; n],
            blocked: vec![0; n],
            seen: vec![0; n],
            stamp: 0,
            queue: VecDeque::new(),
            budget,
            out_of_budget: false,
        }
    }

    fn place(&mut self, v: usize, counted: bool) {
        debug_assert!(!self.in_use[v]);
        self.in_use[v] = true;
        if counted {
            for &w in self.g.neighbors(v) {
                self.blocked[w] += 1;
            }
        }
    }

    fn unplace(&mut self, v: usize, counted: bool) {
        self.in_use[v] = false;
        if counted {
            for &w in self.g.neighbors(v) {
                self.blocked[w] -= 1;
            }
        }
    }

    /// Whether an induced continuation from `tail` to `to` can still exist.
    fn reachable(&mut self, tail: usize, to: usize) -> bool {
        let g = self.g;
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.fill(0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        self.queue.clear();
        for &z in g.neighbors(tail) {
            if self.in_use[z] {
                continue;
            }
            let allowed = 1 + g.has_edge(z, to) as u32;
            if self.blocked[z] <= allowed {
                self.seen[z] = stamp;
                self.queue.push_back(z);
            }
        }
        while let Some(z) = self.queue.pop_front() {
            if g.has_edge(z, to) {
                return true;
            }
            for &y in g.neighbors(z) {
                if self.in_use[y] || self.seen[y] == stamp {
                    continue;
                }
                let allowed = g.has_edge(y, tail) as u32 + g.has_edge(y, to) as u32;
                if self.blocked[y] <= allowed {
                    self.seen[y] = stamp;
                    self.queue.push_back(y);
                }
            }
        }
        false
    }

    fn grow<A, F>(
        &mut self,
        specs: &[PathSpec],
        i: usize,
        paths: &mut Vec<Vec<usize>>,
        admissible: &A,
        accept: &mut F,
    ) -> bool
    where
        A: Fn(usize, &[Vec<usize>], usize) -> bool,
        F: FnMut(&[Vec<usize>]) -> bool,
    {
        if i == specs.len() {
            return accept(paths);
        }
        if paths.len() == i {
            paths.push(vec![specs[i].from]);
            let found = self.grow(specs, i, paths, admissible, accept);
            paths.pop();
            return found;
        }
        let spec = specs[i];
        let tail = *paths[i].last().unwrap();
        let len = paths[i].len() - 1;
        let cycle = spec.from == spec.to;
        let g = self.g;

        if len == 0 && !cycle && g.has_edge(spec.from, spec.to) {
            // any longer path would have the edge as a chord
            if spec.min_len > 1 {
                return false;
            }
            paths[i].push(spec.to);
            let found = self.grow(specs, i + 1, paths, admissible, accept);
            paths[i].pop();
            return found;
        }
        if (len > 0 || !cycle) && !self.reachable(tail, spec.to) {
            return false;
        }
        for &x in g.neighbors(tail) {
            if self.in_use[x] {
                continue;
            }
            let closes = tail != spec.to && g.has_edge(x, spec.to);
            if self.blocked[x] != 1 + closes as u32 {
                continue;
            }
            if closes && len + 2 < spec.min_len {
                continue;
            }
            if len + if closes { 2 } else { 3 } > spec.max_len {
                continue;
            }
            if !admissible(i, paths, x) {
                continue;
            }
            if !self.budget.tick() {
                self.out_of_budget = true;
                return false;
            }
            self.place(x, true);
            paths[i].push(x);
            let found = if closes {
                paths[i].push(spec.to);
                let f = self.grow(specs, i + 1, paths, admissible, accept);
                paths[i].pop();
                f
            } else {
                self.grow(specs, i, paths, admissible, accept)
            };
            paths[i].pop();
            self.unplace(x, true);
            if found {
                return true;
            }
            if self.out_of_budget {
                return false;
            }
        }
        false
    }

    /// Places the anchors, runs the path search, and cleans up.
    fn run<A, F>(
        &mut self,
        anchors: &[usize],
        ignored: &[usize],
        specs: &[PathSpec],
        admissible: &A,
        accept: &mut F,
    ) -> Option<Vec<Vec<usize>>>
    where
        A: Fn(usize, &[Vec<usize>], usize) -> bool,
        F: FnMut(&[Vec<usize>]) -> bool,
    {
        for &a in anchors {
            self.place(a, true);
        }
        for &a in ignored {
            self.place(a, false);
        }
        let mut paths = Vec::with_capacity(specs.len());
        let mut found = None;
        let mut record = |p: &[Vec<usize>]| {
            if accept(p) {
                found = Some(p.to_vec());
                true
            } else {
                false
            }
        };
        self.grow(specs, 0, &mut paths, admissible, &mut record);
        for &a in ignored {
            self.unplace(a, false);
        }
        for &a in anchors {
            self.unplace(a, true);
        }
        found
    }
}

fn finish(found: Option<StructureWitness>, engine_out_of_budget: bool) -> SearchOutcome {
    match found {
        Some(witness) => SearchOutcome::Found { witness },
        None if engine_out_of_budget => SearchOutcome::Inconclusive,
        None => SearchOutcome::Absent,
    }
}

/// All triangles `(a, b, c)` with `a < b < c`, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        let na = g.neighbors(a);
        for &b in na.iter().filter(|&&b| b > a) {
            let nb = g.neighbors(b);
            // merge the two sorted lists above b
            let (mut i, mut j) = (0, 0);
            while i < na.len() && j < nb.len() {
                match na[i].cmp(&nb[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if na[i] > b {
                            out.push([a, b, na[i]]);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    out
}

/// Unit-capacity vertex-disjoint path counting between two vertices.
struct DisjointPaths {
    // arcs as (head, capacity); arc e and e ^ 1 are mutual reverses
    head: Vec<usize>,
    cap: Vec<u8>,
    base_cap: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl DisjointPaths {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut dp = DisjointPaths { head: Vec::new(), cap: Vec::new(), base_cap: Vec::new(), out: vec![Vec::new(); 2 * n] };
        // node 2v = v_in, 2v + 1 = v_out
        for v in 0..n {
            dp.arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            dp.arc(2 * u + 1, 2 * v, 1);
            dp.arc(2 * v + 1, 2 * u, 1);
        }
        dp.base_cap = dp.cap.clone();
        dp
    }

    fn arc(&mut self, a: usize, b: usize, c: u8) {
        self.out[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.out[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    /// True when at least `k` internally vertex-disjoint paths join `s` and `t`.
    fn at_least(&mut self, s: usize, t: usize, k: usize) -> bool {
        self.cap.copy_from_slice(&self.base_cap);
        let (src, sink) = (2 * s + 1, 2 * t);
        let nodes = self.out.len();
        let mut pred = vec![usize::MAX; nodes];
        for _ in 0..k {
            pred.fill(usize::MAX);
            let mut queue = VecDeque::from([src]);
            pred[src] = usize::MAX - 1;
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                for &e in &self.out[x] {
                    let y = self.head[e];
                    if self.cap[e] > 0 && pred[y] == usize::MAX {
                        pred[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if pred[sink] == usize::MAX {
                return false;
            }
            let mut x = sink;
            while x != src {
                let e = pred[x];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                x = self.head[e ^ 1];
            }
        }
        true
    }
}

/// Searches for a theta: two non-adjacent vertices joined by three induced
/// paths of length at least two with no edges between different paths.
pub fn find_theta(g: &Graph, budget: &mut Budget) -> SearchOutcome {
    let n = g.n();
    let mut flow = DisjointPaths::new(g);
    let mut engine = Engine::new(g, budget);
    for a in 0..n {
        if g.degree(a) < 3 {
            continue;
        }
        for b in a + 1..n {
            if g.degree(b) < 3 || g.has_edge(a, b) || !flow.at_least(a, b, 3) {
                continue;
            }
            let specs = [PathSpec::new(a, b, 2); 3];
            // first interior vertices increase from path to path
            let admissible = |i: usize, paths: &[Vec<usize>], x: usize| {
                i == 0 || paths[i].len() > 1 || x > paths[i - 1][1]
            };
            if let Some(p) = engine.run(&[a, b], &[], &specs, &admissible, &mut |_| true) {
                let paths = [p[0].clone(), p[1].clone(), p[2].clone()];
                return finish(Some(StructureWitness::Theta { a, b, paths }), false);
            }
            if engine.out_of_budget {
                return SearchOutcome::Inconclusive;
            }
        }
    }
    finish(None, engine.out_of_budget)
}

/// Searches for a pyramid: an apex joined to the three vertices of a
/// triangle by induced paths, at least two of them of length two or more.
pub fn find_pyramid(g: &Graph, budget: &mut Budget) -> SearchOutcome {
    let tris = triangles(g);
    let mut engine = Engine::new(g, budget);
    for t in &tris {
        for apex in 0..g.n() {
            if t.contains(&apex) {
                continue;
            }
            let touching = t.iter().filter(|&&x| g.has_edge(apex, x)).count();
            if touching > 1 || g.degree(apex) < 3 - touching {
                continue;
            }
            let specs: Vec<PathSpec> = t.iter().map(|&b| PathSpec::new(apex, b, 1)).collect();
            let anchors = [apex, t[0], t[1], t[2]];
            if let Some(p) = engine.run(&anchors, &[], &specs, &|_, _, _| true, &mut |_| true) {
                let paths = [p[0].clone(), p[1].clone(), p[2].clone()];
                return finish(Some(StructureWitness::Pyramid { apex, triangle: *t, paths }), false);
            }
            if engine.out_of_budget {
                return SearchOutcome::Inconclusive;
            }
        }
    }
    finish(None, engine.out_of_budget)
}

/// Searches for a prism: two vertex-disjoint triangles joined by three
/// disjoint induced paths. With `long_only`, at least one path must have
/// length two or more.
pub fn find_prism(g: &Graph, budget: &mut Budget, long_only: bool) -> SearchOutcome {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let tris = triangles(g);
    let mut engine = Engine::new(g, budget);
    for (i, ta) in tris.iter().enumerate() {
        for tb in &tris[i + 1..] {
            if ta.iter().any(|x| tb.contains(x)) {
                continue;
            }
            let mut adj = [[false; 3]; 3];
            let mut per_row = [0; 3];
            let mut per_col = [0; 3];
            for r in 0..3 {
                for c in 0..3 {
                    if g.has_edge(ta[r], tb[c]) {
                        adj[r][c] = true;
                        per_row[r] += 1;
                        per_col[c] += 1;
                    }
                }
            }
            if per_row.iter().chain(&per_col).any(|&k| k > 1) {
                continue;
            }
            for perm in PERMS {
                // the only edges between the triangles are length-one paths
                let consistent = (0..3).all(|r| (0..3).all(|c| !adj[r][c] || perm[r] == c));
                if !consistent || (long_only && (0..3).all(|r| adj[r][perm[r]])) {
                    continue;
                }
                let specs: Vec<PathSpec> =
                    (0..3).map(|r| PathSpec::new(ta[r], tb[perm[r]], 1)).collect();
                let anchors = [ta[0], ta[1], ta[2], tb[0], tb[1], tb[2]];
                if let Some(p) = engine.run(&anchors, &[], &specs, &|_, _, _| true, &mut |_| true) {
                    let paths = [p[0].clone(), p[1].clone(), p[2].clone()];
                    return finish(Some(StructureWitness::Prism { paths }), false);
                }
                if engine.out_of_budget {
                    return SearchOutcome::Inconclusive;
                }
            }
        }
    }
    finish(None, engine.out_of_budget)
}

/// Vertex sets of the biconnected components of `g - skip` (at least two
/// vertices each).
pub(crate) fn blocks_without(g: &Graph, skip: Option<usize>) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // frames: (vertex, parent, next neighbor index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();
    for s in 0..n {
        if Some(s) == skip || disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        frames.push((s, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
            let nb = g.neighbors(v);
            if *idx < nb.len() {
                let w = nb[*idx];
                *idx += 1;
                if Some(w) == skip || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some((x, y)) = edge_stack.pop() {
                            block.push(x);
                            block.push(y);
                            if (x, y) == (parent, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Searches for a wheel: a hole (induced cycle of length at least four) and
/// a vertex off the hole with at least three neighbors on it. With
/// `broken_only`, at least two sectors must have length two or more.
pub fn find_wheel(g: &Graph, budget: &mut Budget, broken_only: bool) -> SearchOutcome {
    let n = g.n();
    let mut engine = Engine::new(g, budget);
    let mut in_block = vec![false; n];
    for center in 0..n {
        if g.degree(center) < 3 {
            continue;
        }
        for block in blocks_without(g, Some(center)) {
            let spokes: Vec<usize> = block.iter().copied().filter(|&v| g.has_edge(center, v)).collect();
            if spokes.len() < 3 || block.len() < 4 {
                continue;
            }
            for &v in &block {
                in_block[v] = true;
            }
            // vertices outside the block can never be on the rim
            let outside: Vec<usize> = (0..n).filter(|&v| !in_block[v] && v != center).collect();
            for &v in &outside {
                engine.place(v, false);
            }
            for &u in &spokes[..spokes.len() - 2] {
                let specs = [PathSpec::new(u, u, 4)];
                // u is the smallest spoke on the rim
                let admissible = |_: usize, _: &[Vec<usize>], x: usize| x > u || !g.has_edge(center, x);
                let mut accept = |p: &[Vec<usize>]| {
                    let rim = &p[0][..p[0].len() - 1];
                    let w = StructureWitness::Wheel { center, rim: rim.to_vec() };
                    let k = rim.iter().filter(|&&x| g.has_edge(center, x)).count();
                    k >= 3 && (!broken_only || w.is_broken_wheel(g))
                };
                let found = engine.run(&[u], &[center], &specs, &admissible, &mut accept);
                if let Some(p) = found {
                    let rim = p[0][..p[0].len() - 1].to_vec();
                    for &v in &outside {
                        engine.unplace(v, false);
                    }
                    return finish(Some(StructureWitness::Wheel { center, rim }), false);
                }
                if engine.out_of_budget {
                    return SearchOutcome::Inconclusive;
                }
            }
            for &v in &outside {
                engine.unplace(v, false);
            }
            for &v in &block {
                in_block[v] = false;
            }
        }
    }
    finish(None, engine.out_of_budget)
}

/// Calls `f` once for every induced cycle of length `3..=max_len`, given as
/// a vertex sequence starting at its smallest vertex. Returns `false` if the
/// budget ran out before the enumeration finished.
pub fn for_each_induced_cycle<F: FnMut(&[usize])>(g: &Graph, max_len: usize, budget: &mut Budget, mut f: F) -> bool {
    let mut engine = Engine::new(g, budget);
    for u in 0..g.n() {
        // cycles through smaller vertices were reported already
        let smaller: Vec<usize> = (0..u).collect();
        let specs = [PathSpec { from: u, to: u, min_len: 3, max_len }];
        let mut accept = |p: &[Vec<usize>]| {
            let c = &p[0][..p[0].len() - 1];
            // each cycle is met in both directions; report one
            if c[1] < c[c.len() - 1] {
                f(c);
            }
            false
        };
        engine.run(&[u], &smaller, &specs, &|_, _, _| true, &mut accept);
        if engine.out_of_budget {
            return false;
        }
    }
    true
}

/// Searches for a triangle; exhaustive and polynomial.
pub fn find_triangle(g: &Graph) -> Option<StructureWitness> {
    for a in 0..g.n() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            if let Some(&c) = g.neighbors(b).iter().find(|&&c| c > b && g.has_edge(a, c)) {
                return Some(StructureWitness::Triangle { vertices: [a, b, c] });
            }
        }
    }
    None
}
