//! Brute-force recognizers for small graphs: Truemper configurations,
//! universal signability, direct induced-minor search, and strong isometric
//! path complexity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bfs_distances, Graph};
use crate::search::{find_prism, find_pyramid, find_theta, find_wheel, Budget, SearchOutcome};
use crate::witness::StructureWitness;

/// Largest host graph accepted by [`induced_minor_bruteforce`].
pub const INDUCED_MINOR_MAX_N: usize = 12;
/// Largest graph accepted by [`sipc_bruteforce`].
pub const SIPC_MAX_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("induced minor search is capped at {INDUCED_MINOR_MAX_N} vertices (got {0}); use find_truemper_configuration")]
    MinorCapExceeded(usize),
    #[error("sipc brute force is capped at {SIPC_MAX_N} vertices (got {0})")]
    SipcCapExceeded(usize),
    #[error("graph must be connected")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Free,
    NotFree,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Truemper,
    UniversallySignable,
    DirectMinor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionReport {
    pub verdict: Verdict,
    pub witness: Option<StructureWitness>,
    pub method: Method,
    pub budget_spent: u64,
}

type Search = fn(&Graph, &mut Budget) -> SearchOutcome;

fn run_searches(g: &Graph, budget: u64, method: Method, searches: &[Search]) -> RecognitionReport {
    let mut spent = 0;
    let mut inconclusive = false;
    for search in searches {
        let mut b = Budget::new(budget);
        let outcome = search(g, &mut b);
        spent += b.spent();
        match outcome {
            SearchOutcome::Found { witness } => {
                if let Err(e) = witness.validate(g) {
                    panic!("search produced an invalid witness: {e}");
                }
                return RecognitionReport { verdict: Verdict::NotFree, witness: Some(witness), method, budget_spent: spent };
            }
            SearchOutcome::Inconclusive => inconclusive = true,
            SearchOutcome::Absent => {}
        }
    }
    let verdict = if inconclusive { Verdict::Inconclusive } else { Verdict::Free };
    RecognitionReport { verdict, witness: None, method, budget_spent: spent }
}

/// Looks for a theta, pyramid, long prism or broken wheel, in that order.
/// A graph has none of them iff it has no `K_{2,3}` induced minor. Each
/// search gets its own budget of `budget` node expansions.
pub fn find_truemper_configuration(g: &Graph, budget: u64) -> RecognitionReport {
    run_searches(
        g,
        budget,
        Method::Truemper,
        &[find_theta, find_pyramid, |g, b| find_prism(g, b, true), |g, b| find_wheel(g, b, true)],
    )
}

/// Looks for a theta, pyramid, prism or wheel, in that order.
pub fn is_universally_signable(g: &Graph, budget: u64) -> RecognitionReport {
    run_searches(
        g,
        budget,
        Method::UniversallySignable,
        &[find_theta, find_pyramid, |g, b| find_prism(g, b, false), |g, b| find_wheel(g, b, false)],
    )
}

/// The complete bipartite graph `K_{2,3}`: sides `{0, 1}` and `{2, 3, 4}`.
pub fn k23_pattern() -> Graph {
    Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).expect("valid edges")
}

/// `K_{2,3}`-freeness decided by [`induced_minor_bruteforce`]. Never
/// inconclusive, and carries no witness.
pub fn k23_free_by_minor_search(g: &Graph) -> Result<RecognitionReport, OracleError> {
    let found = induced_minor_bruteforce(g, &k23_pattern())?;
    Ok(RecognitionReport {
        verdict: if found { Verdict::NotFree } else { Verdict::Free },
        witness: None,
        method: Method::DirectMinor,
        budget_spent: 0,
    })
}

/// Decides whether `pattern` is an induced minor of `g` by searching for
/// pairwise disjoint connected branch sets, one per pattern vertex, such
/// that two branch sets touch iff the pattern vertices are adjacent.
pub fn induced_minor_bruteforce(g: &Graph, pattern: &Graph) -> Result<bool, OracleError> {
    let n = g.n();
    if n > INDUCED_MINOR_MAX_N {
        return Err(OracleError::MinorCapExceeded(n));
    }
    let k = pattern.n();
    if k == 0 {
        return Ok(true);
    }
    if k > n {
        return Ok(false);
    }
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let full = (1u32 << n) - 1;
    let mut sets: Vec<(u32, u32)> = Vec::new(); // (set, open neighborhood)
    for mask in 1..=full {
        if connected_mask(mask, &nbr) {
            let mut nb = 0;
            for v in bits(mask) {
                nb |= nbr[v];
            }
            sets.push((mask, nb & !mask));
        }
    }
    // pattern vertices in an order where each one (after the first) has an
    // earlier neighbor when possible, so adjacency constraints bite early
    let order = constraint_order(pattern);
    let mut chosen: Vec<(u32, u32)> = Vec::with_capacity(k);
    Ok(place_branch_sets(pattern, &order, &sets, &mut chosen, 0))
}

fn place_branch_sets(pattern: &Graph, order: &[usize], sets: &[(u32, u32)], chosen: &mut Vec<(u32, u32)>, used: u32) -> bool {
    let i = chosen.len();
    if i == order.len() {
        return true;
    }
    let p = order[i];
    'next: for &(s, nb) in sets {
        if s & used != 0 {
            continue;
        }
        for (j, &(t, _)) in chosen.iter().enumerate() {
            let touches = nb & t != 0;
            if touches != pattern.has_edge(p, order[j]) {
                continue 'next;
            }
        }
        chosen.push((s, nb));
        if place_branch_sets(pattern, order, sets, chosen, used | s) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn constraint_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (pattern.neighbors(v).iter().filter(|&&w| placed[w]).count(), pattern.degree(v), usize::MAX - v))
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

fn connected_mask(mask: u32, nbr: &[u32]) -> bool {
    let start = mask & mask.wrapping_neg();
    let mut reached = start;
    loop {
        let mut grown = reached;
        for v in bits(reached) {
            grown |= nbr[v] & mask;
        }
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

/// Strong isometric path complexity: the maximum, over vertices `v` and
/// shortest paths `P`, of the fewest shortest paths ending at `v` whose
/// vertex sets cover `V(P)`.
pub fn sipc_bruteforce(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > SIPC_MAX_N {
        return Err(OracleError::SipcCapExceeded(n));
    }
    if n == 0 {
        return Ok(0);
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    // vertex masks of all shortest paths starting at each vertex
    let rooted: Vec<Vec<u32>> = (0..n).map(|v| shortest_path_masks(g, v)).collect();
    let mut paths: Vec<u32> = rooted.iter().flatten().copied().collect();
    paths.sort_unstable();
    paths.dedup();

    let mut best = 0;
    for family in &rooted {
        for &p in &paths {
            let mut pieces: Vec<u32> = family.iter().map(|&s| s & p).filter(|&s| s != 0).collect();
            pieces.sort_unstable();
            pieces.dedup();
            best = best.max(min_cover(p, &pieces));
        }
    }
    Ok(best)
}

fn shortest_path_masks(g: &Graph, v: usize) -> Vec<u32> {
    let dist = bfs_distances(g, v).dist;
    let mut out = Vec::new();
    let mut stack = vec![(v, 1u32 << v)];
    while let Some((x, mask)) = stack.pop() {
        out.push(mask);
        for &y in g.neighbors(x) {
            if dist[y] == dist[x] + 1 {
                stack.push((y, mask | 1 << y));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Fewest sets from `pieces` whose union contains `target`, by BFS over the
/// subsets of `target`.
fn min_cover(target: u32, pieces: &[u32]) -> usize {
    let mut seen = std::collections::HashSet::from([0u32]);
    let mut frontier = vec![0u32];
    let mut steps = 0;
    while !frontier.contains(&target) {
        steps += 1;
        let mut next = Vec::new();
        for &m in &frontier {
            for &p in pieces {
                let grown = m | p;
                if seen.insert(grown) {
                    next.push(grown);
                }
            }
        }
        assert!(!next.is_empty(), "pieces do not cover the target");
        frontier = next;
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn truemper_on_small_graphs() {
        let r = find_truemper_configuration(&k23(), 1_000_000);
        assert_eq!(r.verdict, Verdict::NotFree);
        assert!(matches!(r.witness, Some(StructureWitness::Theta { .. })));
        assert_eq!(find_truemper_configuration(&cycle(7), 1_000_000).verdict, Verdict::Free);
        // W5 is not universally signable but is K_{2,3}-free (no broken wheel)
        assert_eq!(find_truemper_configuration(&wheel(5), 1_000_000).verdict, Verdict::Free);
        let r = is_universally_signable(&wheel(5), 1_000_000);
        assert_eq!(r.verdict, Verdict::NotFree);
        assert!(matches!(r.witness, Some(StructureWitness::Wheel { .. })));
        assert_eq!(is_universally_signable(&cycle(5), 1_000_000).verdict, Verdict::Free);
    }

    #[test]
    fn broken_wheel_is_found() {
        let g = Graph::from_edges(7, (0..6).map(|i| (i, (i + 1) % 6)).chain([(6, 0), (6, 2), (6, 4)])).unwrap();
        let r = find_truemper_configuration(&g, 1_000_000);
        assert_eq!(r.verdict, Verdict::NotFree);
        // no theta, pyramid or prism: the wheel is the only configuration
        let w = r.witness.unwrap();
        assert_eq!(w.kind_name(&g), "broken_wheel");
        assert_eq!(w.sector_lengths(&g), vec![2, 2, 2]);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let g = Graph::from_edges(8, [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)]).unwrap();
        let r = find_truemper_configuration(&g, 1);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.witness.is_none());
    }

    #[test]
    fn induced_minor_examples() {
        assert!(induced_minor_bruteforce(&k23(), &k23()).unwrap());
        assert!(!induced_minor_bruteforce(&cycle(5), &k23()).unwrap());
        let pendant = Graph::from_edges(6, k23().edges().chain([(4, 5)])).unwrap();
        assert!(induced_minor_bruteforce(&pendant, &k23()).unwrap());
        assert!(induced_minor_bruteforce(&wheel(5), &complete(4)).unwrap());
        // contracting a cycle only yields shorter cycles
        assert!(induced_minor_bruteforce(&cycle(6), &complete(3)).unwrap());
        assert!(induced_minor_bruteforce(&cycle(6), &cycle(4)).unwrap());
        assert!(!induced_minor_bruteforce(&cycle(6), &complete(4)).unwrap());
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!induced_minor_bruteforce(&cycle(6), &claw).unwrap());
        assert!(matches!(induced_minor_bruteforce(&path(13), &k23()), Err(OracleError::MinorCapExceeded(13))));
    }

    #[test]
    fn sipc_examples() {
        assert_eq!(sipc_bruteforce(&path(2)).unwrap(), 1);
        assert_eq!(sipc_bruteforce(&path(5)).unwrap(), 2);
        assert_eq!(sipc_bruteforce(&Graph::empty(1)).unwrap(), 1);
        assert!(sipc_bruteforce(&cycle(4)).unwrap() <= 71);
        assert!(matches!(sipc_bruteforce(&path(11)), Err(OracleError::SipcCapExceeded(11))));
    }
}
