mod common;

use k23_embed::checks::{cluster_observations, distortion_report, replay_reduction, treewidth_at_most_2};
use k23_embed::checks::rooted::sample_rooted_path;
use k23_embed::diameter::diameter_exact;
use k23_embed::embed::replay_branch_trace;
use k23_embed::generators::{generate, Family, GenSpec};
use k23_embed::graph::{all_pairs_distances, bfs_distances, connected_components, UNREACHABLE};
use k23_embed::layering::check_layering_invariants;
use k23_embed::oracles::{find_truemper_configuration, is_universally_signable, Verdict};
use k23_embed::search::DEFAULT_BUDGET;
use k23_embed::{build_layering, embed, EmbedMode, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
        let extra = proptest::collection::vec((0..n, 0..n), 0..=2 * n);
        (parents, extra).prop_map(move |(parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))));
            edges.sort();
            edges.dedup();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn free_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Tree),
        Just(Family::Cycle),
        (2..6usize).prop_map(|max_clique| Family::Chordal { max_clique }),
        (1..6usize, 0.0..1.0f64).prop_map(|(clique, p)| Family::Split { clique, p }),
        (0.0..1.0f64).prop_map(|drop| Family::Outerplanar { drop }),
    ]
}

fn free_graph(max_n: usize) -> impl Strategy<Value = (GenSpec, Graph)> {
    (free_family(), 3..=max_n, any::<u64>()).prop_filter_map("parameters out of range", |(family, n, seed)| {
        let spec = GenSpec::new(family, n, seed);
        generate(&spec).ok().map(|g| (spec, g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bfs_is_lipschitz_on_edges(g in any_graph(14), r in any::<prop::sample::Index>()) {
        let r = r.index(g.n());
        let d = bfs_distances(&g, r).dist;
        prop_assert_eq!(d[r], 0);
        for (u, v) in g.edges() {
            if d[u] != UNREACHABLE || d[v] != UNREACHABLE {
                prop_assert!(d[u].abs_diff(d[v]) <= 1);
            }
        }
    }

    #[test]
    fn all_pairs_matches_bfs_and_floyd_warshall(g in any_graph(12)) {
        let apd = all_pairs_distances(&g);
        let fw = floyd_warshall(&g);
        for u in 0..g.n() {
            prop_assert_eq!(apd.row(u), &bfs_distances(&g, u).dist[..]);
            prop_assert_eq!(apd.row(u), &fw[u][..]);
        }
    }

    #[test]
    fn serialization_round_trips(g in any_graph(14)) {
        let text = g.to_edge_list();
        prop_assert_eq!(Graph::parse(&text).unwrap(), g.clone());
        prop_assert_eq!(edge_set(&g).len(), g.m());
        for v in 0..g.n() {
            prop_assert!(g.neighbors(v).windows(2).all(|w| w[0] < w[1]));
            prop_assert!(g.neighbors(v).iter().all(|&w| w != v && g.neighbors(w).contains(&v)));
        }
    }

    #[test]
    fn components_partition_the_vertices(g in any_graph(14)) {
        let comps = connected_components(&g, None);
        let mut all: Vec<usize> = comps.iter().flatten().copied().collect();
        all.sort();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        prop_assert!(comps.windows(2).all(|w| w[0][0] < w[1][0]));
        let d = floyd_warshall(&g);
        for c in &comps {
            prop_assert!(c.iter().all(|&v| d[c[0]][v] != INF));
        }
    }

    #[test]
    fn layering_matches_the_definition(g in connected_graph(20), r in any::<prop::sample::Index>()) {
        let r = r.index(g.n());
        let lp = build_layering(&g, r).unwrap();
        let ours: Vec<Vec<usize>> = lp.clusters.iter().map(|c| c.members.clone()).collect();
        prop_assert_eq!(ours, naive_clusters(&g, r));
        for c in &lp.clusters {
            prop_assert_eq!(&c.parent_set, &naive_parent_set(&g, r, &c.members));
        }
        prop_assert_eq!(lp.tree_edges.len() + 1, lp.clusters.len());
        prop_assert!(lp.tree_edges.iter().all(|&(p, c)| p < c));
        prop_assert!(check_layering_invariants(&g, &lp).is_ok());
    }

    #[test]
    fn treewidth_agrees_with_elimination_search(g in any_graph(8)) {
        let cert = treewidth_at_most_2(&g);
        prop_assert_eq!(cert.verdict, treewidth_le2_bruteforce(&g));
        let left = replay_reduction(&g, &cert).unwrap();
        prop_assert_eq!(left <= 1, cert.verdict);
    }

    #[test]
    fn configuration_witnesses_validate(g in connected_graph(9)) {
        let rep = find_truemper_configuration(&g, DEFAULT_BUDGET);
        prop_assert_ne!(rep.verdict, Verdict::Inconclusive);
        if rep.verdict == Verdict::NotFree {
            prop_assert!(rep.witness.as_ref().unwrap().validate(&g).is_ok());
        }
        let us = is_universally_signable(&g, DEFAULT_BUDGET);
        if let Some(w) = &us.witness {
            prop_assert!(w.validate(&g).is_ok());
        }
        // universally signable graphs are K_{2,3}-induced-minor-free
        if us.verdict == Verdict::Free {
            prop_assert_eq!(rep.verdict, Verdict::Free);
        }
    }

    #[test]
    fn diameter_matches_the_matrix(g in connected_graph(16)) {
        prop_assert_eq!(diameter_exact(&g).unwrap(), naive_diameter(&g));
    }

    #[test]
    fn generation_is_deterministic((spec, g) in free_graph(60)) {
        prop_assert_eq!(&generate(&spec).unwrap(), &g);
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<GenSpec>().unwrap(), spec);
        let json = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(serde_json::from_str::<GenSpec>(&json).unwrap(), spec);
        prop_assert!(g.is_connected());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn embedding_invariants((spec, g) in free_graph(40), r in any::<prop::sample::Index>()) {
        let r = r.index(g.n());
        let res = embed(&g, r, EmbedMode::General).unwrap();
        let h = &res.h;
        prop_assert_eq!(h.n(), g.n());
        prop_assert!(h.is_connected(), "{}", spec);
        for c in &res.layering.clusters[1..] {
            for &v in &c.members {
                prop_assert!(h.neighbors(v).iter().any(|w| c.parent_set.contains(w)));
            }
        }
        prop_assert_eq!(bfs_distances(h, r).dist, bfs_distances(&g, r).dist);
        let rep = distortion_report(&g, h, r).unwrap();
        prop_assert!(rep.passed(), "{} {:?}", spec, rep.violations);
        prop_assert!(treewidth_at_most_2(h).verdict);
        prop_assert!(h.m() + 3 <= 2 * h.n() || h.n() < 3);
        prop_assert!(cluster_observations(&res.layering, h).iter().all(|o| o.within_limits()));
        prop_assert_eq!(&replay_branch_trace(&res.trace, &g, r).unwrap(), h);
        let fast = embed(&g, r, EmbedMode::UniversallySignableFast).unwrap();
        prop_assert_eq!(&fast.h, h);
        prop_assert_eq!(&embed(&g, r, EmbedMode::General).unwrap().h, h);
    }

    #[test]
    fn small_free_graphs_certify((spec, g) in free_graph(14)) {
        prop_assert_eq!(find_truemper_configuration(&g, DEFAULT_BUDGET).verdict, Verdict::Free, "{}", spec);
    }

    #[test]
    fn family_shapes_hold((spec, g) in free_graph(30)) {
        match spec.family {
            Family::Chordal { .. } => prop_assert!(has_perfect_elimination_order(&g)),
            Family::Split { .. } => prop_assert!(is_split(&g)),
            Family::Outerplanar { .. } => {
                prop_assert!(treewidth_at_most_2(&g).verdict);
                prop_assert!(g.m() + 3 <= 2 * g.n());
            }
            Family::Tree => prop_assert_eq!(g.m() + 1, g.n()),
            Family::Cycle => prop_assert!((0..g.n()).all(|v| g.degree(v) == 2)),
            _ => {}
        }
    }

    #[test]
    fn sampled_rooted_paths_are_shortest(g in connected_graph(20), seed in any::<u64>()) {
        let level = bfs_distances(&g, 0).dist;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample_rooted_path(&g, &level, 0, &mut rng);
        prop_assert_eq!(p[0], 0);
        prop_assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1]) && level[w[1]] == level[w[0]] + 1));
    }
}

/// Repeatedly removes a vertex whose remaining neighbors form a clique.
fn has_perfect_elimination_order(g: &Graph) -> bool {
    let a = adjacency_matrix(g);
    let mut alive = vec![true; g.n()];
    for _ in 0..g.n() {
        let simplicial = (0..g.n()).find(|&v| {
            alive[v] && {
                let nb: Vec<usize> = (0..g.n()).filter(|&w| alive[w] && a[v][w]).collect();
                nb.iter().all(|&x| nb.iter().all(|&y| x == y || a[x][y]))
            }
        });
        match simplicial {
            Some(v) => alive[v] = false,
            None => return false,
        }
    }
    true
}

/// Split graphs are exactly the graphs whose degree sequence satisfies the
/// Hammer–Simeone equality at the largest `k` with `d_k >= k - 1`.
fn is_split(g: &Graph) -> bool {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_by(|a, b| b.cmp(a));
    let k = (0..d.len()).filter(|&i| d[i] >= i).count();
    let lhs: usize = d[..k].iter().sum();
    let rhs: usize = k * (k.saturating_sub(1)) + d[k..].iter().sum::<usize>();
    lhs == rhs
}
