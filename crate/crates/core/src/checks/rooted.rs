//! Distortion along sampled root-anchored shortest paths.
//!
//! A shortest path starting at the root is sampled by picking an end vertex
//! and walking back to the root through uniformly chosen neighbors one
//! level closer. On such a path of `G`, every pair must satisfy
//! `d_H <= d_G + 20`; on such a path of `H`, every pair must satisfy
//! `d_G - 5 <= d_H`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{all_pairs_distances, bfs_distances, DistanceMatrix, Graph};

pub const G_PATH_SLACK: u32 = 20;
pub const H_PATH_SLACK: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathSide {
    G,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedViolation {
    pub side: PathSide,
    pub path: Vec<usize>,
    pub x: usize,
    pub y: usize,
    pub d_g: u32,
    pub d_h: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedPathReport {
    pub g_paths: usize,
    pub h_paths: usize,
    /// Largest `d_H - d_G` seen on a sampled path of `G`.
    pub max_g_excess: i64,
    /// Largest `d_G - d_H` seen on a sampled path of `H`.
    pub max_h_deficit: i64,
    pub violations: Vec<RootedViolation>,
}

impl RootedPathReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: RootedPathReport) {
        self.g_paths += other.g_paths;
        self.h_paths += other.h_paths;
        self.max_g_excess = self.max_g_excess.max(other.max_g_excess);
        self.max_h_deficit = self.max_h_deficit.max(other.max_h_deficit);
        self.violations.extend(other.violations);
    }
}

/// Samples a shortest path from `root` to a uniformly chosen vertex.
pub fn sample_rooted_path<R: Rng>(g: &Graph, level: &[u32], root: usize, rng: &mut R) -> Vec<usize> {
    let mut v = rng.gen_range(0..g.n());
    let mut path = vec![v];
    while v != root {
        let down: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| level[w] + 1 == level[v]).collect();
        v = down[rng.gen_range(0..down.len())];
        path.push(v);
    }
    path.reverse();
    path
}

/// Samples `samples` root-anchored shortest paths in each of `G` and `H`
/// and checks every pair of vertices on them.
pub fn rooted_path_check<R: Rng>(g: &Graph, h: &Graph, root: usize, samples: usize, rng: &mut R) -> RootedPathReport {
    let dg = all_pairs_distances(g);
    let dh = all_pairs_distances(h);
    rooted_path_check_with(g, h, root, samples, rng, &dg, &dh)
}

/// Like [`rooted_path_check`] with precomputed distance matrices.
pub fn rooted_path_check_with<R: Rng>(
    g: &Graph,
    h: &Graph,
    root: usize,
    samples: usize,
    rng: &mut R,
    dg: &DistanceMatrix,
    dh: &DistanceMatrix,
) -> RootedPathReport {
    let mut report = RootedPathReport::default();
    for (side, graph) in [(PathSide::G, g), (PathSide::H, h)] {
        let level = bfs_distances(graph, root).dist;
        for _ in 0..samples {
            let path = sample_rooted_path(graph, &level, root, rng);
            for i in 0..path.len() {
                for j in i + 1..path.len() {
                    let (x, y) = (path[i], path[j]);
                    let (d_g, d_h) = (dg.get(x, y), dh.get(x, y));
                    let diff = d_h as i64 - d_g as i64;
                    let bad = match side {
                        PathSide::G => {
                            report.max_g_excess = report.max_g_excess.max(diff);
                            d_h > d_g + G_PATH_SLACK
                        }
                        PathSide::H => {
                            report.max_h_deficit = report.max_h_deficit.max(-diff);
                            d_g > d_h + H_PATH_SLACK
                        }
                    };
                    if bad {
                        report.violations.push(RootedViolation { side, path: path.clone(), x, y, d_g, d_h });
                    }
                }
            }
            match side {
                PathSide::G => report.g_paths += 1,
                PathSide::H => report.h_paths += 1,
            }
        }
    }
    report
}
