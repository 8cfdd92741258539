//! Explicit forbidden induced structures and their validity checks.
//!
//! A witness names every vertex of the structure by role. [`StructureWitness::validate`]
//! recomputes the edge set the structure must induce and compares it with
//! the subgraph of `G` induced by the witness vertices, so a witness that
//! validates is a certificate independent of whatever search produced it.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid {kind} witness: {reason}")]
pub struct WitnessError {
    pub kind: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureWitness {
    Triangle {
        vertices: [usize; 3],
    },
    /// Three paths from `a` to `b`, each listed from `a` to `b`.
    Theta {
        a: usize,
        b: usize,
        paths: [Vec<usize>; 3],
    },
    /// Path `i` runs from the apex to `triangle[i]`.
    Pyramid {
        apex: usize,
        triangle: [usize; 3],
        paths: [Vec<usize>; 3],
    },
    /// Path `i` runs from `a_i` to `b_i`; `{a_1, a_2, a_3}` and
    /// `{b_1, b_2, b_3}` are the two triangles.
    Prism {
        paths: [Vec<usize>; 3],
    },
    /// The rim is listed in cyclic order.
    Wheel {
        center: usize,
        rim: Vec<usize>,
    },
}

impl StructureWitness {
    /// Short name, refined for long prisms and broken wheels.
    pub fn kind_name(&self, g: &Graph) -> &'static str {
        match self {
            StructureWitness::Triangle { .. } => "triangle",
            StructureWitness::Theta { .. } => "theta",
            StructureWitness::Pyramid { .. } => "pyramid",
            StructureWitness::Prism { .. } if self.is_long_prism() => "long_prism",
            StructureWitness::Prism { .. } => "prism",
            StructureWitness::Wheel { .. } if self.is_broken_wheel(g) => "broken_wheel",
            StructureWitness::Wheel { .. } => "wheel",
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = match self {
            StructureWitness::Triangle { vertices } => vertices.to_vec(),
            StructureWitness::Theta { paths, .. }
            | StructureWitness::Pyramid { paths, .. }
            | StructureWitness::Prism { paths } => paths.iter().flatten().copied().collect(),
            StructureWitness::Wheel { center, rim } => rim.iter().copied().chain([*center]).collect(),
        };
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn is_long_prism(&self) -> bool {
        matches!(self, StructureWitness::Prism { paths } if paths.iter().any(|p| p.len() >= 3))
    }

    /// Lengths of the sectors of a wheel, in rim order.
    pub fn sector_lengths(&self, g: &Graph) -> Vec<usize> {
        let StructureWitness::Wheel { center, rim } = self else { return Vec::new() };
        let spokes: Vec<usize> = (0..rim.len()).filter(|&i| g.has_edge(*center, rim[i])).collect();
        if spokes.is_empty() {
            return Vec::new();
        }
        let k = rim.len();
        (0..spokes.len())
            .map(|i| {
                let (s, t) = (spokes[i], spokes[(i + 1) % spokes.len()]);
                (t + k - s) % k + if spokes.len() == 1 { k } else { 0 }
            })
            .collect()
    }

    pub fn is_broken_wheel(&self, g: &Graph) -> bool {
        self.sector_lengths(g).iter().filter(|&&l| l >= 2).count() >= 2
    }

    /// Checks that the witness is what it claims and that its vertex set
    /// induces exactly the expected edges.
    pub fn validate(&self, g: &Graph) -> Result<(), WitnessError> {
        let kind = match self {
            StructureWitness::Triangle { .. } => "triangle",
            StructureWitness::Theta { .. } => "theta",
            StructureWitness::Pyramid { .. } => "pyramid",
            StructureWitness::Prism { .. } => "prism",
            StructureWitness::Wheel { .. } => "wheel",
        };
        let fail = |reason: String| WitnessError { kind, reason };
        let n = g.n();
        if let Some(&v) = self.vertices().iter().find(|&&v| v >= n) {
            return Err(fail(format!("vertex {v} out of range")));
        }

        let mut expected: HashSet<(usize, usize)> = HashSet::new();
        let add_path = |p: &[usize], expected: &mut HashSet<(usize, usize)>| {
            for w in p.windows(2) {
                expected.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        };
        // occurrences of each vertex across the structure's parts
        let mut uses: HashMap<usize, usize> = HashMap::new();
        let mut count = |vs: &[usize]| {
            for &v in vs {
                *uses.entry(v).or_default() += 1;
            }
        };

        match self {
            StructureWitness::Triangle { vertices } => {
                count(vertices);
                let [a, b, c] = *vertices;
                for (x, y) in [(a, b), (b, c), (a, c)] {
                    expected.insert((x.min(y), x.max(y)));
                }
            }
            StructureWitness::Theta { a, b, paths } => {
                if a == b {
                    return Err(fail("ends coincide".into()));
                }
                for p in paths {
                    if p.len() < 3 {
                        return Err(fail("a path is shorter than two".into()));
                    }
                    if p.first() != Some(a) || p.last() != Some(b) {
                        return Err(fail("a path does not run from a to b".into()));
                    }
                    count(&p[1..p.len() - 1]);
                    add_path(p, &mut expected);
                }
                count(&[*a, *b]);
            }
            StructureWitness::Pyramid { apex, triangle, paths } => {
                let mut long = 0;
                for (p, &t) in paths.iter().zip(triangle) {
                    if p.len() < 2 || p.first() != Some(apex) || p.last() != Some(&t) {
                        return Err(fail("a path does not run from the apex to its triangle vertex".into()));
                    }
                    if p.len() >= 3 {
                        long += 1;
                    }
                    count(&p[1..]);
                    add_path(p, &mut expected);
                }
                if long < 2 {
                    return Err(fail("fewer than two paths of length at least two".into()));
                }
                count(&[*apex]);
                let [x, y, z] = *triangle;
                for (u, v) in [(x, y), (y, z), (x, z)] {
                    expected.insert((u.min(v), u.max(v)));
                }
            }
            StructureWitness::Prism { paths } => {
                for p in paths {
                    if p.len() < 2 {
                        return Err(fail("a path has length zero".into()));
                    }
                    count(p);
                    add_path(p, &mut expected);
                }
                for ends in [
                    [paths[0][0], paths[1][0], paths[2][0]],
                    [*paths[0].last().unwrap(), *paths[1].last().unwrap(), *paths[2].last().unwrap()],
                ] {
                    let [x, y, z] = ends;
                    for (u, v) in [(x, y), (y, z), (x, z)] {
                        expected.insert((u.min(v), u.max(v)));
                    }
                }
            }
            StructureWitness::Wheel { center, rim } => {
                if rim.len() < 4 {
                    return Err(fail("rim is shorter than four".into()));
                }
                count(rim);
                count(&[*center]);
                let k = rim.len();
                for i in 0..k {
                    let (x, y) = (rim[i], rim[(i + 1) % k]);
                    expected.insert((x.min(y), x.max(y)));
                }
                let spokes: Vec<usize> = rim.iter().copied().filter(|&x| g.has_edge(*center, x)).collect();
                if spokes.len() < 3 {
                    return Err(fail(format!("center has {} rim neighbors", spokes.len())));
                }
                for x in spokes {
                    expected.insert((x.min(*center), x.max(*center)));
                }
            }
        }

        if let Some((&v, _)) = uses.iter().find(|(_, &c)| c > 1) {
            return Err(fail(format!("vertex {v} is used twice")));
        }
        for &(u, v) in &expected {
            if !g.has_edge(u, v) {
                return Err(fail(format!("expected edge {u}-{v} is missing")));
            }
        }
        let members: HashSet<usize> = uses.keys().copied().collect();
        for &u in &members {
            for &w in g.neighbors(u) {
                if w > u && members.contains(&w) && !expected.contains(&(u, w)) {
                    return Err(fail(format!("extra edge {u}-{w} inside the structure")));
                }
            }
        }
        Ok(())
    }
}
