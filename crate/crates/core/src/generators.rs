//! Seeded graph families for test corpora.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a
//! [`GenSpec`] determines its graph exactly. Tree, chordal, split,
//! outerplanar and random graphs are relabeled by a random permutation so
//! that vertex 0 is not structurally special.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse generator spec {spec:?}: {msg}")]
    Parse { spec: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Tree,
    Cycle,
    /// Each new vertex is joined to a clique of at most `max_clique - 1`
    /// existing vertices.
    Chordal { max_clique: usize },
    /// A clique on `clique` vertices plus an independent set on the rest.
    /// Every independent vertex gets one random clique neighbor, plus each
    /// other clique vertex with probability `p`.
    Split { clique: usize, p: f64 },
    /// A random polygon triangulation with each diagonal dropped with
    /// probability `drop`.
    Outerplanar { drop: f64 },
    /// `K_{2,3}`, with any further vertices on a path hanging off vertex 4.
    K23,
    /// A hole on `n - 1` vertices and a center joined to three rim vertices
    /// spread around it.
    BrokenWheel,
    ErdosRenyi { p: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::Cycle => "cycle",
            Family::Chordal { .. } => "chordal",
            Family::Split { .. } => "split",
            Family::Outerplanar { .. } => "outerplanar",
            Family::K23 => "k23",
            Family::BrokenWheel => "broken_wheel",
            Family::ErdosRenyi { .. } => "erdos_renyi",
        }
    }

    /// Whether every member of the family is `K_{2,3}`-induced-minor-free.
    pub fn is_k23_free(&self) -> bool {
        !matches!(self, Family::K23 | Family::BrokenWheel | Family::ErdosRenyi { .. })
    }

    /// Family with default parameters for `n` vertices.
    pub fn default_for(name: &str, n: usize) -> Result<Family, GenError> {
        Ok(match name {
            "tree" => Family::Tree,
            "cycle" => Family::Cycle,
            "chordal" => Family::Chordal { max_clique: 4 },
            "split" => Family::Split { clique: (n / 4).max(1), p: 0.3 },
            "outerplanar" => Family::Outerplanar { drop: 0.3 },
            "k23" => Family::K23,
            "broken_wheel" => Family::BrokenWheel,
            "erdos_renyi" => Family::ErdosRenyi { p: 0.1 },
            other => return Err(GenError::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec { family, n, seed }
    }
}

impl fmt::Display for GenSpec {
    /// The flag form, e.g. `split:n=40,seed=3,clique=10,p=0.3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={},seed={}", self.family.name(), self.n, self.seed)?;
        match self.family {
            Family::Chordal { max_clique } => write!(f, ",max_clique={max_clique}"),
            Family::Split { clique, p } => write!(f, ",clique={clique},p={p}"),
            Family::Outerplanar { drop } => write!(f, ",drop={drop}"),
            Family::ErdosRenyi { p } => write!(f, ",p={p}"),
            _ => Ok(()),
        }
    }
}

impl FromStr for GenSpec {
    type Err = GenError;

    /// Parses `family:key=value,...`. Keys: `n`, `seed`, `max_clique`,
    /// `clique`, `independent` (sets `n = clique + independent`), `p`, `drop`.
    fn from_str(s: &str) -> Result<Self, GenError> {
        let err = |msg: String| GenError::Parse { spec: s.to_string(), msg };
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut n = None;
        let mut seed = 0;
        let mut params: Vec<(&str, &str)> = Vec::new();
        for kv in rest.split(',').filter(|kv| !kv.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| err(format!("expected key=value, got {kv:?}")))?;
            match k.trim() {
                "n" => n = Some(v.trim().parse().map_err(|e| err(format!("n: {e}")))?),
                "seed" => seed = v.trim().parse().map_err(|e| err(format!("seed: {e}")))?,
                key => params.push((key, v.trim())),
            }
        }
        let get_usize = |key: &str| -> Result<Option<usize>, GenError> {
            params
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| v.parse().map_err(|e| err(format!("{key}: {e}"))))
                .transpose()
        };
        let get_f64 = |key: &str| -> Result<Option<f64>, GenError> {
            params
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| v.parse().map_err(|e| err(format!("{key}: {e}"))))
                .transpose()
        };
        let known = ["max_clique", "clique", "independent", "p", "drop"];
        if let Some((k, _)) = params.iter().find(|(k, _)| !known.contains(k)) {
            return Err(err(format!("unknown key {k:?}")));
        }
        if let (Some(c), Some(i)) = (get_usize("clique")?, get_usize("independent")?) {
            n = Some(c + i);
        }
        let n = n.ok_or_else(|| err("missing n".into()))?;
        let mut family = Family::default_for(name.trim(), n)?;
        match &mut family {
            Family::Chordal { max_clique } => *max_clique = get_usize("max_clique")?.unwrap_or(*max_clique),
            Family::Split { clique, p } => {
                *clique = get_usize("clique")?.unwrap_or(*clique);
                *p = get_f64("p")?.unwrap_or(*p);
            }
            Family::Outerplanar { drop } => *drop = get_f64("drop")?.unwrap_or(*drop),
            Family::ErdosRenyi { p } => *p = get_f64("p")?.unwrap_or(*p),
            _ => {}
        }
        Ok(GenSpec { family, n, seed })
    }
}

fn check_probability(name: &str, p: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenError::InvalidParameter(format!("{name} = {p} is not a probability")))
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let too_small = |min: usize| GenError::InvalidParameter(format!("{} needs n >= {min}, got {n}", spec.family.name()));
    let (edges, relabel) = match spec.family {
        Family::Tree => {
            if n < 1 {
                return Err(too_small(1));
            }
            ((1..n).map(|v| (rng.gen_range(0..v), v)).collect(), true)
        }
        Family::Cycle => {
            if n < 3 {
                return Err(too_small(3));
            }
            ((0..n).map(|v| (v, (v + 1) % n)).collect(), false)
        }
        Family::Chordal { max_clique } => {
            if n < 1 {
                return Err(too_small(1));
            }
            if max_clique < 2 {
                return Err(GenError::InvalidParameter("max_clique must be at least 2".into()));
            }
            (chordal_edges(n, max_clique, &mut rng), true)
        }
        Family::Split { clique, p } => {
            check_probability("p", p)?;
            if clique < 1 || clique > n {
                return Err(GenError::InvalidParameter(format!("clique size {clique} not in 1..={n}")));
            }
            (split_edges(n, clique, p, &mut rng), true)
        }
        Family::Outerplanar { drop } => {
            check_probability("drop", drop)?;
            if n < 3 {
                return Err(too_small(3));
            }
            (outerplanar_edges(n, drop, &mut rng), true)
        }
        Family::K23 => {
            if n < 5 {
                return Err(too_small(5));
            }
            let mut e = vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
            e.extend((5..n).map(|v| (v - 1, v)));
            (e, false)
        }
        Family::BrokenWheel => {
            if n < 6 {
                return Err(too_small(6));
            }
            let k = n - 1;
            let mut e: Vec<(usize, usize)> = (0..k).map(|v| (v, (v + 1) % k)).collect();
            e.extend((0..3).map(|i| (i * k / 3, k)));
            (e, false)
        }
        Family::ErdosRenyi { p } => {
            check_probability("p", p)?;
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        e.push((u, v));
                    }
                }
            }
            (e, true)
        }
    };
    let edges = if relabel {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect()
    } else {
        edges
    };
    Ok(Graph::from_edges(n, edges).expect("generators emit simple graphs"))
}

fn chordal_edges(n: usize, max_clique: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let size = rng.gen_range(1..max_clique);
        let mut clique = vec![u];
        let mut cand = adj[u].clone();
        cand.shuffle(rng);
        for c in cand {
            if clique.len() >= size {
                break;
            }
            if clique.iter().all(|&x| present.contains(&(x.min(c), x.max(c)))) {
                clique.push(c);
            }
        }
        for &x in &clique {
            adj[x].push(v);
            adj[v].push(x);
            present.insert((x, v));
            edges.push((x, v));
        }
    }
    edges
}

fn split_edges(n: usize, clique: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in u + 1..clique {
            edges.push((u, v));
        }
    }
    for v in clique..n {
        let first = rng.gen_range(0..clique);
        for u in 0..clique {
            if u == first || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn outerplanar_edges(n: usize, drop: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    // sub-polygons given by their outer chord (i, j), i < j
    let mut stack = vec![(0, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let apex = rng.gen_range(i + 1..j);
        for (a, b) in [(i, apex), (apex, j)] {
            if b - a >= 2 {
                if !rng.gen_bool(drop) {
                    edges.push((a, b));
                }
                stack.push((a, b));
            }
        }
    }
    edges
}
