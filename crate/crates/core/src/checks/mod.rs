//! Certificates for an embedding: distance bounds, tree-width at most two,
//! and absence of triangles, thetas and wheels in the host graph.

pub mod clusters;
pub mod distortion;
pub mod rooted;
pub mod treewidth;

use serde::{Deserialize, Serialize};

pub use clusters::{cluster_observations, cycle_cluster_check, ClusterObservation, CycleClusterReport};
pub use distortion::{distortion_report, BoundName, BoundViolation, DistortionError, DistortionReport};
pub use rooted::{rooted_path_check, RootedPathReport};
pub use treewidth::{replay_reduction, treewidth_at_most_2, ReductionOp, TreewidthCertificate};

pub use crate::search::{find_theta, find_triangle, find_wheel, Budget, SearchOutcome, DEFAULT_BUDGET};

use crate::embed::EmbeddingResult;
use crate::graph::Graph;
use crate::layering::LayeringPartition;
use crate::witness::StructureWitness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Node-expansion budget for each of the theta and wheel searches.
    pub budget: u64,
    /// Run the theta and wheel searches.
    pub structural: bool,
    /// Check induced cycles of `H` up to this length against the clusters.
    pub cycle_len: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { budget: DEFAULT_BUDGET, structural: true, cycle_len: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureStatus {
    Absent,
    Found,
    Inconclusive,
    Skipped,
}

impl From<&SearchOutcome> for StructureStatus {
    fn from(o: &SearchOutcome) -> Self {
        match o {
            SearchOutcome::Found { .. } => StructureStatus::Found,
            SearchOutcome::Absent => StructureStatus::Absent,
            SearchOutcome::Inconclusive => StructureStatus::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub max_abs_gap: u32,
    pub argmax_pair: Option<(usize, usize)>,
    pub root_equality: bool,
    pub violations: Vec<BoundViolation>,
    pub pair_count: u64,
    pub treewidth2: bool,
    pub triangle_free: bool,
    pub theta: StructureStatus,
    pub wheel: StructureStatus,
    /// Any structure found in `H`, for diagnosis.
    pub witnesses: Vec<StructureWitness>,
    /// Clusters whose attachment in `H` exceeds the per-cluster limits.
    pub cluster_violations: Vec<ClusterObservation>,
    pub cycles: Option<CycleClusterReport>,
}

impl CheckReport {
    /// True when every bound and certificate holds. Skipped searches count
    /// as holding; inconclusive ones do not.
    pub fn passed(&self) -> bool {
        self.root_equality
            && self.violations.is_empty()
            && self.treewidth2
            && self.triangle_free
            && matches!(self.theta, StructureStatus::Absent | StructureStatus::Skipped)
            && matches!(self.wheel, StructureStatus::Absent | StructureStatus::Skipped)
            && self.cluster_violations.is_empty()
            && self.cycles.as_ref().is_none_or(|c| c.complete && c.offending.is_empty())
    }

    /// True when nothing failed but some search ran out of budget.
    pub fn inconclusive(&self) -> bool {
        let pending = self.theta == StructureStatus::Inconclusive
            || self.wheel == StructureStatus::Inconclusive
            || self.cycles.as_ref().is_some_and(|c| !c.complete);
        pending && !self.failed()
    }

    /// True when some check produced a definite counterexample.
    pub fn failed(&self) -> bool {
        !self.root_equality
            || !self.violations.is_empty()
            || !self.treewidth2
            || !self.triangle_free
            || self.theta == StructureStatus::Found
            || self.wheel == StructureStatus::Found
            || !self.cluster_violations.is_empty()
            || self.cycles.as_ref().is_some_and(|c| !c.offending.is_empty())
    }
}

/// Runs every check on an embedding of `g`.
pub fn check_embedding(g: &Graph, res: &EmbeddingResult, opts: &CheckOptions) -> Result<CheckReport, DistortionError> {
    check_host(g, &res.h, &res.layering, opts)
}

/// Runs every check on a host graph `h` for `g`, using the layering of `g`
/// from the embedding root.
pub fn check_host(g: &Graph, h: &Graph, layering: &LayeringPartition, opts: &CheckOptions) -> Result<CheckReport, DistortionError> {
    let dist = distortion_report(g, h, layering.root)?;
    let treewidth2 = treewidth_at_most_2(h).verdict;
    let triangle = find_triangle(h);
    let mut witnesses: Vec<StructureWitness> = triangle.iter().cloned().collect();
    let (theta, wheel) = if opts.structural {
        let t = find_theta(h, &mut Budget::new(opts.budget));
        let w = find_wheel(h, &mut Budget::new(opts.budget), false);
        witnesses.extend(t.witness().cloned());
        witnesses.extend(w.witness().cloned());
        ((&t).into(), (&w).into())
    } else {
        (StructureStatus::Skipped, StructureStatus::Skipped)
    };
    let cluster_violations =
        cluster_observations(layering, h).into_iter().filter(|o| !o.within_limits()).collect();
    let cycles = opts.cycle_len.map(|len| cycle_cluster_check(layering, h, len, &mut Budget::new(opts.budget)));
    Ok(CheckReport {
        max_abs_gap: dist.max_abs_gap,
        argmax_pair: dist.argmax_pair,
        root_equality: dist.root_equality,
        violations: dist.violations,
        pair_count: dist.pair_count,
        treewidth2,
        triangle_free: triangle.is_none(),
        theta,
        wheel,
        witnesses,
        cluster_violations,
        cycles,
    })
}
