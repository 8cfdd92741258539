//! Exact diameter, and the approximation obtained by measuring the host
//! graph of an embedding instead.

use std::collections::VecDeque;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embed::{embed, EmbedError, EmbedMode};
use crate::graph::{bfs_into, Graph, UNREACHABLE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiameterError {
    #[error("graph must be connected")]
    Disconnected,
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub embed_ms: f64,
    pub host_diameter_ms: f64,
    pub exact_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiameterResult {
    pub exact: Option<u32>,
    /// Diameter of the host graph.
    pub approx: u32,
    /// `exact - approx` when the exact value was computed.
    pub gap: Option<i64>,
    pub mode: EmbedMode,
    pub phase_timings: PhaseTimings,
}

/// Maximum eccentricity, by a BFS from every vertex.
pub fn diameter_exact(g: &Graph) -> Result<u32, DiameterError> {
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], VecDeque::new()),
            |(dist, queue), s| {
                bfs_into(g, s, dist, queue);
                let ecc = *dist.iter().max().unwrap();
                if ecc == UNREACHABLE {
                    Err(DiameterError::Disconnected)
                } else {
                    Ok(ecc)
                }
            },
        )
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Embeds `g` from `root` and returns the diameter of the host graph. With
/// `with_exact`, also computes the diameter of `g` and the gap.
pub fn diameter_via_embedding(g: &Graph, root: usize, mode: EmbedMode, with_exact: bool) -> Result<DiameterResult, DiameterError> {
    let t = Instant::now();
    let res = embed(g, root, mode)?;
    let embed_ms = ms(t);
    let t = Instant::now();
    let approx = diameter_exact(&res.h)?;
    let host_diameter_ms = ms(t);
    let (exact, exact_ms) = if with_exact {
        let t = Instant::now();
        let d = diameter_exact(g)?;
        (Some(d), Some(ms(t)))
    } else {
        (None, None)
    };
    Ok(DiameterResult {
        exact,
        approx,
        gap: exact.map(|e| e as i64 - approx as i64),
        mode,
        phase_timings: PhaseTimings { embed_ms, host_diameter_ms, exact_ms },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn exact_values() {
        assert_eq!(diameter_exact(&path(5)).unwrap(), 4);
        assert_eq!(diameter_exact(&cycle(5)).unwrap(), 2);
        assert_eq!(diameter_exact(&k23()).unwrap(), 2);
        assert_eq!(diameter_exact(&Graph::empty(1)).unwrap(), 0);
        assert_eq!(diameter_exact(&Graph::empty(2)), Err(DiameterError::Disconnected));
    }

    #[test]
    fn via_embedding() {
        let r = diameter_via_embedding(&cycle(5), 0, EmbedMode::General, true).unwrap();
        assert_eq!((r.exact, r.approx, r.gap), (Some(2), 2, Some(0)));
        let r = diameter_via_embedding(&path(7), 3, EmbedMode::UniversallySignableFast, true).unwrap();
        assert_eq!(r.gap, Some(0));
        assert!(matches!(diameter_via_embedding(&k23(), 0, EmbedMode::General, false), Err(DiameterError::Embed(_))));
    }
}
