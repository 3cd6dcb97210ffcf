//! Greedy maximal γ-matching (a 2-approximation) and its bottom temporal
//! vertices.
//!
//! γ-edges are scanned in canonical order. A γ-edge is accepted when none of
//! its `2γ` temporal vertices is occupied, and accepting it occupies all of
//! them. Because the scan is non-decreasing in start time, every γ-edge of any
//! γ-matching contains a bottom temporal vertex `(t+γ-1, u)` of some accepted
//! γ-edge; kernelization builds on that.

use std::collections::{BTreeSet, HashSet};

use bitvec::vec::BitVec;

use crate::error::{check_gamma, Result};
use crate::stream::{GammaEdge, GammaMatching, LinkStream, TemporalVertex, Time, TimeInterval};

/// Above this many `(vertex, instant)` cells the occupancy map is sparse.
pub const DENSE_OCCUPANCY_LIMIT: u64 = 100_000_000;

/// Occupancy map `ρ` over `V × T`.
#[derive(Debug)]
pub enum TemporalVertexMark {
    Dense {
        origin: Time,
        span: u64,
        bits: BitVec,
    },
    Sparse(HashSet<TemporalVertex>),
}

impl TemporalVertexMark {
    pub fn for_stream(stream: &LinkStream, dense_limit: u64) -> Self {
        let TimeInterval { start, .. } = stream.interval();
        let span = stream.instant_count();
        let cells = span.saturating_mul(stream.vertex_count() as u64);
        if cells <= dense_limit {
            TemporalVertexMark::Dense {
                origin: start,
                span,
                bits: BitVec::repeat(false, cells as usize),
            }
        } else {
            TemporalVertexMark::Sparse(HashSet::new())
        }
    }

    #[inline]
    pub fn is_marked(&self, tv: TemporalVertex) -> bool {
        match self {
            TemporalVertexMark::Dense { origin, span, bits } => {
                bits[(tv.vertex.index() as u64 * span + (tv.time - origin)) as usize]
            }
            TemporalVertexMark::Sparse(set) => set.contains(&tv),
        }
    }

    #[inline]
    pub fn mark(&mut self, tv: TemporalVertex) {
        match self {
            TemporalVertexMark::Dense { origin, span, bits } => {
                let i = (tv.vertex.index() as u64 * *span + (tv.time - *origin)) as usize;
                bits.set(i, true);
            }
            TemporalVertexMark::Sparse(set) => {
                set.insert(tv);
            }
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, TemporalVertexMark::Dense { .. })
    }
}

/// When occupancy is recorded during the greedy scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MarkingPolicy {
    /// Occupy the temporal vertices of accepted γ-edges only.
    Accepted,
    /// Occupy the temporal vertices of every scanned γ-edge, accepted or not.
    /// Not maximal in general; kept to document the counterexample.
    Every,
}

/// Greedy γ-matching of `stream`.
pub fn greedy_matching(stream: &LinkStream, gamma: u64) -> Result<GammaMatching> {
    check_gamma(gamma, 1)?;
    let candidates = stream.enumerate_gamma_edges(gamma)?;
    Ok(greedy_over(stream, gamma, &candidates))
}

/// Greedy scan over an already enumerated, canonically sorted γ-edge list.
pub fn greedy_over(stream: &LinkStream, gamma: u64, candidates: &[GammaEdge]) -> GammaMatching {
    greedy_with_policy(stream, gamma, candidates, MarkingPolicy::Accepted, DENSE_OCCUPANCY_LIMIT)
}

pub(crate) fn greedy_with_policy(
    stream: &LinkStream,
    gamma: u64,
    candidates: &[GammaEdge],
    policy: MarkingPolicy,
    dense_limit: u64,
) -> GammaMatching {
    let mut rho = TemporalVertexMark::for_stream(stream, dense_limit);
    let mut chosen = Vec::new();
    for edge in candidates {
        let free = edge.temporal_vertices().all(|tv| !rho.is_marked(tv));
        if free {
            chosen.push(*edge);
        }
        if free || policy == MarkingPolicy::Every {
            for tv in edge.temporal_vertices() {
                rho.mark(tv);
            }
        }
    }
    GammaMatching::from_sorted(gamma, chosen)
}

/// `bot(ℳ)`: the last-instant temporal vertices of every member.
pub fn bottom_vertices(matching: &GammaMatching) -> BTreeSet<TemporalVertex> {
    let mut out = BTreeSet::new();
    for e in matching {
        let (u, v) = e.endpoints();
        out.insert(TemporalVertex::new(e.end(), u));
        out.insert(TemporalVertex::new(e.end(), v));
    }
    out
}
