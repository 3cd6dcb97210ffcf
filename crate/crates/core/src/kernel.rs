//! Kernelization of γ-matching parameterized by the solution size `k`.
//!
//! With `ℓ` the size of the greedy matching: `ℓ ≥ k` answers yes, `2ℓ < k`
//! answers no, and otherwise the stream is pruned down to the timed edges of a
//! pool of γ-edges built around the greedy matching's bottom temporal
//! vertices. For every bottom vertex `(t, u)` and every start `t'` in
//! `[max(t_min, t-γ+1), t]`, the pool keeps at most `2k-1` of the γ-edges
//! `Γ_γ(t', u, ·)`, those with the smallest partner vertices. The pruned
//! stream has at most `2(k-1)(2k-1)γ²` timed edges and admits a γ-matching of
//! size `k` iff the input does.

use std::collections::HashMap;
use std::fmt;

use crate::approx::{bottom_vertices, greedy_over};
use crate::error::{check_gamma, Error, Result};
use crate::stream::{GammaEdge, GammaMatching, LinkStream, TimedEdge, Time, VertexId};

/// Exact ratio of two counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub numerator: usize,
    pub denominator: usize,
}

impl Ratio {
    pub fn value(&self) -> f64 {
        if self.denominator == 0 {
            1.0
        } else {
            self.numerator as f64 / self.denominator as f64
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// A pruned instance.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub stream: LinkStream,
    pub k: usize,
    /// The retained γ-edges `𝒫`, canonical order, no duplicates.
    pub pool: Vec<GammaEdge>,
    pub greedy: GammaMatching,
}

#[derive(Debug, Clone)]
pub enum KernelOutcome {
    /// The greedy matching already has size at least `k`.
    SolutionFound(GammaMatching),
    /// `2ℓ < k`, so no γ-matching of size `k` exists.
    NoSolution { greedy_size: usize },
    Kernel(Kernel),
}

impl KernelOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            KernelOutcome::SolutionFound(_) => "solution-found",
            KernelOutcome::NoSolution { .. } => "no-solution",
            KernelOutcome::Kernel(_) => "kernel",
        }
    }
}

/// `2(k-1)(2k-1)γ²`, the bound on kernel timed edges.
pub fn kernel_edge_bound(k: usize, gamma: u64) -> u128 {
    pool_bound(k, gamma) * gamma as u128
}

/// `2(k-1)(2k-1)γ`, the bound on `|𝒫|`.
pub fn pool_bound(k: usize, gamma: u64) -> u128 {
    let k = k as u128;
    if k == 0 {
        return 0;
    }
    2 * (k - 1) * (2 * k - 1) * gamma as u128
}

pub fn kernelize(stream: &LinkStream, gamma: u64, k: usize) -> Result<KernelOutcome> {
    check_gamma(gamma, 1)?;
    let candidates = stream.enumerate_gamma_edges(gamma)?;
    kernelize_with(stream, gamma, k, &candidates)
}

/// [`kernelize`] over an already enumerated γ-edge list.
pub fn kernelize_with(
    stream: &LinkStream,
    gamma: u64,
    k: usize,
    candidates: &[GammaEdge],
) -> Result<KernelOutcome> {
    check_gamma(gamma, 1)?;
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let greedy = greedy_over(stream, gamma, candidates);
    let l = greedy.len();
    if l >= k {
        return Ok(KernelOutcome::SolutionFound(greedy));
    }
    if 2 * l < k {
        return Ok(KernelOutcome::NoSolution { greedy_size: l });
    }
    Ok(KernelOutcome::Kernel(prune(stream, k, greedy, candidates)?))
}

/// Builds the pool and the pruned stream unconditionally, whatever the
/// relation between `k` and the greedy size.
pub fn prune(
    stream: &LinkStream,
    k: usize,
    greedy: GammaMatching,
    candidates: &[GammaEdge],
) -> Result<Kernel> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let gamma = greedy.gamma();
    let t_min = stream.interval().start;
    let keep = 2 * k - 1;

    // S(t', u) for every (t', u) reachable from a bottom vertex.
    let mut groups: HashMap<(Time, VertexId), Vec<VertexId>> = HashMap::new();
    for bot in bottom_vertices(&greedy) {
        let lo = bot.time.saturating_sub(gamma - 1).max(t_min);
        for t in lo..=bot.time {
            groups.entry((t, bot.vertex)).or_default();
        }
    }
    for e in candidates {
        let (u, v) = e.endpoints();
        if let Some(partners) = groups.get_mut(&(e.start(), u)) {
            partners.push(v);
        }
        if let Some(partners) = groups.get_mut(&(e.start(), v)) {
            partners.push(u);
        }
    }

    let mut pool = Vec::new();
    for ((t, u), mut partners) in groups {
        partners.sort_unstable();
        for w in partners.into_iter().take(keep) {
            let (a, b) = if u < w { (u, w) } else { (w, u) };
            pool.push(GammaEdge::new_unchecked(t, a, b, gamma));
        }
    }
    pool.sort_unstable();
    pool.dedup();

    let edges: Vec<TimedEdge> = pool.iter().flat_map(|g| g.timed_edges()).collect();
    let kernel_stream = stream.with_parts(stream.interval(), edges);
    Ok(Kernel {
        stream: kernel_stream,
        k,
        pool,
        greedy,
    })
}

/// γ-edges of the kernel over γ-edges of the input; `0/0` reads as 1.
pub fn kernel_gamma_edge_ratio(input: &LinkStream, kernel: &LinkStream, gamma: u64) -> Result<Ratio> {
    Ok(Ratio {
        numerator: kernel.enumerate_gamma_edges(gamma)?.len(),
        denominator: input.enumerate_gamma_edges(gamma)?.len(),
    })
}
