//! Exact maximum γ-matching by branch and bound.
//!
//! γ-edges are the vertices of a conflict graph (two γ-edges conflict when
//! they share a temporal vertex) and a γ-matching is an independent set of it.
//! Let `e` be the first open candidate in canonical order. Some maximum
//! matching of the open candidates contains a member of `N[e]` (otherwise
//! `e` could be added), so the search branches on taking each open member of
//! `N[e]` in turn, excluding the ones already tried. A node is pruned when the
//! current size plus an upper bound on the open candidates cannot beat the
//! incumbent, which starts as the greedy matching. Two bounds are used: half
//! the sum over vertices of the largest set of disjoint open intervals at
//! that vertex, and a greedy clique cover of the conflict graph.
//! Exploration order is deterministic, so node counts are reproducible.

use crate::approx::greedy_over;
use crate::error::{check_gamma, Error, Result};
use crate::stream::{GammaEdge, GammaMatching, LinkStream};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub optimum: usize,
    pub witness: GammaMatching,
    pub explored_nodes: u64,
}

#[derive(Debug, Clone)]
pub struct DecisionResult {
    pub answer: bool,
    /// A γ-matching of size at least `k` when the answer is yes.
    pub witness: Option<GammaMatching>,
    pub explored_nodes: u64,
}

/// Size of a maximum γ-matching, with a witness.
pub fn exact_maximum(stream: &LinkStream, gamma: u64, node_budget: Option<u64>) -> Result<ExactResult> {
    check_gamma(gamma, 1)?;
    let candidates = stream.enumerate_gamma_edges(gamma)?;
    let greedy = greedy_over(stream, gamma, &candidates);
    let mut search = Search::new(&candidates, node_budget.unwrap_or(DEFAULT_NODE_BUDGET), None);
    search.seed(&greedy);
    search.run()?;
    let witness = search.witness(gamma);
    Ok(ExactResult {
        optimum: witness.len(),
        witness,
        explored_nodes: search.nodes,
    })
}

/// Whether a γ-matching of size at least `k` exists.
pub fn exact_decision(stream: &LinkStream, gamma: u64, k: usize, node_budget: Option<u64>) -> Result<bool> {
    Ok(decide(stream, gamma, k, node_budget)?.answer)
}

/// [`exact_decision`] with a witness and the node count.
pub fn decide(stream: &LinkStream, gamma: u64, k: usize, node_budget: Option<u64>) -> Result<DecisionResult> {
    check_gamma(gamma, 1)?;
    if k == 0 {
        return Ok(DecisionResult {
            answer: true,
            witness: Some(GammaMatching::empty(gamma)),
            explored_nodes: 0,
        });
    }
    // Each member consumes 2γ of the n·τ temporal vertices.
    let capacity = (stream.vertex_count() as u128 * stream.instant_count() as u128) / (2 * gamma as u128);
    if k as u128 > capacity {
        return Ok(DecisionResult {
            answer: false,
            witness: None,
            explored_nodes: 0,
        });
    }
    let candidates = stream.enumerate_gamma_edges(gamma)?;
    let greedy = greedy_over(stream, gamma, &candidates);
    if greedy.len() >= k {
        return Ok(DecisionResult {
            answer: true,
            witness: Some(greedy),
            explored_nodes: 0,
        });
    }
    let mut search = Search::new(&candidates, node_budget.unwrap_or(DEFAULT_NODE_BUDGET), Some(k));
    search.seed(&greedy);
    search.run()?;
    let answer = search.best.len() >= k;
    Ok(DecisionResult {
        answer,
        witness: answer.then(|| search.witness(gamma)),
        explored_nodes: search.nodes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn empty(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn without(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    fn is_subset_of(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

struct Search<'a> {
    candidates: &'a [GammaEdge],
    /// `conflicts[i]` holds every j ≠ i sharing a temporal vertex with i.
    conflicts: Vec<Bitset>,
    /// Candidates incident to each vertex, in canonical order.
    incident: Vec<Vec<usize>>,
    budget: u64,
    target: Option<usize>,
    nodes: u64,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(candidates: &'a [GammaEdge], budget: u64, target: Option<usize>) -> Self {
        let n = candidates.len();
        let mut conflicts = vec![Bitset::empty(n); n];
        let mut incident: Vec<Vec<usize>> = Vec::new();
        for (i, e) in candidates.iter().enumerate() {
            let (u, v) = e.endpoints();
            for x in [u, v] {
                if incident.len() <= x.index() {
                    incident.resize(x.index() + 1, Vec::new());
                }
                incident[x.index()].push(i);
            }
        }
        // Candidates are sorted by start, so per-vertex lists are too.
        for list in &incident {
            for (a, &i) in list.iter().enumerate() {
                let end = candidates[i].end();
                for &j in &list[a + 1..] {
                    if candidates[j].start() > end {
                        break;
                    }
                    conflicts[i].insert(j);
                    conflicts[j].insert(i);
                }
            }
        }
        Search {
            candidates,
            conflicts,
            incident,
            budget,
            target,
            nodes: 0,
            current: Vec::new(),
            best: Vec::new(),
        }
    }

    fn seed(&mut self, incumbent: &GammaMatching) {
        self.best = incumbent
            .iter()
            .filter_map(|e| self.candidates.binary_search(e).ok())
            .collect();
    }

    /// Sizes at or below this are not worth reaching.
    fn threshold(&self) -> usize {
        match self.target {
            Some(k) => k - 1,
            None => self.best.len(),
        }
    }

    fn done(&self) -> bool {
        matches!(self.target, Some(k) if self.best.len() >= k)
    }

    fn run(&mut self) -> Result<()> {
        let all = Bitset::full(self.candidates.len());
        self.expand(all)
    }

    fn expand(&mut self, mut open: Bitset) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
            if self.done() {
                return Ok(());
            }
        }
        let Some(first) = open.first() else {
            return Ok(());
        };
        if !self.may_improve(&open) {
            return Ok(());
        }
        let mut branch = open.intersect(&self.conflicts[first]);
        branch.insert(first);
        for w in branch.iter() {
            let mut taken = open.without(&self.conflicts[w]);
            taken.remove(w);
            self.current.push(w);
            self.expand(taken)?;
            self.current.pop();
            if self.done() {
                return Ok(());
            }
            open.remove(w);
            if !self.may_improve(&open) {
                break;
            }
        }
        Ok(())
    }

    fn may_improve(&self, open: &Bitset) -> bool {
        let threshold = self.threshold();
        self.current.len() + self.packing_bound(open) > threshold
            && self.current.len() + self.clique_cover(open) > threshold
    }

    /// Every matching edge uses two vertices, and at each vertex its edges
    /// are disjoint intervals; interval scheduling gives the most per vertex.
    fn packing_bound(&self, open: &Bitset) -> usize {
        let mut total = 0;
        for list in &self.incident {
            let mut free_from = 0;
            for &i in list {
                let e = &self.candidates[i];
                if e.start() >= free_from && open.contains(i) {
                    total += 1;
                    free_from = e.end() + 1;
                }
            }
        }
        total / 2
    }

    /// Greedy partition of `open` into pairwise-conflicting groups. At most
    /// one member per group fits in a matching.
    fn clique_cover(&self, open: &Bitset) -> usize {
        let mut groups: Vec<Bitset> = Vec::new();
        for i in open.iter() {
            match groups.iter_mut().find(|g| g.is_subset_of(&self.conflicts[i])) {
                Some(g) => g.insert(i),
                None => {
                    let mut g = Bitset::empty(self.candidates.len());
                    g.insert(i);
                    groups.push(g);
                }
            }
        }
        groups.len()
    }

    fn witness(&self, gamma: u64) -> GammaMatching {
        let mut members: Vec<GammaEdge> = self.best.iter().map(|&i| self.candidates[i]).collect();
        members.sort_unstable();
        GammaMatching::from_sorted(gamma, members)
    }
}
