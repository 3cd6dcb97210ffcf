//! Instance builders and brute-force oracles shared by the integration
//! tests. Oracles work on vertex names and plain sets so they share no code
//! with the library beyond stream construction.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use temporal_matching::generator::{generate, GeneratorConfig};
use temporal_matching::{LinkStream, StreamBuilder};

pub type NamedEdge = (u64, String, String);

/// A stream in set-builder form.
#[derive(Debug, Clone)]
pub struct Raw {
    pub start: u64,
    pub end: u64,
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<NamedEdge>,
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a < b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl Raw {
    pub fn from_stream(s: &LinkStream) -> Raw {
        Raw {
            start: s.interval().start,
            end: s.interval().end,
            vertices: s.vertex_names().iter().cloned().collect(),
            edges: s
                .edges()
                .iter()
                .map(|e| {
                    let (u, v) = ordered(s.vertex_name(e.u), s.vertex_name(e.v));
                    (e.time, u, v)
                })
                .collect(),
        }
    }

    pub fn build(&self) -> LinkStream {
        let mut b = StreamBuilder::new().interval(self.start, self.end);
        for v in &self.vertices {
            b.add_vertex(v.clone());
        }
        for (t, u, v) in &self.edges {
            b.add_edge(*t, u.clone(), v.clone());
        }
        b.build().expect("raw stream is valid")
    }
}

pub fn vname(i: usize) -> String {
    format!("v{i}")
}

/// Each pair is present at each instant with probability `density`.
pub fn random_raw(rng: &mut impl Rng, vertices: usize, start: u64, len: u64, density: f64) -> Raw {
    let mut edges = BTreeSet::new();
    for t in start..start + len {
        for i in 0..vertices {
            for j in i + 1..vertices {
                if rng.random::<f64>() < density {
                    let (u, v) = ordered(&vname(i), &vname(j));
                    edges.insert((t, u, v));
                }
            }
        }
    }
    Raw {
        start,
        end: start + len - 1,
        vertices: (0..vertices).map(vname).collect(),
        edges,
    }
}

/// Pairs switch on and off as a two-state chain, which gives longer runs
/// than independent coin flips.
pub fn bursty_raw(rng: &mut impl Rng, vertices: usize, len: u64, on: f64, stay: f64) -> Raw {
    let mut edges = BTreeSet::new();
    for i in 0..vertices {
        for j in i + 1..vertices {
            let mut active = rng.random::<f64>() < on;
            for t in 0..len {
                if active {
                    let (u, v) = ordered(&vname(i), &vname(j));
                    edges.insert((t, u, v));
                }
                if rng.random::<f64>() > stay {
                    active = rng.random::<f64>() < on;
                }
            }
        }
    }
    Raw {
        start: 0,
        end: len - 1,
        vertices: (0..vertices).map(vname).collect(),
        edges,
    }
}

/// The instance where greedy takes `b–c` first and reaches only half of
/// the optimum `{a–b, c–d}` at γ = 2.
pub fn factor_two() -> LinkStream {
    LinkStream::from_edges([
        (0, "b", "c"),
        (1, "b", "c"),
        (1, "a", "b"),
        (2, "a", "b"),
        (1, "c", "d"),
        (2, "c", "d"),
    ])
    .unwrap()
}

pub fn hand_built() -> Vec<LinkStream> {
    let mut out = vec![factor_two()];
    // Path a-b-c-d, always on.
    let mut b = StreamBuilder::new();
    for t in 0..6 {
        b.add_edge(t, "a", "b");
        b.add_edge(t, "b", "c");
        b.add_edge(t, "c", "d");
    }
    out.push(b.build().unwrap());
    // Star centred on h.
    let mut b = StreamBuilder::new();
    for t in 0..8 {
        for leaf in ["p", "q", "r", "s"] {
            b.add_edge(t, "h", leaf);
        }
    }
    out.push(b.build().unwrap());
    // Staggered chain.
    out.push(
        LinkStream::from_edges([
            (0, "a", "b"),
            (1, "a", "b"),
            (1, "b", "c"),
            (2, "b", "c"),
            (2, "c", "d"),
            (3, "c", "d"),
            (3, "d", "e"),
            (4, "d", "e"),
        ])
        .unwrap(),
    );
    // Triangle, offset interval, isolated vertex.
    let mut b = StreamBuilder::new().interval(5, 14).vertex("z");
    for t in 5..15 {
        b.add_edge(t, "a", "b");
        b.add_edge(t, "b", "c");
        b.add_edge(t, "a", "c");
    }
    out.push(b.build().unwrap());
    // No edges at all.
    out.push(StreamBuilder::new().interval(0, 3).vertices(["a", "b"]).build().unwrap());
    out
}

/// Small random streams: `|V| ≤ 8`, `|T| ≤ 12`, from three families.
pub fn small_suite(count: usize, seed: u64) -> Vec<LinkStream> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let vertices = rng.random_range(2..=8);
        let len = rng.random_range(2..=12);
        let s = match i % 3 {
            0 => {
                let density = rng.random_range(0.15..0.6);
                random_raw(&mut rng, vertices, 0, len, density).build()
            }
            1 => {
                let (on, stay) = (rng.random_range(0.2..0.5), rng.random_range(0.6..0.95));
                bursty_raw(&mut rng, vertices, len, on, stay).build()
            }
            _ => {
                let mut cfg = GeneratorConfig::small(vertices, len, rng.random());
                cfg.radius = rng.random_range(8.0..20.0);
                generate(&cfg).unwrap()
            }
        };
        out.push(s);
    }
    out
}

pub fn temporal_vertices(e: &NamedEdge, gamma: u64) -> Vec<(u64, String)> {
    (e.0..e.0 + gamma)
        .flat_map(|t| [(t, e.1.clone()), (t, e.2.clone())])
        .collect()
}

/// Every `(t, u, v)` with the pair present on all of `[t, t+γ-1]`.
pub fn brute_gamma_edges(raw: &Raw, gamma: u64) -> BTreeSet<NamedEdge> {
    let mut out = BTreeSet::new();
    if gamma == 0 || raw.end + 1 < raw.start + gamma {
        return out;
    }
    let pairs: BTreeSet<(String, String)> = raw.edges.iter().map(|(_, u, v)| (u.clone(), v.clone())).collect();
    for t in raw.start..=raw.end + 1 - gamma {
        for (u, v) in &pairs {
            if (t..t + gamma).all(|s| raw.edges.contains(&(s, u.clone(), v.clone()))) {
                out.insert((t, u.clone(), v.clone()));
            }
        }
    }
    out
}

pub fn independent(a: &NamedEdge, b: &NamedEdge, gamma: u64) -> bool {
    let ta: BTreeSet<_> = temporal_vertices(a, gamma).into_iter().collect();
    temporal_vertices(b, gamma).iter().all(|x| !ta.contains(x))
}

/// Maximum number of pairwise independent candidates, by plain
/// include/exclude recursion.
pub fn brute_max_matching(candidates: &[NamedEdge], gamma: u64) -> usize {
    fn go(c: &[NamedEdge], chosen: &mut Vec<NamedEdge>, gamma: u64) -> usize {
        let Some((first, rest)) = c.split_first() else {
            return chosen.len();
        };
        let mut best = go(rest, chosen, gamma);
        if chosen.len() + c.len() <= best {
            return best;
        }
        if chosen.iter().all(|x| independent(x, first, gamma)) {
            chosen.push(first.clone());
            best = best.max(go(rest, chosen, gamma));
            chosen.pop();
        }
        best
    }
    go(candidates, &mut Vec::new(), gamma)
}

/// `{(⌊t/δ⌋, {u,v})}` over `[⌊start/δ⌋, ⌊end/δ⌋]`.
pub fn compress_oracle(raw: &Raw, delta: u64) -> Raw {
    Raw {
        start: raw.start / delta,
        end: raw.end / delta,
        vertices: raw.vertices.clone(),
        edges: raw.edges.iter().map(|(t, u, v)| (t / delta, u.clone(), v.clone())).collect(),
    }
}

/// Clauses as signed 1-based DIMACS literals.
pub fn truth_table_sat(variables: u32, clauses: &[Vec<i64>]) -> bool {
    (0u32..1 << variables).any(|bits| {
        clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let value = bits >> (l.unsigned_abs() - 1) & 1 == 1;
                value == (l > 0)
            })
        })
    })
}
