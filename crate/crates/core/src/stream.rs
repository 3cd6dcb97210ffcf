//! Link streams, γ-edges and γ-matchings.
//!
//! A [`LinkStream`] is a time interval `T`, a vertex set `V` and a set of
//! timed edges `(t, {u, v})`. Vertex identifiers are arbitrary strings; they
//! are mapped to dense [`VertexId`]s in lexicographic order when the stream is
//! built, so every derived ordering is independent of input order.
//!
//! All γ-edges and matchings are expressed in the dense ids of the stream they
//! were built against. Use [`LinkStream::vertex_name`] or
//! [`GammaEdge::display`] to get the original identifiers back.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{check_gamma, Error, Result};

/// Discrete time instant.
pub type Time = u64;

/// Dense vertex index inside one [`LinkStream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Inclusive interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeInterval {
    pub start: Time,
    pub end: Time,
}

impl TimeInterval {
    pub fn new(start: Time, end: Time) -> Self {
        TimeInterval { start, end }
    }

    /// Number of instants, `|T|`.
    pub fn len(&self) -> u64 {
        if self.end < self.start {
            0
        } else {
            self.end - self.start + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn contains(&self, t: Time) -> bool {
        self.start <= t && t <= self.end
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// A timed edge `(t, {u, v})`, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedEdge {
    pub time: Time,
    pub u: VertexId,
    pub v: VertexId,
}

impl TimedEdge {
    /// Normalizes the endpoint order. `a` and `b` must differ.
    pub fn new(time: Time, a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b);
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        TimedEdge { time, u, v }
    }
}

/// A vertex considered at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemporalVertex {
    pub time: Time,
    pub vertex: VertexId,
}

impl TemporalVertex {
    pub fn new(time: Time, vertex: VertexId) -> Self {
        TemporalVertex { time, vertex }
    }
}

/// `Γ_γ(t, u, v)`: the γ timed edges `(t', {u, v})` for `t' ∈ [t, t+γ-1]`.
///
/// The derived `Ord` is the canonical order used by every algorithm in the
/// crate: start time, then smaller endpoint, then larger endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaEdge {
    start: Time,
    u: VertexId,
    v: VertexId,
    gamma: u64,
}

impl GammaEdge {
    pub fn new(start: Time, a: VertexId, b: VertexId, gamma: u64) -> Result<Self> {
        check_gamma(gamma, 1)?;
        if a == b {
            return Err(Error::SelfPair);
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Ok(GammaEdge { start, u, v, gamma })
    }

    pub(crate) fn new_unchecked(start: Time, u: VertexId, v: VertexId, gamma: u64) -> Self {
        debug_assert!(u < v && gamma >= 1);
        GammaEdge { start, u, v, gamma }
    }

    pub fn start(&self) -> Time {
        self.start
    }

    /// Last instant covered, `t + γ - 1`.
    pub fn end(&self) -> Time {
        self.start + self.gamma - 1
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// Endpoints, smaller id first.
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn is_incident(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint other than `x`, if `x` is an endpoint.
    pub fn partner(&self, x: VertexId) -> Option<VertexId> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn covers_time(&self, t: Time) -> bool {
        self.start <= t && t <= self.end()
    }

    pub fn contains(&self, tv: TemporalVertex) -> bool {
        self.is_incident(tv.vertex) && self.covers_time(tv.time)
    }

    /// The `2γ` temporal vertices contained in this γ-edge.
    pub fn temporal_vertices(&self) -> impl Iterator<Item = TemporalVertex> + '_ {
        (self.start..=self.end()).flat_map(move |t| {
            [TemporalVertex::new(t, self.u), TemporalVertex::new(t, self.v)]
        })
    }

    /// The γ timed edges making up this γ-edge.
    pub fn timed_edges(&self) -> impl Iterator<Item = TimedEdge> + '_ {
        (self.start..=self.end()).map(move |t| TimedEdge {
            time: t,
            u: self.u,
            v: self.v,
        })
    }

    /// True when no temporal vertex is contained in both γ-edges.
    pub fn independent(&self, other: &GammaEdge) -> Result<bool> {
        if self.gamma != other.gamma {
            return Err(Error::GammaMismatch {
                left: self.gamma,
                right: other.gamma,
            });
        }
        Ok(self.independent_unchecked(other))
    }

    #[inline]
    pub(crate) fn independent_unchecked(&self, other: &GammaEdge) -> bool {
        let share_vertex = self.u == other.u
            || self.u == other.v
            || self.v == other.u
            || self.v == other.v;
        !share_vertex || self.end() < other.start || other.end() < self.start
    }

    /// Renders as `Γ_γ(t,u,v)` using the stream's identifiers.
    pub fn display<'a>(&'a self, stream: &'a LinkStream) -> impl fmt::Display + 'a {
        DisplayGammaEdge { edge: self, stream }
    }
}

struct DisplayGammaEdge<'a> {
    edge: &'a GammaEdge,
    stream: &'a LinkStream,
}

impl fmt::Display for DisplayGammaEdge<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Γ_{}({},{},{})",
            self.edge.gamma,
            self.edge.start,
            self.stream.vertex_name(self.edge.u),
            self.stream.vertex_name(self.edge.v)
        )
    }
}

/// A set of γ-edges sharing one γ, kept in canonical order.
///
/// Construction only enforces the common γ. Independence and membership in a
/// stream are checked by [`LinkStream::validate_matching`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaMatching {
    gamma: u64,
    members: Vec<GammaEdge>,
}

impl GammaMatching {
    pub fn empty(gamma: u64) -> Self {
        GammaMatching {
            gamma,
            members: Vec::new(),
        }
    }

    pub fn from_edges(gamma: u64, edges: impl IntoIterator<Item = GammaEdge>) -> Result<Self> {
        check_gamma(gamma, 1)?;
        let mut members: Vec<GammaEdge> = edges.into_iter().collect();
        if let Some(bad) = members.iter().find(|e| e.gamma != gamma) {
            return Err(Error::GammaMismatch {
                left: gamma,
                right: bad.gamma,
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(GammaMatching { gamma, members })
    }

    /// Caller guarantees canonical order and matching γ.
    pub(crate) fn from_sorted(gamma: u64, members: Vec<GammaEdge>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        GammaMatching { gamma, members }
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[GammaEdge] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GammaEdge> {
        self.members.iter()
    }

    pub fn contains(&self, edge: &GammaEdge) -> bool {
        self.members.binary_search(edge).is_ok()
    }
}

impl<'a> IntoIterator for &'a GammaMatching {
    type Item = &'a GammaEdge;
    type IntoIter = std::slice::Iter<'a, GammaEdge>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// A list of violations; empty means ok.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<V = StreamViolation> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<V: fmt::Display> fmt::Display for ValidationReport<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamViolation {
    /// No interval given and no edge to infer it from.
    MissingInterval,
    EmptyInterval { start: Time, end: Time },
    TimeOutOfInterval { time: Time, u: String, v: String },
    SelfLoop { time: Time, vertex: String },
    UnknownVertex { time: Time, u: String, v: String, vertex: String },
}

impl fmt::Display for StreamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamViolation::MissingInterval => {
                f.write_str("no time interval and no edge to infer it from")
            }
            StreamViolation::EmptyInterval { start, end } => {
                write!(f, "empty time interval [{start}, {end}]")
            }
            StreamViolation::TimeOutOfInterval { time, u, v } => {
                write!(f, "time out of interval: ({time},{{{u},{v}}})")
            }
            StreamViolation::SelfLoop { time, vertex } => {
                write!(f, "self-loop: ({time},{{{vertex},{vertex}}})")
            }
            StreamViolation::UnknownVertex { time, u, v, vertex } => {
                write!(f, "unknown vertex {vertex} in ({time},{{{u},{v}}})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingViolation {
    NotInStream { edge: String },
    SharedTemporalVertex { first: String, second: String, time: Time, vertex: String },
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingViolation::NotInStream { edge } => write!(f, "γ-edge not in L: {edge}"),
            MatchingViolation::SharedTemporalVertex {
                first,
                second,
                time,
                vertex,
            } => write!(
                f,
                "{first} and {second} share temporal vertex ({time},{vertex})"
            ),
        }
    }
}

/// Raw, unchecked link stream contents.
#[derive(Debug, Clone, Default)]
pub struct StreamBuilder {
    interval: Option<TimeInterval>,
    vertices: Vec<String>,
    edges: Vec<(Time, String, String)>,
    declared_vertices_only: bool,
}

impl StreamBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `T = [start, end]`. Without it `T` is inferred from the edges.
    pub fn interval(mut self, start: Time, end: Time) -> Self {
        self.interval = Some(TimeInterval::new(start, end));
        self
    }

    pub fn set_interval(&mut self, start: Time, end: Time) {
        self.interval = Some(TimeInterval::new(start, end));
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.add_vertex(id);
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) {
        self.vertices.push(id.into());
    }

    pub fn edge(mut self, t: Time, u: impl Into<String>, v: impl Into<String>) -> Self {
        self.add_edge(t, u, v);
        self
    }

    pub fn add_edge(&mut self, t: Time, u: impl Into<String>, v: impl Into<String>) {
        self.edges.push((t, u.into(), v.into()));
    }

    /// Reject endpoints that were not declared with [`StreamBuilder::vertex`]
    /// instead of adding them to `V`.
    pub fn declared_vertices_only(mut self) -> Self {
        self.declared_vertices_only = true;
        self
    }

    fn resolved_interval(&self) -> Option<TimeInterval> {
        self.interval.or_else(|| {
            let lo = self.edges.iter().map(|e| e.0).min()?;
            let hi = self.edges.iter().map(|e| e.0).max()?;
            Some(TimeInterval::new(lo, hi))
        })
    }

    /// Checks every invariant of a link stream. Each violation names the
    /// offending edge. Duplicate edges are not violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let interval = match self.resolved_interval() {
            Some(i) if i.is_empty() => {
                violations.push(StreamViolation::EmptyInterval {
                    start: i.start,
                    end: i.end,
                });
                i
            }
            Some(i) => i,
            None => {
                violations.push(StreamViolation::MissingInterval);
                return ValidationReport { violations };
            }
        };
        let declared: BTreeSet<&str> = self.vertices.iter().map(String::as_str).collect();
        for (t, u, v) in &self.edges {
            if !interval.contains(*t) {
                violations.push(StreamViolation::TimeOutOfInterval {
                    time: *t,
                    u: u.clone(),
                    v: v.clone(),
                });
            }
            if u == v {
                violations.push(StreamViolation::SelfLoop {
                    time: *t,
                    vertex: u.clone(),
                });
            }
            if self.declared_vertices_only {
                for x in [u, v] {
                    if !declared.contains(x.as_str()) {
                        violations.push(StreamViolation::UnknownVertex {
                            time: *t,
                            u: u.clone(),
                            v: v.clone(),
                            vertex: x.clone(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn build(self) -> Result<LinkStream> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(Error::InvalidStream(report));
        }
        let interval = self.resolved_interval().expect("validated");
        let mut names: BTreeSet<String> = self.vertices.into_iter().collect();
        for (_, u, v) in &self.edges {
            names.insert(u.clone());
            names.insert(v.clone());
        }
        let table = Arc::new(VertexTable::new(names.into_iter().collect()));
        let mut edges: Vec<TimedEdge> = self
            .edges
            .iter()
            .map(|(t, u, v)| TimedEdge::new(*t, table.index[u], table.index[v]))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Ok(LinkStream {
            interval,
            table,
            edges,
        })
    }
}

#[derive(Debug, PartialEq, Eq)]
struct VertexTable {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl VertexTable {
    fn new(names: Vec<String>) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i as u32)))
            .collect();
        VertexTable { names, index }
    }
}

/// An immutable link stream `(T, V, E)`.
#[derive(Debug, Clone)]
pub struct LinkStream {
    interval: TimeInterval,
    table: Arc<VertexTable>,
    /// Sorted by `(t, u, v)`, no duplicates.
    edges: Vec<TimedEdge>,
}

impl PartialEq for LinkStream {
    fn eq(&self, other: &Self) -> bool {
        self.interval == other.interval
            && self.table.names == other.table.names
            && self.edges == other.edges
    }
}

impl Eq for LinkStream {}

impl LinkStream {
    pub fn builder() -> StreamBuilder {
        StreamBuilder::new()
    }

    /// Builds a stream whose `T` and `V` are inferred from `edges`.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Time, S, S)>,
        S: Into<String>,
    {
        let mut b = StreamBuilder::new();
        for (t, u, v) in edges {
            b.add_edge(t, u, v);
        }
        b.build()
    }

    /// Same `V`, new `T` and edge set. Edges must be valid for the result.
    pub(crate) fn with_parts(&self, interval: TimeInterval, mut edges: Vec<TimedEdge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| interval.contains(e.time)));
        LinkStream {
            interval,
            table: Arc::clone(&self.table),
            edges,
        }
    }

    /// Builds a stream from integer-indexed vertices. `names[i]` is the
    /// identifier of index `i`; ids are re-assigned in lexicographic order.
    pub(crate) fn from_indexed(
        interval: TimeInterval,
        names: Vec<String>,
        edges: impl IntoIterator<Item = (Time, usize, usize)>,
    ) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_unstable_by(|&a, &b| names[a].cmp(&names[b]));
        let mut remap = vec![VertexId(0); names.len()];
        for (rank, &i) in order.iter().enumerate() {
            remap[i] = VertexId(rank as u32);
        }
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        let mut edges: Vec<TimedEdge> = edges
            .into_iter()
            .map(|(t, a, b)| TimedEdge::new(t, remap[a], remap[b]))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| interval.contains(e.time) && e.u != e.v));
        LinkStream {
            interval,
            table: Arc::new(VertexTable::new(sorted)),
            edges,
        }
    }

    pub fn interval(&self) -> TimeInterval {
        self.interval
    }

    /// `τ = |T|`.
    pub fn instant_count(&self) -> u64 {
        self.interval.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.table.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Timed edges sorted by `(t, u, v)`.
    pub fn edges(&self) -> &[TimedEdge] {
        &self.edges
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.table.names.len() as u32).map(VertexId)
    }

    /// Vertex identifiers in canonical (lexicographic) order.
    pub fn vertex_names(&self) -> &[String] {
        &self.table.names
    }

    pub fn vertex_name(&self, id: VertexId) -> &str {
        &self.table.names[id.index()]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.table.index.get(name).copied()
    }

    fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_id(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Builds `Γ_γ(t, a, b)` from identifiers. The γ-edge need not exist in
    /// the stream.
    pub fn gamma_edge(&self, start: Time, a: &str, b: &str, gamma: u64) -> Result<GammaEdge> {
        GammaEdge::new(start, self.require_vertex(a)?, self.require_vertex(b)?, gamma)
    }

    pub fn temporal_vertex(&self, time: Time, name: &str) -> Result<TemporalVertex> {
        Ok(TemporalVertex::new(time, self.require_vertex(name)?))
    }

    pub fn contains_edge(&self, edge: &TimedEdge) -> bool {
        self.edges.binary_search(edge).is_ok()
    }

    /// "Exists in L": all γ constituent timed edges are present.
    pub fn contains_gamma_edge(&self, edge: &GammaEdge) -> bool {
        self.interval.contains(edge.start)
            && edge.end() <= self.interval.end
            && edge.timed_edges().all(|e| self.contains_edge(&e))
    }

    /// Re-checks the stream invariants. Always ok for streams produced by
    /// this crate.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for e in &self.edges {
            if !self.interval.contains(e.time) {
                violations.push(StreamViolation::TimeOutOfInterval {
                    time: e.time,
                    u: self.vertex_name(e.u).to_string(),
                    v: self.vertex_name(e.v).to_string(),
                });
            }
            if e.u == e.v {
                violations.push(StreamViolation::SelfLoop {
                    time: e.time,
                    vertex: self.vertex_name(e.u).to_string(),
                });
            }
        }
        ValidationReport { violations }
    }

    /// Every γ-edge existing in the stream, in canonical order.
    ///
    /// Edges are grouped per vertex pair and scanned for runs of consecutive
    /// instants; a run of length `r ≥ γ` yields `r - γ + 1` γ-edges.
    pub fn enumerate_gamma_edges(&self, gamma: u64) -> Result<Vec<GammaEdge>> {
        check_gamma(gamma, 1)?;
        let mut by_pair: Vec<TimedEdge> = self.edges.clone();
        by_pair.sort_unstable_by_key(|e| (e.u, e.v, e.time));
        let mut out = Vec::new();
        let mut i = 0;
        while i < by_pair.len() {
            let first = by_pair[i];
            let mut j = i + 1;
            while j < by_pair.len()
                && by_pair[j].u == first.u
                && by_pair[j].v == first.v
                && by_pair[j].time == by_pair[j - 1].time + 1
            {
                j += 1;
            }
            let run = (j - i) as u64;
            if run >= gamma {
                for s in first.time..=first.time + (run - gamma) {
                    out.push(GammaEdge::new_unchecked(s, first.u, first.v, gamma));
                }
            }
            i = j;
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Checks that every member exists in the stream and that members are
    /// pairwise independent.
    pub fn validate_matching(&self, matching: &GammaMatching) -> ValidationReport<MatchingViolation> {
        let mut violations = Vec::new();
        let mut owner: HashMap<TemporalVertex, &GammaEdge> = HashMap::new();
        for edge in matching {
            if !self.contains_gamma_edge(edge) {
                violations.push(MatchingViolation::NotInStream {
                    edge: edge.display(self).to_string(),
                });
            }
            for tv in edge.temporal_vertices() {
                if let Some(prev) = owner.insert(tv, edge) {
                    violations.push(MatchingViolation::SharedTemporalVertex {
                        first: prev.display(self).to_string(),
                        second: edge.display(self).to_string(),
                        time: tv.time,
                        vertex: self.vertex_name(tv.vertex).to_string(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }
}
