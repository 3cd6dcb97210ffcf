//! Temporal matching in link streams.
//!
//! A link stream `L = (T, V, E)` records which pairs of vertices interact at
//! which instants of a discrete interval `T`. A γ-edge is a pair that stays
//! connected for `γ` consecutive instants; a γ-matching is a set of γ-edges
//! no two of which share a vertex at a common instant. This crate provides:
//!
//! - [`stream`]: link streams, γ-edges, matchings and their validation;
//! - [`approx`]: the greedy 2-approximation;
//! - [`kernel`]: kernelization for the size-`k` decision problem;
//! - [`exact`]: a branch-and-bound solver for small instances;
//! - [`compress`]: δ-compression of the time axis;
//! - [`reduction`]: 3-SAT hardness instances;
//! - [`generator`]: a particle-contact stream generator;
//! - [`io`] and [`experiment`]: text formats and a measurement pipeline.
//!
//! ```
//! use temporal_matching::{greedy_matching, LinkStream};
//!
//! let stream = LinkStream::from_edges([(0, "a", "b"), (1, "a", "b"), (1, "b", "c")])?;
//! let m = greedy_matching(&stream, 2)?;
//! assert_eq!(m.len(), 1);
//! assert!(stream.validate_matching(&m).is_ok());
//! # Ok::<(), temporal_matching::Error>(())
//! ```

pub mod approx;
pub mod cli;
pub mod compress;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod generator;
pub mod io;
pub mod kernel;
pub mod reduction;
pub mod stream;

pub use approx::{bottom_vertices, greedy_matching, greedy_over};
pub use compress::{delta_compress, CompressionSpec};
pub use error::{Error, Result};
pub use exact::{decide, exact_decision, exact_maximum, DecisionResult, ExactResult};
pub use generator::{generate, GeneratorConfig};
pub use kernel::{kernelize, Kernel, KernelOutcome, Ratio};
pub use reduction::{assignment_to_matching, reduce, CnfFormula, Literal, ReductionInstance};
pub use stream::{
    GammaEdge, GammaMatching, LinkStream, StreamBuilder, TemporalVertex, Time, TimeInterval,
    TimedEdge, VertexId,
};
