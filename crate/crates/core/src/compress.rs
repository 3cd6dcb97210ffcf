//! δ-compression: rescale the time axis by δ and merge each length-δ bucket
//! of activity per vertex pair into a single timed edge.

use crate::error::{Error, Result};
use crate::stream::{LinkStream, TimeInterval, TimedEdge};

/// Compression factor δ, valid for a given stream when `1 < δ < |T|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompressionSpec {
    pub delta: u64,
}

impl CompressionSpec {
    pub fn new(delta: u64) -> Self {
        CompressionSpec { delta }
    }

    pub fn check(&self, stream: &LinkStream) -> Result<()> {
        let span = stream.instant_count();
        if self.delta <= 1 || self.delta >= span {
            return Err(Error::InvalidDelta {
                delta: self.delta,
                span,
            });
        }
        Ok(())
    }
}

/// Returns `L_δ`. Instant `t'` falls into bucket `⌊t'/δ⌋`, so buckets are
/// aligned on absolute time 0 and `T_δ = [⌊min T/δ⌋, ⌊max T/δ⌋]`.
/// The vertex set is kept as is, isolated vertices included.
pub fn delta_compress(stream: &LinkStream, spec: CompressionSpec) -> Result<LinkStream> {
    spec.check(stream)?;
    let d = spec.delta;
    let interval = stream.interval();
    let edges = stream
        .edges()
        .iter()
        .map(|e| TimedEdge {
            time: e.time / d,
            ..*e
        })
        .collect();
    Ok(stream.with_parts(
        TimeInterval::new(interval.start / d, interval.end / d),
        edges,
    ))
}
