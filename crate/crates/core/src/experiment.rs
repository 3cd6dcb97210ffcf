//! Measurement pipeline: optional δ-compression, γ-edge enumeration, greedy
//! matching and kernelization, summarized as one CSV row per `(δ, γ)` cell.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::greedy_over;
use crate::compress::{delta_compress, CompressionSpec};
use crate::error::Result;
use crate::kernel::{kernelize_with, prune, Kernel, KernelOutcome, Ratio};
use crate::stream::{GammaMatching, LinkStream};

/// How the kernelization stage picks `k` and whether it may short-circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelMode {
    /// Always build the pruned stream, with `k` given or `max(ℓ, 1)`.
    PruneOnly { k: Option<usize> },
    /// Run the full kernelization with `k` given or `ℓ`; `k = ℓ` answers
    /// directly without pruning.
    Decide { k: Option<usize> },
    /// Full kernelization with `k = ℓ + 1`, which always prunes when `ℓ ≥ 1`.
    NextSize,
}

impl Default for KernelMode {
    fn default() -> Self {
        KernelMode::PruneOnly { k: None }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub label: String,
    pub delta: Option<u64>,
    pub gamma: u64,
    pub mode: KernelMode,
}

/// One measured cell. Timings are wall-clock seconds rounded to the
/// millisecond.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub dataset: String,
    pub delta: Option<u64>,
    pub gamma: u64,
    pub vertices: usize,
    pub instants: u64,
    pub edges: usize,
    pub gamma_edges: usize,
    pub greedy: usize,
    pub k: usize,
    pub outcome: String,
    pub pool: Option<usize>,
    pub kernel_edges: Option<usize>,
    pub kernel_gamma_edges: Option<usize>,
    pub kernel_ratio: Option<f64>,
    pub approx_ratio: Option<f64>,
    pub approx_s: f64,
    pub kernel_s: f64,
    pub total_s: f64,
}

impl ExperimentRecord {
    /// Same record with timing columns zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> Self {
        ExperimentRecord {
            approx_s: 0.0,
            kernel_s: 0.0,
            total_s: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub record: ExperimentRecord,
    pub stream: LinkStream,
    pub matching: GammaMatching,
    pub kernel: Option<Kernel>,
}

fn millis(secs: f64) -> f64 {
    (secs * 1000.0).round() / 1000.0
}

/// Greedy size over the γ-edge count of the kernel. A value of 1 certifies
/// that the greedy matching is optimal.
pub fn approx_quality_ratio(record: &ExperimentRecord) -> Option<Ratio> {
    match record.kernel_gamma_edges {
        Some(d) if d > 0 => Some(Ratio {
            numerator: record.greedy,
            denominator: d,
        }),
        _ => None,
    }
}

pub fn certifies_optimality(record: &ExperimentRecord) -> bool {
    approx_quality_ratio(record).is_some_and(|r| r.numerator == r.denominator)
}

pub fn run_pipeline(input: &LinkStream, config: &PipelineConfig) -> Result<PipelineOutput> {
    let stream = match config.delta {
        Some(d) => delta_compress(input, CompressionSpec::new(d)).map_err(|e| e.in_stage("compress"))?,
        None => input.clone(),
    };
    let gamma = config.gamma;

    let t0 = Instant::now();
    let candidates = stream
        .enumerate_gamma_edges(gamma)
        .map_err(|e| e.in_stage("gamma-edges"))?;
    let matching = greedy_over(&stream, gamma, &candidates);
    let approx_s = t0.elapsed().as_secs_f64();
    let l = matching.len();

    let t1 = Instant::now();
    let (k, outcome, kernel) = match config.mode {
        KernelMode::PruneOnly { k } => {
            let k = k.unwrap_or(l.max(1));
            let kernel = prune(&stream, k, matching.clone(), &candidates)
                .map_err(|e| e.in_stage("kernelize"))?;
            (k, "pruned".to_string(), Some(kernel))
        }
        mode => {
            let k = match mode {
                KernelMode::Decide { k: Some(k) } => k,
                KernelMode::Decide { k: None } => l.max(1),
                _ => l + 1,
            };
            let outcome = kernelize_with(&stream, gamma, k, &candidates)
                .map_err(|e| e.in_stage("kernelize"))?;
            let label = outcome.label().to_string();
            let kernel = match outcome {
                KernelOutcome::Kernel(kernel) => Some(kernel),
                _ => None,
            };
            (k, label, kernel)
        }
    };
    let kernel_s = t1.elapsed().as_secs_f64();

    let kernel_gamma_edges = match &kernel {
        Some(kn) => Some(
            kn.stream
                .enumerate_gamma_edges(gamma)
                .map_err(|e| e.in_stage("kernel-stats"))?
                .len(),
        ),
        None => None,
    };
    let mut record = ExperimentRecord {
        dataset: config.label.clone(),
        delta: config.delta,
        gamma,
        vertices: stream.vertex_count(),
        instants: stream.instant_count(),
        edges: stream.edge_count(),
        gamma_edges: candidates.len(),
        greedy: l,
        k,
        outcome,
        pool: kernel.as_ref().map(|kn| kn.pool.len()),
        kernel_edges: kernel.as_ref().map(|kn| kn.stream.edge_count()),
        kernel_gamma_edges,
        kernel_ratio: kernel_gamma_edges.map(|n| {
            Ratio {
                numerator: n,
                denominator: candidates.len(),
            }
            .value()
        }),
        approx_ratio: None,
        approx_s: millis(approx_s),
        kernel_s: millis(kernel_s),
        total_s: millis(approx_s + kernel_s),
    };
    record.approx_ratio = approx_quality_ratio(&record).map(|r| r.value());
    Ok(PipelineOutput {
        record,
        stream,
        matching,
        kernel,
    })
}

/// Cells of a sweep: either the full grid or `deltas[i]` with `gammas[i]`.
pub fn sweep_cells(deltas: &[Option<u64>], gammas: &[u64], paired: bool) -> Vec<(Option<u64>, u64)> {
    if paired {
        deltas.iter().copied().zip(gammas.iter().copied()).collect()
    } else {
        deltas
            .iter()
            .flat_map(|&d| gammas.iter().map(move |&g| (d, g)))
            .collect()
    }
}

/// Runs every cell in parallel; rows come back in cell order.
pub fn sweep(
    input: &LinkStream,
    label: &str,
    cells: &[(Option<u64>, u64)],
    mode: KernelMode,
) -> Result<Vec<ExperimentRecord>> {
    cells
        .par_iter()
        .map(|&(delta, gamma)| {
            let config = PipelineConfig {
                label: label.to_string(),
                delta,
                gamma,
                mode,
            };
            run_pipeline(input, &config).map(|o| o.record)
        })
        .collect()
}

pub fn write_records_csv(records: &[ExperimentRecord], w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}
