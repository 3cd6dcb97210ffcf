//! The `tmatch` command line. Every subcommand reads and writes the stream
//! text format of [`crate::io`], so stages compose through files or pipes.
//!
//! Exit status is 0 on success, 1 when a decision or validation answers no,
//! and 2 on any error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::greedy_matching;
use crate::compress::{delta_compress, CompressionSpec};
use crate::error::{Error, Result};
use crate::exact::{decide, exact_maximum};
use crate::experiment::{run_pipeline, sweep, sweep_cells, write_records_csv, KernelMode, PipelineConfig};
use crate::generator::{generate, GeneratorConfig, GeneratorMetadata};
use crate::io::{read_matching, read_stream, read_stream_with_header, write_matching, write_stream, write_stream_with_header, Header};
use crate::kernel::{kernel_edge_bound, pool_bound};
use crate::reduction::{reduce, CnfFormula};
use crate::stream::LinkStream;

pub const DATA_DIR_ENV: &str = "TMATCH_DATA_DIR";

#[derive(Debug, Parser)]
#[command(name = "tmatch", version, about = "Temporal matching in link streams")]
pub struct Cli {
    /// Directory searched for relative input paths that do not exist as given.
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    pub data_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Io {
    /// Input stream; `-` or omitted reads stdin.
    pub input: Option<PathBuf>,
    /// Output file; `-` or omitted writes stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SweepMode {
    /// Build the kernel unconditionally with k = max(ℓ, 1).
    PruneOnly,
    /// Full kernelization with k = ℓ (answers without pruning).
    Decide,
    /// Full kernelization with k = ℓ + 1.
    NextSize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StatsFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a particle-contact stream.
    Generate {
        /// JSON generator config; flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        groups: Option<usize>,
        #[arg(long)]
        particles: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        friction: Option<f64>,
        #[arg(long)]
        wind: Option<f64>,
        #[arg(long)]
        max_speed: Option<f64>,
        #[arg(long)]
        width: Option<f64>,
        #[arg(long)]
        height: Option<f64>,
        #[arg(long)]
        duration: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Metadata sidecar; defaults to `<output>.json`, or stderr when
        /// writing to stdout.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// δ-compress the time axis.
    Compress {
        #[arg(long)]
        delta: u64,
        #[command(flatten)]
        io: Io,
    },
    /// List every γ-edge as `start u v`.
    GammaEdges {
        #[arg(long)]
        gamma: u64,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Greedy 2-approximate γ-matching.
    Approx {
        #[arg(long)]
        gamma: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Kernelize for the size-k decision problem; writes the kernel stream
    /// and a stats record.
    Kernelize {
        #[arg(long)]
        gamma: u64,
        /// Defaults to the greedy size.
        #[arg(long, conflicts_with_all = ["prune_only", "k_plus_one"])]
        k: Option<usize>,
        /// Use k = ℓ + 1.
        #[arg(long, conflicts_with = "prune_only")]
        k_plus_one: bool,
        /// Prune unconditionally with k = max(ℓ, 1).
        #[arg(long)]
        prune_only: bool,
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        stats_format: StatsFormat,
        #[command(flatten)]
        io: Io,
    },
    /// Exact maximum γ-matching, or the size-k decision with `--k`.
    Exact {
        #[arg(long)]
        gamma: u64,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        /// Refuse inputs with more γ-edges than this unless `--force`.
        #[arg(long, default_value_t = 2000)]
        max_gamma_edges: usize,
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Build the hardness stream for a DIMACS CNF formula.
    ReduceSat {
        #[arg(long)]
        gamma: u64,
        /// DIMACS file; `-` reads stdin.
        formula: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the measurement pipeline over (δ, γ) cells and write CSV.
    Sweep {
        /// Comma-separated; 1 means no compression.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        deltas: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        gammas: Vec<u64>,
        /// Pair deltas[i] with gammas[i] instead of the full grid.
        #[arg(long)]
        paired: bool,
        #[arg(long, value_enum, default_value = "prune-only")]
        mode: SweepMode,
        /// Dataset label; defaults to the input file stem.
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Check a stream, and optionally a matching against it.
    Validate {
        #[arg(long)]
        matching: Option<PathBuf>,
        #[command(flatten)]
        io: Io,
    },
}

/// Outcome of a subcommand that did not fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    AnswerNo,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::AnswerNo => 1,
        }
    }
}

struct Ctx {
    data_dir: Option<PathBuf>,
}

impl Ctx {
    fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_relative() && !path.exists() {
            if let Some(dir) = &self.data_dir {
                let candidate = dir.join(path);
                if candidate.exists() {
                    return candidate;
                }
            }
        }
        path.to_path_buf()
    }

    fn reader(&self, path: Option<&Path>) -> Result<Box<dyn BufRead>> {
        match path {
            None => Ok(Box::new(BufReader::new(io::stdin()))),
            Some(p) if p == Path::new("-") => Ok(Box::new(BufReader::new(io::stdin()))),
            Some(p) => Ok(Box::new(BufReader::new(File::open(self.resolve(p))?))),
        }
    }

    fn stream(&self, path: Option<&Path>) -> Result<LinkStream> {
        read_stream(self.reader(path)?).map_err(|e| e.in_stage("read"))
    }
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p != Path::new("-") => Ok(Box::new(BufWriter::new(File::create(p)?))),
        _ => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn write_json(value: &impl Serialize, mut w: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct KernelStats {
    gamma: u64,
    greedy: usize,
    k: usize,
    outcome: String,
    edges: usize,
    gamma_edges: usize,
    kernel_edges: Option<usize>,
    kernel_gamma_edges: Option<usize>,
    pool: Option<usize>,
    edge_ratio: Option<f64>,
    gamma_edge_ratio: Option<f64>,
    edge_bound: String,
    pool_bound: String,
}

pub fn execute(cli: Cli) -> Result<Status> {
    let ctx = Ctx { data_dir: cli.data_dir };
    match cli.command {
        Command::Generate {
            config,
            groups,
            particles,
            radius,
            friction,
            wind,
            max_speed,
            width,
            height,
            duration,
            seed,
            output,
            meta,
        } => {
            let mut cfg: GeneratorConfig = match config {
                Some(p) => serde_json::from_reader(ctx.reader(Some(&p))?)?,
                None => GeneratorConfig::default(),
            };
            macro_rules! set {
                ($($f:ident => $field:ident),*) => { $(if let Some(v) = $f { cfg.$field = v; })* };
            }
            set!(groups => group_count, particles => particle_count, radius => radius,
                 friction => friction, wind => wind, max_speed => max_speed, width => width,
                 height => height, duration => duration, seed => seed);
            let stream = generate(&cfg).map_err(|e| e.in_stage("generate"))?;
            let mut header = Header::default();
            header.push("seed", cfg.seed);
            write_stream_with_header(&stream, &header, writer(output.as_deref())?)?;
            let metadata = GeneratorMetadata::new(&cfg, &stream);
            let meta = meta.or_else(|| {
                output
                    .filter(|p| p != Path::new("-"))
                    .map(|p| PathBuf::from(format!("{}.json", p.display())))
            });
            match meta {
                Some(p) => write_json(&metadata, BufWriter::new(File::create(p)?))?,
                None => write_json(&metadata, io::stderr())?,
            }
            Ok(Status::Ok)
        }
        Command::Compress { delta, io } => {
            let stream = ctx.stream(io.input.as_deref())?;
            let out = delta_compress(&stream, CompressionSpec::new(delta)).map_err(|e| e.in_stage("compress"))?;
            write_stream(&out, writer(io.output.as_deref())?)?;
            Ok(Status::Ok)
        }
        Command::GammaEdges { gamma, count, io } => {
            let stream = ctx.stream(io.input.as_deref())?;
            let edges = stream.enumerate_gamma_edges(gamma)?;
            let mut w = writer(io.output.as_deref())?;
            if count {
                writeln!(w, "{}", edges.len())?;
            } else {
                writeln!(w, "# gamma={gamma}")?;
                writeln!(w, "# count={}", edges.len())?;
                for e in &edges {
                    let (u, v) = e.endpoints();
                    writeln!(w, "{} {} {}", e.start(), stream.vertex_name(u), stream.vertex_name(v))?;
                }
            }
            w.flush()?;
            Ok(Status::Ok)
        }
        Command::Approx { gamma, io } => {
            let stream = ctx.stream(io.input.as_deref())?;
            let m = greedy_matching(&stream, gamma)?;
            write_matching(&m, &stream, writer(io.output.as_deref())?)?;
            Ok(Status::Ok)
        }
        Command::Kernelize {
            gamma,
            k,
            k_plus_one,
            prune_only,
            stats,
            stats_format,
            io,
        } => {
            let stream = ctx.stream(io.input.as_deref())?;
            let mode = if prune_only {
                KernelMode::PruneOnly { k: None }
            } else if k_plus_one {
                KernelMode::NextSize
            } else {
                KernelMode::Decide { k }
            };
            let label = io
                .input
                .as_deref()
                .and_then(|p| p.file_stem())
                .map_or("stdin".to_string(), |s| s.to_string_lossy().into_owned());
            let out = run_pipeline(
                &stream,
                &PipelineConfig {
                    label,
                    delta: None,
                    gamma,
                    mode,
                },
            )?;
            let r = &out.record;
            let mut w = writer(io.output.as_deref())?;
            let status = match &out.kernel {
                Some(kn) => {
                    let mut header = Header::default();
                    header.push("gamma", gamma);
                    header.push("k", kn.k);
                    write_stream_with_header(&kn.stream, &header, w)?;
                    Status::Ok
                }
                None if r.outcome == "solution-found" => {
                    write_matching(&out.matching, &stream, w)?;
                    Status::Ok
                }
                None => {
                    writeln!(w, "# no γ-matching of size {} (greedy {})", r.k, r.greedy)?;
                    w.flush()?;
                    Status::AnswerNo
                }
            };
            let summary = KernelStats {
                gamma,
                greedy: r.greedy,
                k: r.k,
                outcome: r.outcome.clone(),
                edges: r.edges,
                gamma_edges: r.gamma_edges,
                kernel_edges: r.kernel_edges,
                kernel_gamma_edges: r.kernel_gamma_edges,
                pool: r.pool,
                edge_ratio: r.kernel_edges.map(|e| if r.edges == 0 { 1.0 } else { e as f64 / r.edges as f64 }),
                gamma_edge_ratio: r.kernel_ratio,
                edge_bound: kernel_edge_bound(r.k, gamma).to_string(),
                pool_bound: pool_bound(r.k, gamma).to_string(),
            };
            let sink: Box<dyn Write> = match &stats {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(io::stderr()),
            };
            match stats_format {
                StatsFormat::Json => write_json(&summary, sink)?,
                StatsFormat::Csv => write_records_csv(std::slice::from_ref(r), sink)?,
            }
            Ok(status)
        }
        Command::Exact {
            gamma,
            k,
            budget,
            max_gamma_edges,
            force,
            io,
        } => {
            let stream = ctx.stream(io.input.as_deref())?;
            let count = stream.enumerate_gamma_edges(gamma)?.len();
            if count > max_gamma_edges && !force {
                return Err(Error::InvalidConfig(format!(
                    "{count} γ-edges exceed the exact-search cap of {max_gamma_edges}; \
                     raise --max-gamma-edges or pass --force"
                )));
            }
            let mut w = writer(io.output.as_deref())?;
            match k {
                Some(k) => {
                    let r = decide(&stream, gamma, k, budget)?;
                    writeln!(w, "# k={k}")?;
                    writeln!(w, "# answer={}", if r.answer { "yes" } else { "no" })?;
                    writeln!(w, "# nodes={}", r.explored_nodes)?;
                    match r.witness {
                        Some(m) => write_matching(&m, &stream, w)?,
                        None => w.flush()?,
                    }
                    Ok(if r.answer { Status::Ok } else { Status::AnswerNo })
                }
                None => {
                    let r = exact_maximum(&stream, gamma, budget)?;
                    writeln!(w, "# optimum={}", r.optimum)?;
                    writeln!(w, "# nodes={}", r.explored_nodes)?;
                    write_matching(&r.witness, &stream, w)?;
                    Ok(Status::Ok)
                }
            }
        }
        Command::ReduceSat { gamma, formula, output } => {
            let phi = CnfFormula::from_dimacs(ctx.reader(Some(&formula))?).map_err(|e| e.in_stage("dimacs"))?;
            let inst = reduce(&phi, gamma)?;
            let mut header = Header::default();
            header.push("gamma", gamma);
            header.push("target", inst.target);
            header.push("variables", phi.variable_count());
            header.push("clauses", phi.clause_count());
            write_stream_with_header(&inst.stream, &header, writer(output.as_deref())?)?;
            Ok(Status::Ok)
        }
        Command::Sweep {
            deltas,
            gammas,
            paired,
            mode,
            label,
            io,
        } => {
            if paired && deltas.len() != gammas.len() {
                return Err(Error::InvalidConfig(format!(
                    "--paired needs as many deltas ({}) as gammas ({})",
                    deltas.len(),
                    gammas.len()
                )));
            }
            let stream = ctx.stream(io.input.as_deref())?;
            let label = label.unwrap_or_else(|| {
                io.input
                    .as_deref()
                    .and_then(|p| p.file_stem())
                    .map_or("stdin".to_string(), |s| s.to_string_lossy().into_owned())
            });
            let deltas: Vec<Option<u64>> = deltas.into_iter().map(|d| (d > 1).then_some(d)).collect();
            let mode = match mode {
                SweepMode::PruneOnly => KernelMode::PruneOnly { k: None },
                SweepMode::Decide => KernelMode::Decide { k: None },
                SweepMode::NextSize => KernelMode::NextSize,
            };
            let cells = sweep_cells(&deltas, &gammas, paired);
            let records = sweep(&stream, &label, &cells, mode)?;
            write_records_csv(&records, writer(io.output.as_deref())?)?;
            Ok(Status::Ok)
        }
        Command::Validate { matching, io } => {
            let mut text = String::new();
            ctx.reader(io.input.as_deref())?.read_to_string(&mut text)?;
            let (stream, _) = read_stream_with_header(text.as_bytes()).map_err(|e| e.in_stage("read"))?;
            let mut w = writer(io.output.as_deref())?;
            let report = stream.validate();
            writeln!(w, "stream: {report}")?;
            let mut ok = report.is_ok();
            if let Some(p) = matching {
                let m = read_matching(ctx.reader(Some(&p))?, &stream).map_err(|e| e.in_stage("matching"))?;
                let report = stream.validate_matching(&m);
                writeln!(w, "matching (size {}, gamma {}): {report}", m.len(), m.gamma())?;
                ok &= report.is_ok();
            }
            w.flush()?;
            Ok(if ok { Status::Ok } else { Status::AnswerNo })
        }
    }
}

/// Parses `args`, runs, reports errors on stderr and maps to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
