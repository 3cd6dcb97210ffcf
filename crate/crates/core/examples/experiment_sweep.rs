//! Sweep (δ, γ) cells over a generated stream and print the CSV table.
//!
//! ```bash
//! cargo run --release --example experiment_sweep
//! ```

use temporal_matching::experiment::{sweep, sweep_cells, write_records_csv, KernelMode};
use temporal_matching::generator::{generate, GeneratorConfig};

fn main() -> temporal_matching::Result<()> {
    let config = GeneratorConfig {
        group_count: 40,
        particle_count: 120,
        duration: 120,
        ..GeneratorConfig::default()
    };
    let stream = generate(&config)?;
    let cells = sweep_cells(&[None, Some(2), Some(4)], &[2, 3, 5], false);
    let records = sweep(&stream, "generated", &cells, KernelMode::default())?;
    write_records_csv(&records, std::io::stdout().lock())?;
    Ok(())
}
