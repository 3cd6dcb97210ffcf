//! Generate a particle-contact stream and report its size.
//!
//! ```bash
//! cargo run --release --example particle_generator -- [groups] [duration] [seed]
//! ```

use std::time::Instant;

use temporal_matching::generator::{generate, GeneratorConfig, GeneratorMetadata};

fn main() -> temporal_matching::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let mut config = GeneratorConfig::default();
    if let Some(groups) = args.next() {
        config.group_count = groups as usize;
        config.particle_count = 3 * groups as usize;
    }
    if let Some(duration) = args.next() {
        config.duration = duration;
    }
    if let Some(seed) = args.next() {
        config.seed = seed;
    }

    let start = Instant::now();
    let stream = generate(&config)?;
    let elapsed = start.elapsed();

    println!("{}", serde_json::to_string_pretty(&GeneratorMetadata::new(&config, &stream))?);
    for gamma in [2, 5] {
        println!("gamma={gamma}: {} γ-edges", stream.enumerate_gamma_edges(gamma)?.len());
    }
    println!("generated in {:.3}s", elapsed.as_secs_f64());
    Ok(())
}
