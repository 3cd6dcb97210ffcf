//! Kernelize a generated stream for the decision "is there a γ-matching of
//! size k?" and compare both answers with the exact solver.
//!
//! ```bash
//! cargo run --release --example kernelize -- [seed]
//! ```

use temporal_matching::generator::{generate, GeneratorConfig};
use temporal_matching::kernel::{kernel_edge_bound, pool_bound};
use temporal_matching::{exact_decision, greedy_matching, kernelize, KernelOutcome};

fn main() -> temporal_matching::Result<()> {
    let seed = std::env::args().nth(1).map_or(7, |s| s.parse().expect("seed"));
    let stream = generate(&GeneratorConfig::small(6, 10, seed))?;
    let gamma = 2;
    let greedy = greedy_matching(&stream, gamma)?;
    let k = greedy.len() + 1;
    println!("|E| = {}, greedy ℓ = {}, asking for k = {k}", stream.edge_count(), greedy.len());

    match kernelize(&stream, gamma, k)? {
        KernelOutcome::SolutionFound(m) => println!("greedy already has {} ≥ k", m.len()),
        KernelOutcome::NoSolution { greedy_size } => println!("2ℓ = {} < k: no solution", 2 * greedy_size),
        KernelOutcome::Kernel(kernel) => {
            println!(
                "kernel: |E'| = {} (bound {}), pool = {} (bound {})",
                kernel.stream.edge_count(),
                kernel_edge_bound(k, gamma),
                kernel.pool.len(),
                pool_bound(k, gamma)
            );
            let on_input = exact_decision(&stream, gamma, k, None)?;
            let on_kernel = exact_decision(&kernel.stream, gamma, k, None)?;
            println!("exact answer: input {on_input}, kernel {on_kernel}");
            assert_eq!(on_input, on_kernel);
        }
    }
    Ok(())
}
