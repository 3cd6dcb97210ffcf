//! Maximum γ-matching by branch and bound, with a node budget.
//!
//! ```bash
//! cargo run --release --example exact_oracle -- [groups] [duration] [gamma]
//! ```

use temporal_matching::generator::{generate, GeneratorConfig};
use temporal_matching::{exact_maximum, greedy_matching, Error};

fn main() -> temporal_matching::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let groups = args.first().copied().unwrap_or(8) as usize;
    let duration = args.get(1).copied().unwrap_or(12);
    let gamma = args.get(2).copied().unwrap_or(3);

    let stream = generate(&GeneratorConfig::small(groups, duration, 3))?;
    let candidates = stream.enumerate_gamma_edges(gamma)?;
    let greedy = greedy_matching(&stream, gamma)?;
    println!("{} γ-edges, greedy {}", candidates.len(), greedy.len());

    match exact_maximum(&stream, gamma, Some(1_000_000)) {
        Ok(r) => {
            println!("optimum {} after {} nodes", r.optimum, r.explored_nodes);
            for e in &r.witness {
                println!("  {}", e.display(&stream));
            }
        }
        Err(Error::BudgetExceeded { budget }) => println!("gave up after {budget} nodes"),
        Err(e) => return Err(e),
    }
    Ok(())
}
