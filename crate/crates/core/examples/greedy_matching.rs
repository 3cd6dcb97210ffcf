//! Greedy 2-approximate γ-matching on a small hand-built stream, including
//! the instance where greedy finds only half the optimum.
//!
//! ```bash
//! cargo run --example greedy_matching
//! ```

use temporal_matching::{bottom_vertices, exact_maximum, greedy_matching, LinkStream};

fn main() -> temporal_matching::Result<()> {
    // b–c is active first, so greedy takes it and blocks both a–b and c–d.
    let stream = LinkStream::from_edges([
        (0, "b", "c"),
        (1, "b", "c"),
        (1, "a", "b"),
        (2, "a", "b"),
        (1, "c", "d"),
        (2, "c", "d"),
    ])?;
    let gamma = 2;

    let greedy = greedy_matching(&stream, gamma)?;
    let exact = exact_maximum(&stream, gamma, None)?;

    println!("stream: {} vertices, {} instants, {} edges", stream.vertex_count(), stream.instant_count(), stream.edge_count());
    println!("greedy ({}):", greedy.len());
    for e in &greedy {
        println!("  {}", e.display(&stream));
    }
    println!("optimum ({}):", exact.optimum);
    for e in &exact.witness {
        println!("  {}", e.display(&stream));
    }

    // Every optimal γ-edge touches one of these temporal vertices.
    let bot = bottom_vertices(&greedy);
    let names: Vec<String> = bot.iter().map(|tv| format!("({}, {})", tv.time, stream.vertex_name(tv.vertex))).collect();
    println!("bottom vertices: {}", names.join(" "));
    assert!(exact.optimum <= 2 * greedy.len());
    Ok(())
}
