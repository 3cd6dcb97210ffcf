//! δ-compression: merge each window of δ instants into one.
//!
//! ```bash
//! cargo run --example compress
//! ```

use temporal_matching::{delta_compress, CompressionSpec, LinkStream};

fn main() -> temporal_matching::Result<()> {
    let stream = LinkStream::builder()
        .interval(0, 11)
        .edge(0, "a", "b")
        .edge(1, "a", "b")
        .edge(5, "a", "b")
        .edge(7, "b", "c")
        .edge(11, "a", "c")
        .build()?;

    for delta in [2, 3, 4, 6] {
        let compressed = delta_compress(&stream, CompressionSpec::new(delta))?;
        println!(
            "δ={delta}: T={} |E|={} γ-edges(γ=2)={}",
            compressed.interval(),
            compressed.edge_count(),
            compressed.enumerate_gamma_edges(2)?.len()
        );
    }
    // δ must satisfy 1 < δ < |T|.
    assert!(delta_compress(&stream, CompressionSpec::new(12)).is_err());
    Ok(())
}
