//! Build the link stream for a 3-CNF formula and check that a satisfying
//! assignment yields a γ-matching of exactly the target size.
//!
//! ```bash
//! cargo run --release --example sat_reduction
//! ```

use temporal_matching::io::write_stream;
use temporal_matching::{assignment_to_matching, exact_decision, reduce, CnfFormula};

const FORMULA: &str = "\
c (x1 ∨ ¬x2 ∨ x3) ∧ (¬x1 ∨ x2 ∨ ¬x4)
p cnf 4 2
1 -2 3 0
-1 2 -4 0
";

fn main() -> temporal_matching::Result<()> {
    let formula = CnfFormula::from_dimacs(FORMULA.as_bytes())?;
    let instance = reduce(&formula, 3)?;
    let s = &instance.stream;
    println!("formula: {formula}");
    println!("T = {}, |V| = {}, |E| = {}, target = {}", s.interval(), s.vertex_count(), s.edge_count(), instance.target);

    let assignment = formula.solve_by_truth_table().expect("satisfiable");
    let matching = assignment_to_matching(&instance, &assignment)?;
    assert_eq!(matching.len(), instance.target);
    assert!(s.validate_matching(&matching).is_ok());
    println!("assignment {assignment:?} → γ-matching of size {}", matching.len());

    let reachable = exact_decision(s, instance.gamma, instance.target, None)?;
    println!("exact solver reaches the target: {reachable}");

    if std::env::args().any(|a| a == "--dump") {
        write_stream(s, std::io::stdout().lock())?;
    }
    Ok(())
}
