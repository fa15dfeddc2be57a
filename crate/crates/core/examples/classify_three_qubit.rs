//! Three-qubit classification: the six classes, the invariant that singles
//! out GHZ, and the clause values that separate W from the biseparable ones.
//!
//! cargo run --example classify_three_qubit

use num_complex::Complex64 as C;
use slocc::canonical::{random_slocc, tri_canonical};
use slocc::tri::{ghz_invariant, w_clauses};
use slocc::{apply_slocc, classify3, PureState, TriClass, DEFAULT_EPS};

fn main() -> slocc::Result<()> {
    let classes = [
        TriClass::Sep000,
        TriClass::Bisep(1),
        TriClass::Bisep(2),
        TriClass::Bisep(3),
        TriClass::W,
        TriClass::Ghz,
    ];
    println!("{:<10} {:<10} {:>12}  clauses", "canonical", "verdict", "|I|");
    for class in classes {
        let state = tri_canonical(class)?;
        let report = w_clauses(state.amps(), DEFAULT_EPS);
        println!(
            "{:<10} {:<10} {:>12.3e}  {:?}",
            class.to_string(),
            classify3(&state, DEFAULT_EPS)?.to_string(),
            ghz_invariant(state.amps()).norm(),
            report.clause_truth
        );
    }

    // Verdicts survive invertible local operators.
    let w = tri_canonical(TriClass::W)?;
    let moved = apply_slocc(&w, &random_slocc(3, 1e3, 42))?;
    println!("\nW under a random local operator: {}", classify3(&moved, DEFAULT_EPS)?);

    // A complex superposition, entered by hand.
    let c = |re, im| C::new(re, im);
    let z = c(0.0, 0.0);
    let state = PureState::new(3, vec![c(1.0, 0.0), z, z, c(0.0, 1.0), z, c(2.0, 0.0), z, z])?;
    println!("{state} -> {}", classify3(&state, DEFAULT_EPS)?);
    Ok(())
}
