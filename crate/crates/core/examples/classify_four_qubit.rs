//! Four-qubit classification of every canonical representative, for one
//! distinguished qubit and for all four at once.
//!
//! cargo run --example classify_four_qubit

use slocc::canonical::fixtures;
use slocc::{classify4, classify4_all, PureState, DEFAULT_EPS};

fn main() -> slocc::Result<()> {
    println!("{:<18} {:<20} {:<20} all four qubits", "fixture", "expected", "qubit 1");
    for f in fixtures() {
        let verdict = classify4(&f.state, 1, DEFAULT_EPS)?;
        let summary = classify4_all(&f.state, DEFAULT_EPS)?;
        println!(
            "{:<18} {:<20} {:<20} {}",
            f.name,
            f.expected.to_string(),
            verdict.tag.to_string(),
            summary.canonical_label
        );
    }

    // States that are not genuinely four-partite are screened out.
    let product = PureState::from_basis(4, &[0])?;
    let pair = PureState::from_basis(4, &[0, 3, 12, 15])?;
    for s in [product, pair] {
        println!("{s} -> {}", classify4(&s, 1, DEFAULT_EPS)?.tag);
    }
    Ok(())
}
