//! Exact Gaussian-rational arithmetic: decimal literals parse without
//! rounding, and exact verdicts match the floating-point ones.
//!
//! cargo run --example exact_mode

use slocc::canonical::fixtures;
use slocc::exact::{classify4_exact, exact_quartic, GaussRat};
use slocc::io::{parse_state, state_to_value};
use slocc::{classify4, DEFAULT_EPS};

fn main() -> slocc::Result<()> {
    let ghz_plus_tenth = r#"{"n": 3, "amps": [1, 0, 0, 0, 0, 0, 0, ["0.1", "1/3"]]}"#;
    let parsed = parse_state(ghz_plus_tenth)?;
    println!("exact amplitude 7: {}", parsed.exact[7]);

    for f in fixtures() {
        let p = parse_state(&state_to_value(&f.state).to_string())?;
        let exact = classify4_exact(&p.exact, 1)?;
        let numeric = classify4(&p.state, 1, DEFAULT_EPS)?;
        println!("{:<18} exact {:<20} numeric {}", f.name, exact.tag.to_string(), numeric.tag);
    }

    // Pinning one spanning state to |000> + |111> fixes the y^4 coefficient.
    let g = |re| GaussRat::from_ints(re, 0);
    let phi0: Vec<GaussRat> = [3, -1, 4, 1, -5, 9, 2, -6].into_iter().map(g).collect();
    let phi1: Vec<GaussRat> = [1, 0, 0, 0, 0, 0, 0, 1].into_iter().map(g).collect();
    let c = exact_quartic(&phi0, &phi1)?;
    println!("\nexact quartic: {}", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    Ok(())
}
