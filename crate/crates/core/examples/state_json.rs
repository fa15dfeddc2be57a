//! The JSON state format used by the command line: amplitudes as numbers,
//! `[re, im]` pairs, or exact strings such as "1/3".
//!
//! cargo run --example state_json

use slocc::canonical::{make_canonical, Family, FamilySpec};
use slocc::io::{parse_state, state_to_value};

fn main() -> slocc::Result<()> {
    let w = make_canonical(&FamilySpec::new(Family::parse("W")?))?;
    let text = serde_json::to_string(&state_to_value(&w))?;
    println!("{text}");
    let back = parse_state(&text)?;
    println!("round trip equal: {}", back.state == w);

    for bad in [r#"{"n": 2, "amps": [1, 0, 0]}"#, r#"{"n": 2}"#, "[1, 2]"] {
        println!("{bad:<28} -> {}", parse_state(bad).unwrap_err());
    }
    Ok(())
}
