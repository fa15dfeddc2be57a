//! The two parameterized families and their parameter grids, checked under
//! random invertible local operators.
//!
//! cargo run --release --example canonical_families [-- SEEDS]

use slocc::canonical::{lambda_grid, make_canonical, random_slocc, ww_grid, FamilySpec, QuadFamily};
use slocc::{apply_slocc, classify4, PureState, DEFAULT_EPS};

fn agreement(state: &PureState, expected: &str, seeds: u64) -> slocc::Result<u64> {
    let mut hits = 0;
    for seed in 0..seeds {
        let moved = apply_slocc(state, &random_slocc(4, 1e3, seed))?;
        if classify4(&moved, 1, DEFAULT_EPS)?.tag.to_string() == expected {
            hits += 1;
        }
    }
    Ok(hits)
}

fn main() -> slocc::Result<()> {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);

    let want = QuadFamily::W0kPsi_W.expected_tag().to_string();
    for lambda in lambda_grid() {
        let s = make_canonical(&FamilySpec::w0kpsi_w(lambda))?;
        println!("W0kPsi_W lambda={lambda:<8} {}/{seeds}", agreement(&s, &want, seeds)?);
    }

    let want = QuadFamily::WW_W.expected_tag().to_string();
    let grid = ww_grid();
    let mut total = 0;
    for &(a3, a5, mu, plus) in &grid {
        let s = make_canonical(&FamilySpec::ww_w(a3, a5, mu, plus))?;
        total += agreement(&s, &want, seeds)?;
    }
    println!("WW_W over {} grid points: {total}/{}", grid.len(), grid.len() as u64 * seeds);

    // Parameters outside the family are rejected, not silently accepted.
    let bad = make_canonical(&FamilySpec::ww_w(1.0.into(), 1.0.into(), 0.0.into(), false));
    println!("a3 = a5 = 1 on the minus branch: {}", bad.unwrap_err());
    Ok(())
}
