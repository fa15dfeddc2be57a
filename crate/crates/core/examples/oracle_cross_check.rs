//! The independent oracle: flattening ranks plus the hyperdeterminant for
//! three qubits, and dense sampling of the pencil for four.
//!
//! cargo run --release --example oracle_cross_check

use slocc::canonical::{fixtures, random_slocc, tri_canonical};
use slocc::oracle::{classify3_by_ranks, profile_by_sampling};
use slocc::{analyze_span, apply_slocc, classify3, decompose, TriClass, DEFAULT_EPS};

fn main() -> slocc::Result<()> {
    let classes = [
        TriClass::Sep000,
        TriClass::Bisep(1),
        TriClass::Bisep(2),
        TriClass::Bisep(3),
        TriClass::W,
        TriClass::Ghz,
    ];
    let mut disagreements = 0;
    for class in classes {
        let base = tri_canonical(class)?;
        for seed in 0..500 {
            let s = apply_slocc(&base, &random_slocc(3, 1e3, seed))?;
            if classify3(&s, DEFAULT_EPS)? != classify3_by_ranks(&s, DEFAULT_EPS)? {
                disagreements += 1;
            }
        }
    }
    println!("three qubits: {disagreements} disagreements in 3000 states");

    for f in fixtures() {
        let d = decompose(&f.state, 1)?;
        let fast = analyze_span(&d.phi0, &d.phi1, DEFAULT_EPS)?;
        let slow = profile_by_sampling(&d.phi0, &d.phi1, 2000, DEFAULT_EPS)?;
        let show = |v: Vec<TriClass>| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        println!(
            "{:<18} generic {}/{}  exceptional [{}] / [{}]",
            f.name,
            fast.generic_type,
            slow.generic_type,
            show(fast.class_multiset()),
            show(slow.class_multiset())
        );
    }
    Ok(())
}
