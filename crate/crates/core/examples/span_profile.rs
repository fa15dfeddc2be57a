//! Inside a four-qubit verdict: split off a qubit, build the quartic and
//! clause quadratics of the pencil, and list its exceptional points.
//!
//! cargo run --example span_profile

use num_complex::Complex64 as C;
use slocc::canonical::separable_point_construction;
use slocc::pencil::clause_quadratics;
use slocc::quad::decide_profile;
use slocc::{analyze_span, decompose, quartic, quartic_roots, DEFAULT_EPS};

fn main() -> slocc::Result<()> {
    let (phi, psi00, psi01, psi10) = (C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(2.0, 0.0), C::new(3.0, 0.0));
    let state = separable_point_construction(phi, psi00, psi01, psi10)?;
    let d = decompose(&state, 1)?;
    println!("phi0 = {}\nphi1 = {}", d.phi0, d.phi1);

    let form = quartic(&d.phi0, &d.phi1)?;
    let show = |cs: &[C]| cs.iter().map(|z| format!("{z:.3}")).collect::<Vec<_>>().join(", ");
    println!("\nquartic coefficients (x^4 .. y^4): {}", show(&form.c));
    println!("identically zero: {}", form.is_identically_zero(DEFAULT_EPS));
    if !form.is_identically_zero(DEFAULT_EPS) {
        for r in quartic_roots(&form, DEFAULT_EPS)? {
            println!("  root {r} multiplicity {}", r.multiplicity);
        }
    }

    let clauses = clause_quadratics(&d.phi0, &d.phi1)?;
    for (k, pair) in clauses.pairs.iter().enumerate() {
        println!("clause {}: [{}] / [{}]", k + 1, show(&pair[0].c), show(&pair[1].c));
    }

    let profile = analyze_span(&d.phi0, &d.phi1, DEFAULT_EPS)?;
    println!("\ngeneric type: {}", profile.generic_type);
    for e in &profile.exceptional {
        // Points within rounding of y = 0 are shown projectively.
        let at = match e.point.affine() {
            Some(x) if e.point.y.norm() > 1e-9 => format!("x/y = {x:.6}"),
            _ => format!("(x:y) = ({:.3}:{:.3})", e.point.x, e.point.y),
        };
        println!("  {:<9} at {at}", e.class.to_string());
    }
    println!(
        "expected separable points at x = {:.6} and {:.6}",
        -1.0 / (phi * psi01),
        -1.0 / (phi * psi10)
    );
    println!("decision: {}", decide_profile(&profile)?);
    Ok(())
}
