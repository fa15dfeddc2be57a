//! The state layer: tensor products, invertible local operators, splitting
//! off a qubit, bipartition ranks and the two-qubit classes.
//!
//! cargo run --example local_operations

use slocc::canonical::{ghz3, w3};
use slocc::qstate::{bipartition_ranks, classify2, span_dimension};
use slocc::{apply_slocc, decompose, LocalOperator, PureState, SloccOp, DEFAULT_EPS};

fn main() -> slocc::Result<()> {
    let bell = PureState::from_basis(2, &[0, 3])?;
    let product = PureState::from_basis(2, &[0])?;
    println!("Bell: {:?}, |00>: {:?}", classify2(&bell, DEFAULT_EPS)?, classify2(&product, DEFAULT_EPS)?);

    // |Bell> (x) |Bell> is a product across the 12|34 cut.
    let four = bell.tensor(&bell)?;
    let ranks = bipartition_ranks(&four, DEFAULT_EPS)?;
    println!("Bell x Bell product pair: {:?}", ranks.product_pair().map(|c| c.to_string()));

    // A shear on qubit 2 of GHZ keeps it GHZ and is undone by its inverse.
    let shear = SloccOp::single(3, 2, LocalOperator::from_real([[1.0, 2.0], [0.0, 1.0]]))?;
    let g = apply_slocc(&ghz3(), &shear)?;
    let back = apply_slocc(&g, &shear.inverse()?)?;
    println!("sheared GHZ {g}\nrestored    {back}");

    // Splitting |0>|W> + |1>|GHZ> on qubit 1 recovers the two halves.
    let mut amps = w3().amps().to_vec();
    amps.extend_from_slice(ghz3().amps());
    let s = PureState::new(4, amps)?;
    let d = decompose(&s, 1)?;
    println!("phi0 = {}, phi1 = {}, span dimension {}", d.phi0, d.phi1, span_dimension(&d, DEFAULT_EPS)?);
    Ok(())
}
