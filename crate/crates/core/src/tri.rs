//! Three-qubit SLOCC classes from polynomial criteria on the eight amplitudes.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qstate::PureState;
use crate::scalar::{clause_quantities_of, ghz_invariant_of, ghz_parts};

/// Three-qubit SLOCC class. `Bisep(k)` has qubit `k` (1-based) in a product
/// with an entangled pair on the other two qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriClass {
    Zero,
    Sep000,
    Bisep(u8),
    W,
    Ghz,
}

impl TriClass {
    /// Position in the entanglement order `Zero < Sep000 < Bisep < W < GHZ`.
    pub fn level(&self) -> u8 {
        match self {
            TriClass::Zero => 0,
            TriClass::Sep000 => 1,
            TriClass::Bisep(_) => 2,
            TriClass::W => 3,
            TriClass::Ghz => 4,
        }
    }

    pub fn is_genuine(&self) -> bool {
        matches!(self, TriClass::W | TriClass::Ghz)
    }

    pub fn cut(&self) -> Option<u8> {
        match self {
            TriClass::Bisep(k) => Some(*k),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<TriClass> {
        match s {
            "Zero" => Some(TriClass::Zero),
            "Sep000" => Some(TriClass::Sep000),
            "W" => Some(TriClass::W),
            "GHZ" => Some(TriClass::Ghz),
            "Bisep(1)" => Some(TriClass::Bisep(1)),
            "Bisep(2)" => Some(TriClass::Bisep(2)),
            "Bisep(3)" => Some(TriClass::Bisep(3)),
            _ => None,
        }
    }
}

impl Ord for TriClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level(), self.cut()).cmp(&(other.level(), other.cut()))
    }
}

impl PartialOrd for TriClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TriClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriClass::Zero => write!(f, "Zero"),
            TriClass::Sep000 => write!(f, "Sep000"),
            TriClass::Bisep(k) => write!(f, "Bisep({k})"),
            TriClass::W => write!(f, "W"),
            TriClass::Ghz => write!(f, "GHZ"),
        }
    }
}

impl Serialize for TriClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Values behind the W conditions for one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClauseReport {
    #[serde(serialize_with = "crate::io::ser_complex")]
    pub ghz_value: Complex64,
    pub clause_truth: [bool; 3],
    #[serde(serialize_with = "crate::io::ser_complex_slice")]
    pub quantities: [Complex64; 6],
}

impl ClauseReport {
    pub fn true_count(&self) -> usize {
        self.clause_truth.iter().filter(|&&t| t).count()
    }
}

fn check_len(a: &[Complex64]) -> Result<()> {
    if a.len() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: a.len(),
        });
    }
    Ok(())
}

/// The degree-4 invariant that is nonzero exactly on the GHZ class.
/// Panics unless `a` has eight entries.
pub fn ghz_invariant(a: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), 8, "three-qubit amplitudes expected");
    ghz_invariant_of(a)
}

/// Holomorphic gradient of [`ghz_invariant`].
pub fn ghz_gradient(a: &[Complex64]) -> [Complex64; 8] {
    assert_eq!(a.len(), 8, "three-qubit amplitudes expected");
    let (p, q, r) = ghz_parts(a);
    let mut dp = [Complex64::new(0.0, 0.0); 8];
    let mut dq = dp;
    let mut dr = dp;
    for (i, j, s) in [
        (0, 7, 1.0),
        (2, 5, -1.0),
        (1, 6, 1.0),
        (3, 4, -1.0),
    ] {
        dp[i] = a[j] * s;
        dp[j] = a[i] * s;
    }
    dq[2] = a[4];
    dq[4] = a[2];
    dq[0] = -a[6];
    dq[6] = -a[0];
    dr[3] = a[5];
    dr[5] = a[3];
    dr[1] = -a[7];
    dr[7] = -a[1];
    let mut g = [Complex64::new(0.0, 0.0); 8];
    for i in 0..8 {
        g[i] = p * dp[i] * 2.0 - (r * dq[i] + q * dr[i]) * 4.0;
    }
    g
}

/// Scales against which a computed invariant is judged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzScales {
    /// `|grad I| * |a|`, the size of first-order changes of `I`.
    pub gauge: f64,
    /// Worst-case rounding error of the evaluation itself.
    pub noise: f64,
}

const ROUNDING_FACTOR: f64 = 8.0 * f64::EPSILON;

pub fn ghz_scales(a: &[Complex64]) -> GhzScales {
    let g = ghz_gradient(a);
    let gnorm = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let anorm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let m = |i: usize, j: usize| a[i].norm() * a[j].norm();
    let pa = m(0, 7) + m(2, 5) + m(1, 6) + m(3, 4);
    let qa = m(2, 4) + m(0, 6);
    let ra = m(3, 5) + m(1, 7);
    GhzScales {
        gauge: gnorm * anorm,
        noise: ROUNDING_FACTOR * (pa * pa + 4.0 * qa * ra),
    }
}

/// True when `value` is distinguishable from zero at relative tolerance
/// `eps`. A root of `I` that is moved by rounding of size `delta` yields
/// `|I| ~ |grad I| delta`, so the gauge keeps W states near the GHZ
/// boundary out; the noise bound catches the biseparable locus where the
/// gradient itself vanishes.
pub(crate) fn ghz_value_nonzero(value: Complex64, scales: GhzScales, eps: f64) -> bool {
    let v = value.norm();
    v > eps * scales.gauge && v > scales.noise
}

pub fn is_ghz(a: &[Complex64], eps: f64) -> bool {
    ghz_value_nonzero(ghz_invariant(a), ghz_scales(a), eps)
}

/// Evaluates the W conditions; clause `k` holds when either of its two
/// quantities exceeds `eps * (max |a_i|)^2`.
pub fn w_clauses(a: &[Complex64], eps: f64) -> ClauseReport {
    assert_eq!(a.len(), 8, "three-qubit amplitudes expected");
    let quantities = clause_quantities_of(a);
    let m = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = eps * m * m;
    let mut clause_truth = [false; 3];
    for (k, t) in clause_truth.iter_mut().enumerate() {
        *t = quantities[2 * k].norm() > tol || quantities[2 * k + 1].norm() > tol;
    }
    ClauseReport {
        ghz_value: ghz_invariant(a),
        clause_truth,
        quantities,
    }
}

/// Maps the zero-tests onto a class. Shared by the floating and exact paths.
pub(crate) fn decide(ghz_nonzero: bool, clauses: [bool; 3]) -> Result<TriClass> {
    if ghz_nonzero {
        return Ok(TriClass::Ghz);
    }
    match clauses {
        [true, true, true] => Ok(TriClass::W),
        [false, false, false] => Ok(TriClass::Sep000),
        [true, false, false] => Ok(TriClass::Bisep(1)),
        [false, true, false] => Ok(TriClass::Bisep(2)),
        [false, false, true] => Ok(TriClass::Bisep(3)),
        _ => Err(Error::AmbiguousClassification { clauses }),
    }
}

pub fn classify_amplitudes(a: &[Complex64], eps: f64) -> Result<TriClass> {
    check_len(a)?;
    if a.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
        return Ok(TriClass::Zero);
    }
    let report = w_clauses(a, eps);
    decide(is_ghz(a, eps), report.clause_truth)
}

pub fn classify3(state: &PureState, eps: f64) -> Result<TriClass> {
    if state.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: state.n(),
        });
    }
    classify_amplitudes(state.amps(), eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x)).collect()
    }

    fn st(v: &[f64]) -> PureState {
        PureState::from_real(3, v).unwrap()
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(ghz_invariant(&real(&[1., 0., 0., 0., 0., 0., 0., 1.])), c(1.0));
        assert_eq!(ghz_invariant(&real(&[0., 1., 1., 0., 1., 0., 0., 0.])), c(0.0));
        assert_eq!(ghz_invariant(&real(&[0., 0., 0., 1., 0., 1., 4., 0.])), c(0.0));
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let a: Vec<Complex64> = (0..8)
            .map(|i| Complex64::new(0.3 + i as f64 * 0.17, 0.5 - i as f64 * 0.09))
            .collect();
        let g = ghz_gradient(&a);
        let h = 1e-6;
        for i in 0..8 {
            let mut b = a.clone();
            b[i] += h;
            let fd = (ghz_invariant(&b) - ghz_invariant(&a)) / h;
            assert!((fd - g[i]).norm() < 1e-4, "component {i}");
        }
    }

    #[test]
    fn clause_examples() {
        let w = w_clauses(&real(&[0., 1., 1., 0., 1., 0., 0., 0.]), EPS);
        assert_eq!(w.clause_truth, [true, true, true]);
        let p = w_clauses(&real(&[1., 0., 0., 0., 0., 0., 0., 0.]), EPS);
        assert_eq!(p.clause_truth, [false, false, false]);
        let b = w_clauses(&real(&[0., 1., 0., 0., 1., 0., 0., 0.]), EPS);
        assert_eq!(b.clause_truth, [false, true, false]);
        assert_eq!(b.true_count(), 1);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify3(&st(&[1., 0., 0., 0., 0., 0., 0., 1.]), EPS).unwrap(), TriClass::Ghz);
        assert_eq!(classify3(&st(&[0., 1., 1., 0., 1., 0., 0., 0.]), EPS).unwrap(), TriClass::W);
        assert_eq!(
            classify3(&st(&[0., 1., 0., 0., 1., 0., 0., 0.]), EPS).unwrap(),
            TriClass::Bisep(2)
        );
        assert_eq!(
            classify3(&st(&[0., 0., 0., 0., 0., 1., 1., 0.]), EPS).unwrap(),
            TriClass::Bisep(1)
        );
        assert_eq!(classify3(&PureState::zero(3).unwrap(), EPS).unwrap(), TriClass::Zero);
        assert_eq!(
            classify3(&st(&[1., 0., 0., 0., 0., 0., 0., 0.]), EPS).unwrap(),
            TriClass::Sep000
        );
    }

    // Each canonical product-times-Bell state fires exactly its own clause.
    #[test]
    fn clause_index_is_the_separable_qubit() {
        let bell_on = |k: usize| -> PureState {
            // |0> on qubit k, (|00> + |11>) on the other two.
            let others: Vec<usize> = (1..=3).filter(|&q| q != k).collect();
            let mut a = vec![0.0; 8];
            for b in 0..2 {
                let mut idx = 0;
                for &q in &others {
                    idx |= b << (3 - q);
                }
                a[idx] = 1.0;
            }
            st(&a)
        };
        for k in 1..=3 {
            let s = bell_on(k);
            assert_eq!(classify3(&s, EPS).unwrap(), TriClass::Bisep(k as u8));
            let mut expect = [false; 3];
            expect[k - 1] = true;
            assert_eq!(w_clauses(s.amps(), EPS).clause_truth, expect);
        }
    }

    #[test]
    fn two_clauses_is_an_error() {
        assert!(matches!(
            decide(false, [true, true, false]),
            Err(Error::AmbiguousClassification { .. })
        ));
    }

    #[test]
    fn wrong_size_rejected() {
        let s = PureState::from_real(2, &[1., 0., 0., 1.]).unwrap();
        assert!(matches!(classify3(&s, EPS), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn tiny_perturbation_of_w_stays_w() {
        let mut a = real(&[0., 1., 1., 0., 1., 0., 0., 0.]);
        a[7] = c(1e-15);
        assert_eq!(classify_amplitudes(&a, EPS).unwrap(), TriClass::W);
    }

    #[test]
    fn order_and_display() {
        assert!(TriClass::Sep000 < TriClass::Bisep(3));
        assert!(TriClass::Bisep(1) < TriClass::Bisep(2));
        assert!(TriClass::W < TriClass::Ghz);
        for t in [TriClass::Zero, TriClass::Sep000, TriClass::Bisep(2), TriClass::W, TriClass::Ghz] {
            assert_eq!(TriClass::parse(&t.to_string()), Some(t));
        }
    }
}
