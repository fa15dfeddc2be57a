//! Pure-state representation and the local (SLOCC) group action.
//!
//! Amplitude index `i` of an `n`-qubit state is read as the bit string
//! `|q1 q2 ... qn>` with qubit 1 the most significant bit. Qubits are
//! numbered from 1 throughout the public API.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Operators whose determinant magnitude falls below this are rejected.
pub const SINGULAR_DET_FLOOR: f64 = 1e-300;

pub const MAX_QUBITS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(n));
        }
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(Self { n, amps })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(n: usize, amps: &[f64]) -> Result<Self> {
        Self::new(n, amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Sum of computational basis states with unit amplitude.
    pub fn from_basis(n: usize, indices: &[usize]) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n.min(MAX_QUBITS)];
        for &i in indices {
            let slot = amps.get_mut(i).ok_or(Error::DimensionMismatch {
                expected: 1 << n,
                found: i + 1,
            })?;
            *slot += 1.0;
        }
        Self::new(n, amps)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![Complex64::new(0.0, 0.0); 1 << n.min(MAX_QUBITS)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn max_abs(&self) -> f64 {
        self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// `x * self + y * other`; both states must have the same qubit count.
    pub fn combine(&self, x: Complex64, other: &Self, y: Complex64) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let amps = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a * x + b * y)
            .collect();
        Ok(Self { n: self.n, amps })
    }

    /// Tensor product `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n + other.n;
        let mut amps = Vec::with_capacity(1 << n.min(MAX_QUBITS));
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self::new(n, amps)
    }

    /// Reorders qubits so that qubit `i + 1` of the result is qubit
    /// `order[i]` of `self`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        let n = self.n;
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: order.len(),
            });
        }
        let mut seen = [false; MAX_QUBITS];
        for &q in order {
            check_qubit(q, n)?;
            if std::mem::replace(&mut seen[q - 1], true) {
                return Err(Error::InvalidQubit { qubit: q, n });
            }
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (old, a) in self.amps.iter().enumerate() {
            let mut new = 0;
            for (pos, &q) in order.iter().enumerate() {
                new |= bit(old, q, n) << (n - 1 - pos);
            }
            amps[new] = *a;
        }
        Ok(Self { n, amps })
    }
}

impl fmt::Display for PureState {
    /// Writes the nonzero terms as `a|0101> + b|1100> + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({a})|{:0width$b}>", i, width = self.n)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn check_qubit(qubit: usize, n: usize) -> Result<()> {
    if qubit == 0 || qubit > n {
        Err(Error::InvalidQubit { qubit, n })
    } else {
        Ok(())
    }
}

/// Value of qubit `q` (1-based, big-endian) in basis index `i`.
#[inline]
pub(crate) fn bit(i: usize, q: usize, n: usize) -> usize {
    (i >> (n - q)) & 1
}

/// Drops the bit of qubit `q` from index `i`, closing the gap.
#[inline]
pub(crate) fn remove_bit(i: usize, q: usize, n: usize) -> usize {
    let shift = n - q;
    let low = i & ((1 << shift) - 1);
    let high = i >> (shift + 1);
    (high << shift) | low
}

/// Inserts bit `b` as qubit `q` into an index over the other `n - 1` qubits.
#[inline]
fn insert_bit(i: usize, q: usize, n: usize, b: usize) -> usize {
    let shift = n - q;
    let low = i & ((1 << shift) - 1);
    let high = i >> shift;
    (high << (shift + 1)) | (b << shift) | low
}

/// A single-qubit operator, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOperator {
    pub m: [[Complex64; 2]; 2],
}

impl LocalOperator {
    pub fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[one, zero], [zero, one]])
    }

    pub fn diag(d0: Complex64, d1: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[d0, zero], [zero, d1]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        let c = |v: f64| Complex64::new(v, 0.0);
        Self::new([[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]])
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() < SINGULAR_DET_FLOOR {
            return None;
        }
        let [[a, b], [c, e]] = self.m;
        Some(Self::new([[e / d, -b / d], [-c / d, a / d]]))
    }

    /// Ratio of the larger to the smaller singular value.
    pub fn condition_number(&self) -> f64 {
        let (hi, lo) = self.singular_values();
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }

    /// Singular values `(largest, smallest)`.
    pub fn singular_values(&self) -> (f64, f64) {
        let frob2: f64 = self.m.iter().flatten().map(|z| z.norm_sqr()).sum();
        let det = self.det().norm();
        // s1^2 + s2^2 = |M|_F^2, s1 s2 = |det M|
        let disc = (frob2 * frob2 - 4.0 * det * det).max(0.0).sqrt();
        let s1 = ((frob2 + disc) / 2.0).sqrt();
        let s2 = if s1 > 0.0 { det / s1 } else { 0.0 };
        (s1, s2)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.m[r][0] * other.m[0][c] + self.m[r][1] * other.m[1][c];
            }
        }
        Self::new(out)
    }
}

/// One invertible local operator per qubit; `ops[0]` acts on qubit 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SloccOp {
    pub ops: Vec<LocalOperator>,
}

impl SloccOp {
    pub fn new(ops: Vec<LocalOperator>) -> Self {
        Self { ops }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![LocalOperator::identity(); n])
    }

    /// Identity everywhere except `op` on `qubit`.
    pub fn single(n: usize, qubit: usize, op: LocalOperator) -> Result<Self> {
        check_qubit(qubit, n)?;
        let mut ops = vec![LocalOperator::identity(); n];
        ops[qubit - 1] = op;
        Ok(Self::new(ops))
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.ops
            .iter()
            .enumerate()
            .map(|(k, op)| {
                op.inverse().ok_or(Error::SingularOperator {
                    qubit: k + 1,
                    det: op.det().norm(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn max_condition_number(&self) -> f64 {
        self.ops
            .iter()
            .map(LocalOperator::condition_number)
            .fold(1.0, f64::max)
    }
}

/// Applies `op_1 ⊗ ... ⊗ op_n` to the amplitude vector.
pub fn apply_slocc(state: &PureState, op: &SloccOp) -> Result<PureState> {
    let n = state.n;
    if op.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: op.n(),
        });
    }
    for (k, local) in op.ops.iter().enumerate() {
        let det = local.det().norm();
        // Written negated so that a NaN determinant is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(det >= SINGULAR_DET_FLOOR) {
            return Err(Error::SingularOperator { qubit: k + 1, det });
        }
    }
    let mut amps = state.amps.clone();
    for (k, local) in op.ops.iter().enumerate() {
        let mask = 1 << (n - 1 - k);
        let [[m00, m01], [m10, m11]] = local.m;
        for i in 0..amps.len() {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (a0, a1) = (amps[i], amps[j]);
            amps[i] = m00 * a0 + m01 * a1;
            amps[j] = m10 * a0 + m11 * a1;
        }
    }
    Ok(PureState { n, amps })
}

/// `|psi> = |0>|phi0> + |1>|phi1>` with respect to one distinguished qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub phi0: PureState,
    pub phi1: PureState,
    pub distinguished: usize,
}

impl Decomposition {
    /// Reassembles the original state. Exact: only moves amplitudes.
    pub fn recompose(&self) -> PureState {
        let m = self.phi0.n;
        let n = m + 1;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for r in 0..1 << m {
            amps[insert_bit(r, self.distinguished, n, 0)] = self.phi0.amps[r];
            amps[insert_bit(r, self.distinguished, n, 1)] = self.phi1.amps[r];
        }
        PureState { n, amps }
    }

    /// The residual states as the rows of a `2 x 2^(n-1)` matrix.
    pub fn pencil_matrix(&self) -> DMatrix<Complex64> {
        let cols = self.phi0.amps.len();
        DMatrix::from_fn(2, cols, |r, c| {
            if r == 0 {
                self.phi0.amps[c]
            } else {
                self.phi1.amps[c]
            }
        })
    }
}

/// Splits `state` on qubit `distinguished`. The residual states keep the
/// relative order of the remaining qubits.
pub fn decompose(state: &PureState, distinguished: usize) -> Result<Decomposition> {
    let n = state.n;
    if n < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: n,
        });
    }
    check_qubit(distinguished, n)?;
    let half = 1 << (n - 1);
    let mut phi0 = vec![Complex64::new(0.0, 0.0); half];
    let mut phi1 = vec![Complex64::new(0.0, 0.0); half];
    for (i, a) in state.amps.iter().enumerate() {
        let r = remove_bit(i, distinguished, n);
        if bit(i, distinguished, n) == 0 {
            phi0[r] = *a;
        } else {
            phi1[r] = *a;
        }
    }
    Ok(Decomposition {
        phi0: PureState { n: n - 1, amps: phi0 },
        phi1: PureState { n: n - 1, amps: phi1 },
        distinguished,
    })
}

/// Singular values of a complex matrix, largest first.
pub(crate) fn singular_values(m: DMatrix<Complex64>) -> Vec<f64> {
    let mut sv: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Tolerance for rank decisions made on behalf of a classifier running at
/// `eps`. Singular-value ratios are distorted by up to `kappa^2` per side
/// under SLOCC operators of condition number `kappa`, while rounding noise
/// sits near 1e-16, so this is set well below `eps`.
pub fn rank_tolerance(eps: f64) -> f64 {
    eps * 1e-3
}

/// Number of singular values above `eps` times the largest.
pub(crate) fn numerical_rank(sv: &[f64], eps: f64) -> usize {
    match sv.first() {
        Some(&top) if top > 0.0 => sv.iter().filter(|&&s| s > eps * top).count(),
        _ => 0,
    }
}

/// 2 if `phi0` and `phi1` are linearly independent at relative tolerance
/// `eps` (smallest over largest singular value of the stacked pair), else 1.
pub fn span_dimension(d: &Decomposition, eps: f64) -> Result<usize> {
    if d.phi0.is_zero() && d.phi1.is_zero() {
        return Err(Error::ZeroState);
    }
    let sv = singular_values(d.pencil_matrix());
    Ok(numerical_rank(&sv, eps).max(1))
}

/// A cut of the four qubits into `left | rest`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    /// Qubits (1-based) on the left side; qubit 1 is always on the left.
    left: [usize; 2],
    len: usize,
}

impl Bipartition {
    /// The seven nontrivial cuts of four qubits: four single-qubit cuts
    /// followed by the three 2|2 cuts.
    pub const ALL: [Bipartition; 7] = [
        Bipartition::single(1),
        Bipartition::single(2),
        Bipartition::single(3),
        Bipartition::single(4),
        Bipartition::pair(2),
        Bipartition::pair(3),
        Bipartition::pair(4),
    ];

    const fn single(q: usize) -> Self {
        Self {
            left: [q, 0],
            len: 1,
        }
    }

    /// The 2|2 cut grouping qubit 1 with `partner`.
    const fn pair(partner: usize) -> Self {
        Self {
            left: [1, partner],
            len: 2,
        }
    }

    pub fn left(&self) -> &[usize] {
        &self.left[..self.len]
    }

    pub fn is_single_qubit(&self) -> bool {
        self.len == 1
    }

    /// Row and column of amplitude `i` in the reshape along this cut.
    pub(crate) fn cell(&self, i: usize, n: usize) -> (usize, usize) {
        let left = self.left();
        let r = left.iter().fold(0, |acc, &q| (acc << 1) | bit(i, q, n));
        let c = (1..=n)
            .filter(|q| !left.contains(q))
            .fold(0, |acc, q| (acc << 1) | bit(i, q, n));
        (r, c)
    }

    pub(crate) fn shape(&self, n: usize) -> (usize, usize) {
        (1 << self.len, 1 << (n - self.len))
    }

    fn matrix(&self, state: &PureState) -> DMatrix<Complex64> {
        let (rows, cols) = self.shape(state.n);
        let mut m = DMatrix::zeros(rows, cols);
        for (i, a) in state.amps.iter().enumerate() {
            let (r, c) = self.cell(i, state.n);
            m[(r, c)] = *a;
        }
        m
    }
}

impl Serialize for Bipartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in self.left() {
            write!(f, "{q}")?;
        }
        write!(f, "|")?;
        for q in (1..=MAX_QUBITS).filter(|q| !self.left().contains(q)) {
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartitionRanks {
    pub ranks: Vec<(Bipartition, usize)>,
}

impl BipartitionRanks {
    pub fn rank(&self, cut: &Bipartition) -> Option<usize> {
        self.ranks.iter().find(|(c, _)| c == cut).map(|(_, r)| *r)
    }

    /// First single-qubit cut of rank 1, if any.
    pub fn separable_qubit(&self) -> Option<usize> {
        self.ranks
            .iter()
            .find(|(c, r)| c.is_single_qubit() && *r == 1)
            .map(|(c, _)| c.left()[0])
    }

    /// First 2|2 cut of rank 1, if any.
    pub fn product_pair(&self) -> Option<Bipartition> {
        self.ranks
            .iter()
            .find(|(c, r)| !c.is_single_qubit() && *r == 1)
            .map(|(c, _)| *c)
    }
}

/// Numerical Schmidt rank of a four-qubit state across each of the seven
/// nontrivial bipartitions.
pub fn bipartition_ranks(state: &PureState, eps: f64) -> Result<BipartitionRanks> {
    if state.n != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.n,
        });
    }
    if state.is_zero() {
        return Err(Error::ZeroState);
    }
    let ranks = Bipartition::ALL
        .iter()
        .map(|cut| {
            let sv = singular_values(cut.matrix(state));
            (*cut, numerical_rank(&sv, eps))
        })
        .collect();
    Ok(BipartitionRanks { ranks })
}

/// Two-qubit SLOCC class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwoQubitClass {
    Product,
    Entangled,
}

/// Entangled when `a0 a3 - a1 a2` exceeds `eps` times the largest squared
/// amplitude.
pub fn classify2(state: &PureState, eps: f64) -> Result<TwoQubitClass> {
    if state.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: state.n(),
        });
    }
    if state.is_zero() {
        return Err(Error::ZeroState);
    }
    let a = state.amps();
    let m = state.max_abs();
    Ok(if (a[0] * a[3] - a[1] * a[2]).norm() > eps * m * m {
        TwoQubitClass::Entangled
    } else {
        TwoQubitClass::Product
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_leaves_state_alone() {
        let s = PureState::from_basis(3, &[0]).unwrap();
        assert_eq!(apply_slocc(&s, &SloccOp::identity(3)).unwrap(), s);
    }

    #[test]
    fn bit_flip_on_one_qubit() {
        let s = PureState::from_basis(1, &[0]).unwrap();
        let x = LocalOperator::from_real([[0.0, 1.0], [1.0, 0.0]]);
        let out = apply_slocc(&s, &SloccOp::new(vec![x])).unwrap();
        assert_eq!(out, PureState::from_basis(1, &[1]).unwrap());
    }

    #[test]
    fn diagonal_on_last_qubit_of_ghz() {
        let ghz = PureState::from_basis(3, &[0, 7]).unwrap();
        let op = SloccOp::single(3, 3, LocalOperator::diag(c(1.0), c(2.0))).unwrap();
        let out = apply_slocc(&ghz, &op).unwrap();
        let mut expected = vec![c(0.0); 8];
        expected[0] = c(1.0);
        expected[7] = c(2.0);
        assert_eq!(out.amps(), expected.as_slice());
    }

    #[test]
    fn apply_rejects_bad_operators() {
        let s = PureState::from_basis(2, &[0]).unwrap();
        assert!(matches!(
            apply_slocc(&s, &SloccOp::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        let singular = LocalOperator::from_real([[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(
            apply_slocc(&s, &SloccOp::single(2, 2, singular).unwrap()),
            Err(Error::SingularOperator { qubit: 2, .. })
        ));
    }

    #[test]
    fn decompose_ghz4_on_first_and_third_qubit() {
        let ghz4 = PureState::from_basis(4, &[0, 15]).unwrap();
        for q in [1, 3] {
            let d = decompose(&ghz4, q).unwrap();
            assert_eq!(d.phi0, PureState::from_basis(3, &[0]).unwrap());
            assert_eq!(d.phi1, PureState::from_basis(3, &[7]).unwrap());
            assert_eq!(d.recompose(), ghz4);
        }
    }

    #[test]
    fn decompose_keeps_relative_order() {
        // |0110> split on qubit 2 leaves |010> (qubits 1, 3, 4)
        let s = PureState::from_basis(4, &[0b0110]).unwrap();
        let d = decompose(&s, 2).unwrap();
        assert!(d.phi0.is_zero());
        assert_eq!(d.phi1, PureState::from_basis(3, &[0b010]).unwrap());
    }

    #[test]
    fn decompose_rejects_bad_qubit() {
        let s = PureState::from_basis(3, &[0]).unwrap();
        assert!(matches!(decompose(&s, 0), Err(Error::InvalidQubit { .. })));
        assert!(matches!(decompose(&s, 4), Err(Error::InvalidQubit { .. })));
        let one = PureState::from_basis(1, &[0]).unwrap();
        assert!(matches!(decompose(&one, 1), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn span_dimension_examples() {
        let d = |p0: PureState, p1: PureState| Decomposition {
            phi0: p0,
            phi1: p1,
            distinguished: 1,
        };
        let e000 = PureState::from_basis(3, &[0]).unwrap();
        let e111 = PureState::from_basis(3, &[7]).unwrap();
        assert_eq!(span_dimension(&d(e000.clone(), e111), 1e-9).unwrap(), 2);
        assert_eq!(
            span_dimension(&d(e000.clone(), e000.scaled(c(2.0))), 1e-9).unwrap(),
            1
        );
        let w = PureState::from_basis(3, &[1, 2, 4]).unwrap();
        let mut near = w.clone().into_amps();
        near[0] = c(1e-15);
        let near = PureState::new(3, near).unwrap();
        assert_eq!(span_dimension(&d(w, near), 1e-9).unwrap(), 1);
        let z = PureState::zero(3).unwrap();
        assert!(matches!(
            span_dimension(&d(z.clone(), z), 1e-9),
            Err(Error::ZeroState)
        ));
    }

    #[test]
    fn bipartition_rank_examples() {
        let prod = PureState::from_basis(4, &[0]).unwrap();
        let r = bipartition_ranks(&prod, 1e-9).unwrap();
        assert!(r.ranks.iter().all(|(_, k)| *k == 1));

        let ghz4 = PureState::from_basis(4, &[0, 15]).unwrap();
        let r = bipartition_ranks(&ghz4, 1e-9).unwrap();
        assert!(r.ranks.iter().all(|(_, k)| *k == 2));

        // Bell pair on 12 times Bell pair on 34
        let bell = PureState::from_basis(2, &[0, 3]).unwrap();
        let pairs = bell.tensor(&bell).unwrap();
        let r = bipartition_ranks(&pairs, 1e-9).unwrap();
        for (cut, k) in &r.ranks {
            let expected = match cut.left() {
                [1, 2] => 1,
                [1, 3] | [1, 4] => 4,
                _ => 2,
            };
            assert_eq!(*k, expected, "cut {cut}");
        }
        assert_eq!(r.product_pair().map(|c| c.to_string()), Some("12|34".into()));
        assert_eq!(r.separable_qubit(), None);
    }

    #[test]
    fn permute_moves_qubits() {
        let s = PureState::from_basis(3, &[0b100]).unwrap();
        let p = s.permute_qubits(&[2, 3, 1]).unwrap();
        assert_eq!(p, PureState::from_basis(3, &[0b001]).unwrap());
        assert!(s.permute_qubits(&[1, 1, 2]).is_err());
    }

    #[test]
    fn local_operator_singular_values() {
        let op = LocalOperator::diag(c(3.0), c(0.5));
        let (hi, lo) = op.singular_values();
        assert!((hi - 3.0).abs() < 1e-12 && (lo - 0.5).abs() < 1e-12);
        assert!((op.condition_number() - 6.0).abs() < 1e-12);
        let inv = op.inverse().unwrap();
        let prod = op.matmul(&inv);
        assert!((prod.m[0][0] - 1.0).norm() < 1e-15 && prod.m[0][1].norm() < 1e-15);
    }

    #[test]
    fn two_qubit_classes() {
        let bell = PureState::from_basis(2, &[0, 3]).unwrap();
        let prod = PureState::from_real(2, &[1.0, 2.0, 3.0, 6.0]).unwrap();
        assert_eq!(classify2(&bell, 1e-9).unwrap(), TwoQubitClass::Entangled);
        assert_eq!(classify2(&prod, 1e-9).unwrap(), TwoQubitClass::Product);
        assert!(classify2(&PureState::zero(2).unwrap(), 1e-9).is_err());
    }
}
