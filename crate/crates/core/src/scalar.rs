//! Minimal ring interface shared by floating-point and exact amplitudes, so
//! the polynomial formulas are written once.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub trait Scalar:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_exact_zero(&self) -> bool;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// Cayley hyperdeterminant pieces `(P, Q, R)` with `I = P^2 - 4 Q R`.
pub fn ghz_parts<T: Scalar>(a: &[T]) -> (T, T, T) {
    let m = |i: usize, j: usize| a[i].clone() * a[j].clone();
    let p = m(0, 7) - m(2, 5) + m(1, 6) - m(3, 4);
    let q = m(2, 4) - m(0, 6);
    let r = m(3, 5) - m(1, 7);
    (p, q, r)
}

/// `(a0a7 - a2a5 + a1a6 - a3a4)^2 - 4(a2a4 - a0a6)(a3a5 - a1a7)`.
pub fn ghz_invariant_of<T: Scalar>(a: &[T]) -> T {
    let (p, q, r) = ghz_parts(a);
    p.clone() * p - T::from_i64(4) * q * r
}

/// The six quadratics of the W conditions, in clause order:
/// `a0a3 - a1a2, a5a6 - a4a7 | a1a4 - a0a5, a3a6 - a2a7 | a3a5 - a1a7, a2a4 - a0a6`.
pub fn clause_quantities_of<T: Scalar>(a: &[T]) -> [T; 6] {
    let m = |i: usize, j: usize| a[i].clone() * a[j].clone();
    [
        m(0, 3) - m(1, 2),
        m(5, 6) - m(4, 7),
        m(1, 4) - m(0, 5),
        m(3, 6) - m(2, 7),
        m(3, 5) - m(1, 7),
        m(2, 4) - m(0, 6),
    ]
}
