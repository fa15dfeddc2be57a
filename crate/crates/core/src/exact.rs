//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every zero test here is exact, so nothing depends on `eps`. The pencil
//! analysis never locates roots exactly: it partitions the quartic's roots
//! into classes with polynomial gcds, and computes floating-point
//! coordinates only for display.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pencil::{poly_roots, ExceptionalPoint, ProjectivePoint, SpanProfile};
use crate::qstate::{bit, remove_bit, Bipartition};
use crate::quad::{decide_profile, DegenerateKind, QuadClass, QuadTag};
use crate::scalar::{clause_quantities_of, ghz_invariant_of, Scalar};
use crate::tri::{decide, TriClass};

/// `re + i*im` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    /// `(re_num/re_den) + i (im_num/im_den)`.
    pub fn from_fracs(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    /// The exact value of a finite double-precision complex number.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(GaussRat::new(BigRational::from_float(z.re)?, BigRational::from_float(z.im)?))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: GaussRat) -> GaussRat {
        self * o.inv().expect("division by zero")
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        GaussRat::from_ints(0, 0)
    }

    fn one() -> Self {
        GaussRat::from_ints(1, 0)
    }

    fn from_i64(v: i64) -> Self {
        GaussRat::from_ints(v, 0)
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

fn gzero() -> GaussRat {
    GaussRat::from_ints(0, 0)
}

fn gone() -> GaussRat {
    GaussRat::from_ints(1, 0)
}

// ---------------------------------------------------------------------------
// Homogeneous binary forms, used to expand the invariants symbolically along
// a pencil. `c[i]` is the coefficient of `x^(d-i) y^i`.

#[derive(Clone, Debug, PartialEq)]
pub struct HForm {
    pub c: Vec<GaussRat>,
}

impl HForm {
    fn linear(p: GaussRat, q: GaussRat) -> Self {
        HForm { c: vec![p, q] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(GaussRat::is_zero)
    }

    fn zip(self, o: HForm, f: impl Fn(GaussRat, GaussRat) -> GaussRat) -> HForm {
        debug_assert_eq!(self.c.len(), o.c.len(), "adding forms of different degree");
        let n = self.c.len().max(o.c.len());
        let mut a = self.c;
        let mut b = o.c;
        a.resize(n, gzero());
        b.resize(n, gzero());
        HForm {
            c: a.into_iter().zip(b).map(|(p, q)| f(p, q)).collect(),
        }
    }
}

impl Add for HForm {
    type Output = HForm;
    fn add(self, o: HForm) -> HForm {
        self.zip(o, |p, q| p + q)
    }
}

impl Sub for HForm {
    type Output = HForm;
    fn sub(self, o: HForm) -> HForm {
        self.zip(o, |p, q| p - q)
    }
}

impl Mul for HForm {
    type Output = HForm;
    fn mul(self, o: HForm) -> HForm {
        let mut c = vec![gzero(); self.c.len() + o.c.len() - 1];
        for (i, p) in self.c.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in o.c.iter().enumerate() {
                let t = c[i + j].clone() + p.clone() * q.clone();
                c[i + j] = t;
            }
        }
        HForm { c }
    }
}

impl Neg for HForm {
    type Output = HForm;
    fn neg(self) -> HForm {
        HForm {
            c: self.c.into_iter().map(|p| -p).collect(),
        }
    }
}

impl Scalar for HForm {
    fn zero() -> Self {
        HForm { c: vec![gzero()] }
    }

    fn one() -> Self {
        HForm { c: vec![gone()] }
    }

    fn from_i64(v: i64) -> Self {
        HForm {
            c: vec![GaussRat::from_ints(v, 0)],
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

fn pencil_forms(phi0: &[GaussRat], phi1: &[GaussRat]) -> Vec<HForm> {
    phi0.iter()
        .zip(phi1)
        .map(|(p, q)| HForm::linear(p.clone(), q.clone()))
        .collect()
}

/// Coefficients of the GHZ quartic of `x*phi0 + y*phi1`, expanded exactly.
pub fn exact_quartic(phi0: &[GaussRat], phi1: &[GaussRat]) -> Result<[GaussRat; 5]> {
    check8(phi0)?;
    check8(phi1)?;
    let f = ghz_invariant_of(&pencil_forms(phi0, phi1));
    let mut out: [GaussRat; 5] = std::array::from_fn(|_| gzero());
    for (slot, c) in out.iter_mut().zip(f.c) {
        *slot = c;
    }
    Ok(out)
}

/// The six clause quadratics of the pencil, exactly.
pub fn exact_clause_forms(phi0: &[GaussRat], phi1: &[GaussRat]) -> Result<[HForm; 6]> {
    check8(phi0)?;
    check8(phi1)?;
    Ok(clause_quantities_of(&pencil_forms(phi0, phi1)))
}

fn check8(a: &[GaussRat]) -> Result<()> {
    if a.len() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: a.len(),
        });
    }
    Ok(())
}

/// Three-qubit class with exact zero tests.
pub fn classify3_exact(a: &[GaussRat]) -> Result<TriClass> {
    check8(a)?;
    if a.iter().all(GaussRat::is_zero) {
        return Ok(TriClass::Zero);
    }
    let q = clause_quantities_of(a);
    let clauses = [0, 1, 2].map(|k| !q[2 * k].is_zero() || !q[2 * k + 1].is_zero());
    decide(!ghz_invariant_of(a).is_zero(), clauses)
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q(i), lowest degree first, no trailing zeros.

#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<GaussRat>);

impl Poly {
    fn new(mut c: Vec<GaussRat>) -> Poly {
        while c.last().is_some_and(GaussRat::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    fn one() -> Poly {
        Poly(vec![gone()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn monic(self) -> Poly {
        match self.0.last() {
            None => self,
            Some(lead) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                Poly(self.0.into_iter().map(|c| c * inv.clone()).collect())
            }
        }
    }

    fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * GaussRat::from_ints(i as i64, 0))
                .collect(),
        )
    }

    fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(gzero);
                    let b = o.0.get(i).cloned().unwrap_or_else(gzero);
                    a - b
                })
                .collect(),
        )
    }

    /// Quotient and remainder; panics if `d` is zero.
    fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.deg();
        if r.len() < d.0.len() {
            return (Poly(Vec::new()), self.clone());
        }
        let inv = d.0[dd].inv().expect("nonzero leading coefficient");
        let mut q = vec![gzero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd].clone() * inv.clone();
            if !coef.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    let t = r[k + j].clone() - coef.clone() * dc.clone();
                    r[k + j] = t;
                }
            }
            q[k] = coef;
        }
        (Poly::new(q), Poly::new(r))
    }

    fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn to_complex_high_first(&self) -> Vec<Complex64> {
        self.0.iter().rev().map(GaussRat::to_complex).collect()
    }
}

/// Root divisor of a nonzero binary form: multiplicity of `(1:0)` and the
/// monic affine part in `x/y`.
#[derive(Clone, Debug, PartialEq)]
struct Divisor {
    inf: usize,
    aff: Poly,
}

impl Divisor {
    /// `None` for the zero form, whose zero set is the whole line.
    fn of_form(c: &[GaussRat]) -> Option<Divisor> {
        let m = c.iter().take_while(|z| z.is_zero()).count();
        if m == c.len() {
            return None;
        }
        let d = c.len() - 1;
        let aff: Vec<GaussRat> = (0..=d - m).map(|k| c[d - k].clone()).collect();
        Some(Divisor {
            inf: m,
            aff: Poly::new(aff).monic(),
        })
    }

    fn unit() -> Divisor {
        Divisor {
            inf: 0,
            aff: Poly::one(),
        }
    }

    fn gcd(&self, o: &Divisor) -> Divisor {
        Divisor {
            inf: self.inf.min(o.inf),
            aff: self.aff.gcd(&o.aff),
        }
    }

    fn div(&self, o: &Divisor) -> Divisor {
        Divisor {
            inf: self.inf - o.inf,
            aff: self.aff.exact_div(&o.aff),
        }
    }

    fn degree(&self) -> usize {
        self.inf + self.aff.deg()
    }

    /// Same points, each once.
    fn squarefree(&self) -> Divisor {
        let g = self.aff.gcd(&self.aff.derivative());
        Divisor {
            inf: self.inf.min(1),
            aff: self.aff.exact_div(&g).monic(),
        }
    }

    /// Squarefree parts by multiplicity: entry `m - 1` holds the points of
    /// multiplicity exactly `m`.
    fn by_multiplicity(&self) -> Vec<Divisor> {
        let mut levels: Vec<Divisor> = Vec::new();
        let mut put = |m: usize, d: Divisor| {
            while levels.len() < m {
                levels.push(Divisor::unit());
            }
            let slot = &mut levels[m - 1];
            slot.inf += d.inf;
            if d.aff.deg() > 0 {
                let prod = mul(&slot.aff, &d.aff);
                slot.aff = prod;
            }
        };
        if self.inf > 0 {
            put(self.inf, Divisor { inf: 1, aff: Poly::one() });
        }
        // Yun's algorithm on the affine part.
        let f = &self.aff;
        if f.deg() > 0 {
            let fp = f.derivative();
            let a0 = f.gcd(&fp);
            let mut b = f.exact_div(&a0);
            let c = fp.exact_div(&a0);
            let mut d = c.sub(&b.derivative());
            let mut i = 1;
            while b.deg() > 0 {
                let a = b.gcd(&d);
                let b_next = b.exact_div(&a);
                let c_next = d.exact_div(&a);
                d = c_next.sub(&b_next.derivative());
                if a.deg() > 0 {
                    put(i, Divisor { inf: 0, aff: a });
                }
                b = b_next;
                i += 1;
            }
        }
        levels
    }

    /// Floating-point coordinates of the (assumed simple) points.
    fn points(&self) -> Result<Vec<(Complex64, Complex64)>> {
        let mut out = Vec::new();
        if self.inf > 0 {
            out.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
        }
        if self.aff.deg() > 0 {
            for r in poly_roots(&self.aff.to_complex_high_first())? {
                out.push((r, Complex64::new(1.0, 0.0)));
            }
        }
        Ok(out)
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut c = vec![gzero(); a.0.len() + b.0.len() - 1];
    for (i, p) in a.0.iter().enumerate() {
        for (j, q) in b.0.iter().enumerate() {
            let t = c[i + j].clone() + p.clone() * q.clone();
            c[i + j] = t;
        }
    }
    Poly::new(c)
}

/// gcd where `None` stands for the whole line.
fn meet(a: &Option<Divisor>, b: &Option<Divisor>) -> Option<Divisor> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(p), Some(q)) => Some(p.gcd(q)),
    }
}

fn exact_rank(mut m: Vec<Vec<GaussRat>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * inv.clone();
            for c in col..cols {
                let t = m[r][c].clone() - f.clone() * m[rank][c].clone();
                m[r][c] = t;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact pencil profile. Classes are assigned to roots of the quartic by
/// intersecting its root divisor with the common zeros of the clause pairs.
pub fn analyze_span_exact(phi0: &[GaussRat], phi1: &[GaussRat]) -> Result<SpanProfile> {
    check8(phi0)?;
    check8(phi1)?;
    if phi0.iter().all(GaussRat::is_zero) || phi1.iter().all(GaussRat::is_zero) {
        return Err(Error::ZeroState);
    }
    if exact_rank(vec![phi0.to_vec(), phi1.to_vec()]) < 2 {
        return Err(Error::CollinearSpan);
    }
    let quartic = exact_quartic(phi0, phi1)?;
    let g = exact_clause_forms(phi0, phi1)?;
    // Common zeros of each clause pair: where that clause is false.
    let z: Vec<Option<Divisor>> = (0..3)
        .map(|k| meet(&Divisor::of_form(&g[2 * k].c), &Divisor::of_form(&g[2 * k + 1].c)))
        .collect();
    let all_false = meet(&meet(&z[0], &z[1]), &z[2]);
    let others_false = |k: usize| {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        meet(&z[i], &z[j])
    };

    let mut exceptional = Vec::new();
    let mut push = |d: &Divisor, class: TriClass, mult: usize| -> Result<()> {
        for (x, y) in d.points()? {
            exceptional.push(ExceptionalPoint {
                point: ProjectivePoint::new(x, y, mult),
                class,
            });
        }
        Ok(())
    };

    let f = Divisor::of_form(&quartic);
    let (identically_zero, generic) = match &f {
        Some(f) => {
            for (i, level) in f.by_multiplicity().iter().enumerate() {
                let mult = i + 1;
                let mut rest = level.clone();
                let mut take = |zeros: &Option<Divisor>, class: TriClass, rest: &mut Divisor| {
                    let hit = match zeros {
                        Some(s) => rest.gcd(s),
                        None => rest.clone(),
                    };
                    *rest = rest.div(&hit);
                    push(&hit, class, mult)
                };
                take(&all_false, TriClass::Sep000, &mut rest)?;
                for k in 0..3 {
                    take(&others_false(k), TriClass::Bisep(k as u8 + 1), &mut rest)?;
                }
                push(&rest, TriClass::W, mult)?;
            }
            (false, TriClass::Ghz)
        }
        None => {
            let generic = decide(false, [z[0].is_some(), z[1].is_some(), z[2].is_some()])?;
            let sep = all_false.as_ref().map(Divisor::squarefree);
            if let Some(s) = &sep {
                if generic > TriClass::Sep000 {
                    push(s, TriClass::Sep000, 1)?;
                }
            }
            for k in 0..3 {
                if generic <= TriClass::Bisep(3) {
                    break;
                }
                if let Some(b) = others_false(k) {
                    let b = b.squarefree();
                    let rest = match &sep {
                        Some(s) => b.div(&b.gcd(s)),
                        None => b,
                    };
                    push(&rest, TriClass::Bisep(k as u8 + 1), 1)?;
                }
            }
            (true, generic)
        }
    };
    debug_assert!(f.as_ref().is_none_or(|f| f.degree() == 4));
    Ok(SpanProfile::new(identically_zero, generic, exceptional))
}

pub fn decompose_exact(amps: &[GaussRat], q: usize) -> (Vec<GaussRat>, Vec<GaussRat>) {
    let n = 4;
    let mut phi0 = vec![gzero(); 8];
    let mut phi1 = vec![gzero(); 8];
    for (i, a) in amps.iter().enumerate() {
        let r = remove_bit(i, q, n);
        if bit(i, q, n) == 0 {
            phi0[r] = a.clone();
        } else {
            phi1[r] = a.clone();
        }
    }
    (phi0, phi1)
}

fn screen_exact(amps: &[GaussRat]) -> Result<Option<DegenerateKind>> {
    let ranks: Vec<(Bipartition, usize)> = Bipartition::ALL
        .iter()
        .map(|cut| {
            let (rows, cols) = cut.shape(4);
            let mut m = vec![vec![gzero(); cols]; rows];
            for (i, a) in amps.iter().enumerate() {
                let (r, c) = cut.cell(i, 4);
                m[r][c] = a.clone();
            }
            (*cut, exact_rank(m))
        })
        .collect();
    if let Some((cut, _)) = ranks.iter().find(|(c, r)| c.is_single_qubit() && *r == 1) {
        let q = cut.left()[0];
        let (phi0, phi1) = decompose_exact(amps, q);
        let rest = if phi0.iter().any(|a| !a.is_zero()) { phi0 } else { phi1 };
        return Ok(Some(DegenerateKind::QubitSeparable {
            qubit: q,
            rest: classify3_exact(&rest)?,
        }));
    }
    Ok(ranks
        .iter()
        .find(|(c, r)| !c.is_single_qubit() && *r == 1)
        .map(|(cut, _)| DegenerateKind::PairProduct { cut: *cut }))
}

/// Four-qubit superclass with exact zero tests throughout.
pub fn classify4_exact(amps: &[GaussRat], distinguished: usize) -> Result<QuadClass> {
    if amps.len() != 16 {
        return Err(Error::DimensionMismatch {
            expected: 16,
            found: amps.len(),
        });
    }
    crate::qstate::check_qubit(distinguished, 4)?;
    if amps.iter().all(GaussRat::is_zero) {
        return Err(Error::ZeroState);
    }
    if let Some(kind) = screen_exact(amps)? {
        return Ok(QuadClass {
            tag: QuadTag::Degenerate(kind),
            distinguished,
            profile: None,
        });
    }
    let (phi0, phi1) = decompose_exact(amps, distinguished);
    let profile = analyze_span_exact(&phi0, &phi1)?;
    Ok(QuadClass {
        tag: decide_profile(&profile)?,
        distinguished,
        profile: Some(profile),
    })
}
