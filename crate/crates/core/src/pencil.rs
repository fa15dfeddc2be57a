//! The two-dimensional pencil `x*phi0 + y*phi1` of three-qubit vectors.
//!
//! Everything here works with homogeneous coordinates `(x:y)`. Internally
//! the pencil is re-expressed in an orthonormal basis of the span, rotated
//! so that the GHZ quartic has a large leading coefficient; roots are then
//! finite in the affine chart `(s:1)` and distances between pencil points
//! measure distances between states.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::PureState;
use crate::scalar::clause_quantities_of;
use crate::tri::{classify_amplitudes, ghz_invariant, ghz_scales, ghz_value_nonzero, GhzScales, TriClass};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

fn unit_root(n: usize, k: usize) -> C {
    C::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// Coefficients `c_0..c_d` of `sum c_i x^(d-i) y^i` from its values at the
/// nodes `(w^j, 1)`, `w = exp(2 pi i / (d+1))`.
fn interpolate(values: &[C]) -> Vec<C> {
    let n = values.len();
    let mut c = vec![ZERO; n];
    for (k, slot) in (0..n).map(|k| (k, n - 1 - k)) {
        let s: C = values
            .iter()
            .enumerate()
            .map(|(j, v)| v * unit_root(n, (n * n - j * k) % n))
            .sum();
        c[slot] = s / n as f64;
    }
    c
}

fn eval_form(c: &[C], x: C, y: C) -> C {
    // Homogeneous Horner in both variables.
    let d = c.len() - 1;
    let mut acc = ZERO;
    let mut ypow = ONE;
    let mut terms = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        terms.push(ypow);
        ypow *= y;
    }
    let mut xpow = ONE;
    for i in (0..=d).rev() {
        acc += c[i] * xpow * terms[i];
        xpow *= x;
    }
    acc
}

fn combine(x: C, a: &[C], y: C, b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(p, q)| x * p + y * q).collect()
}

fn norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A point of the complex projective line, stored as a unit vector with the
/// larger coordinate made real and positive.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProjectivePoint {
    #[serde(serialize_with = "crate::io::ser_complex")]
    pub x: C,
    #[serde(serialize_with = "crate::io::ser_complex")]
    pub y: C,
    pub multiplicity: usize,
}

impl ProjectivePoint {
    /// Panics on `(0:0)`.
    pub fn new(x: C, y: C, multiplicity: usize) -> Self {
        let n = (x.norm_sqr() + y.norm_sqr()).sqrt();
        assert!(n > 0.0, "(0:0) is not a projective point");
        let lead = if x.norm() >= y.norm() { x } else { y };
        let phase = lead.conj() / lead.norm();
        ProjectivePoint {
            x: x * phase / n,
            y: y * phase / n,
            multiplicity,
        }
    }

    pub fn infinity() -> Self {
        Self::new(ONE, ZERO, 1)
    }

    /// Sine of the angle between the two lines through the origin.
    pub fn chordal_distance(&self, other: &Self) -> f64 {
        (self.x * other.y - self.y * other.x).norm()
    }

    /// `x / y`, or `None` at the point at infinity.
    pub fn affine(&self) -> Option<C> {
        (self.y.norm() > 0.0).then(|| self.x / self.y)
    }

    pub fn with_multiplicity(mut self, m: usize) -> Self {
        self.multiplicity = m;
        self
    }
}

/// Equality of the underlying points up to rounding; multiplicity ignored.
impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.chordal_distance(other) <= 1e-12
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct NodeSample {
    value: C,
    scales: GhzScales,
}

/// Binary quartic `c0 x^4 + c1 x^3 y + c2 x^2 y^2 + c3 x y^3 + c4 y^4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuarticForm {
    #[serde(serialize_with = "crate::io::ser_complex_slice")]
    pub c: [C; 5],
    #[serde(skip)]
    nodes: Option<[NodeSample; 5]>,
}

impl QuarticForm {
    /// A bare form. Only exact zeros count as vanishing for it.
    pub fn from_coeffs(c: [C; 5]) -> Self {
        QuarticForm { c, nodes: None }
    }

    pub fn eval(&self, x: C, y: C) -> C {
        eval_form(&self.c, x, y)
    }

    /// For forms built from a pencil, true when no interpolation node is a
    /// GHZ state at tolerance `eps`: a nonzero quartic vanishes at no more
    /// than four of the five nodes.
    pub fn is_identically_zero(&self, eps: f64) -> bool {
        match &self.nodes {
            Some(nodes) => nodes
                .iter()
                .all(|n| !ghz_value_nonzero(n.value, n.scales, eps)),
            None => self.c.iter().all(|z| z.re == 0.0 && z.im == 0.0),
        }
    }
}

fn sample_quartic(b0: &[C], b1: &[C]) -> (Vec<C>, [NodeSample; 5]) {
    let mut nodes = [NodeSample {
        value: ZERO,
        scales: GhzScales { gauge: 0.0, noise: 0.0 },
    }; 5];
    for (j, node) in nodes.iter_mut().enumerate() {
        let e = combine(unit_root(5, j), b0, ONE, b1);
        *node = NodeSample {
            value: ghz_invariant(&e),
            scales: ghz_scales(&e),
        };
    }
    let values: Vec<C> = nodes.iter().map(|n| n.value).collect();
    (interpolate(&values), nodes)
}

fn require_three_qubits(s: &PureState) -> Result<()> {
    if s.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: s.n(),
        });
    }
    if s.is_zero() {
        return Err(Error::ZeroState);
    }
    Ok(())
}

/// The GHZ invariant of `x*phi0 + y*phi1` as a binary quartic. The two
/// inputs are normalised before sampling so that neither dominates the
/// interpolation; the coefficients are rescaled afterwards.
pub fn quartic(phi0: &PureState, phi1: &PureState) -> Result<QuarticForm> {
    require_three_qubits(phi0)?;
    require_three_qubits(phi1)?;
    let (s0, s1) = (phi0.norm(), phi1.norm());
    let u0: Vec<C> = phi0.amps().iter().map(|a| a / s0).collect();
    let u1: Vec<C> = phi1.amps().iter().map(|a| a / s1).collect();
    let (c, nodes) = sample_quartic(&u0, &u1);
    let mut out = [ZERO; 5];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = c[i] * s0.powi(4 - i as i32) * s1.powi(i as i32);
    }
    Ok(QuarticForm {
        c: out,
        nodes: Some(nodes),
    })
}

/// Binary quadratic `c0 x^2 + c1 x y + c2 y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinaryQuadratic {
    #[serde(serialize_with = "crate::io::ser_complex_slice")]
    pub c: [C; 3],
}

impl BinaryQuadratic {
    pub fn eval(&self, x: C, y: C) -> C {
        eval_form(&self.c, x, y)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Candidate roots as homogeneous pairs: both roots from the stable
    /// quadratic formula, plus the vertex, which is where a nearly double
    /// root really sits.
    fn candidate_roots(&self) -> Vec<(C, C)> {
        let [a, b, c] = self.c;
        if self.max_abs() == 0.0 {
            return Vec::new();
        }
        let disc = (b * b - a * c * 4.0).sqrt();
        let q = if (b + disc).norm() >= (b - disc).norm() {
            -(b + disc) / 2.0
        } else {
            -(b - disc) / 2.0
        };
        let mut out = Vec::with_capacity(5);
        if q.norm() > 0.0 {
            out.push((q, a));
            out.push((c, q));
        } else {
            out.push((ONE, ZERO));
            out.push((ZERO, ONE));
        }
        out.push((-b, a * 2.0));
        out.push((c * 2.0, -b));
        out.retain(|(x, y)| x.norm() + y.norm() > 0.0);
        out
    }
}

/// The six clause quantities restricted to the pencil, in clause pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClauseQuadratics {
    pub pairs: [[BinaryQuadratic; 2]; 3],
}

impl ClauseQuadratics {
    fn from_basis(b0: &[C], b1: &[C]) -> Self {
        let mut values = [[ZERO; 3]; 6];
        for j in 0..3 {
            let e = combine(unit_root(3, j), b0, ONE, b1);
            for (f, v) in clause_quantities_of(&e).into_iter().enumerate() {
                values[f][j] = v;
            }
        }
        let form = |f: usize| {
            let c = interpolate(&values[f]);
            BinaryQuadratic {
                c: [c[0], c[1], c[2]],
            }
        };
        ClauseQuadratics {
            pairs: [
                [form(0), form(1)],
                [form(2), form(3)],
                [form(4), form(5)],
            ],
        }
    }

    pub fn forms(&self) -> impl Iterator<Item = &BinaryQuadratic> {
        self.pairs.iter().flatten()
    }
}

/// Clause quadratics of `x*phi0 + y*phi1` by three-point interpolation.
pub fn clause_quadratics(phi0: &PureState, phi1: &PureState) -> Result<ClauseQuadratics> {
    require_three_qubits(phi0)?;
    require_three_qubits(phi1)?;
    Ok(ClauseQuadratics::from_basis(phi0.amps(), phi1.amps()))
}

// ---------------------------------------------------------------------------
// Univariate machinery on the affine chart. Polynomials are stored highest
// degree first.

/// Taylor coefficients `p^(j)(c) / j!` for `j = 0..=deg`.
fn taylor(p: &[C], c: C) -> Vec<C> {
    let mut work = p.to_vec();
    let n = work.len();
    let mut out = Vec::with_capacity(n);
    for len in (1..=n).rev() {
        for i in 1..len {
            let prev = work[i - 1];
            work[i] += prev * c;
        }
        out.push(work[len - 1]);
    }
    out
}

/// Taylor coefficients of a polynomial whose coefficients all have the
/// largest modulus of `p`, so that noise relative to the coefficient
/// vector is measured the same way wherever `c` sits.
fn taylor_abs(p: &[C], c: C) -> Vec<f64> {
    let top = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pa = vec![C::new(top, 0.0); p.len()];
    taylor(&pa, C::new(c.norm(), 0.0)).iter().map(|z| z.re).collect()
}

/// Number of leading Taylor coefficients at `c` that are indistinguishable
/// from zero relative to the rounding-scale bound.
fn root_multiplicity(p: &[C], c: C, tol: f64, cap: usize) -> usize {
    let t = taylor(p, c);
    let ta = taylor_abs(p, c);
    t.iter()
        .zip(&ta)
        .take(cap)
        .take_while(|(v, s)| v.norm() <= tol * **s)
        .count()
}

fn deflate(p: &[C], r: C) -> Vec<C> {
    let mut out = Vec::with_capacity(p.len() - 1);
    let mut acc = ZERO;
    for &c in &p[..p.len() - 1] {
        acc = acc * r + c;
        out.push(acc);
    }
    out
}

fn horner(p: &[C], t: C) -> C {
    p.iter().fold(ZERO, |acc, &c| acc * t + c)
}

/// Roots of a polynomial with nonzero leading coefficient: the eigenvalues
/// of its companion matrix, unpolished.
pub(crate) fn poly_roots(p: &[C]) -> Result<Vec<C>> {
    let d = p.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = p[0];
    let mut m = DMatrix::<C>::zeros(d, d);
    for j in 0..d {
        m[(0, j)] = -p[j + 1] / lead;
    }
    for i in 1..d {
        m[(i, i - 1)] = ONE;
    }
    let schur = m
        .try_schur(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::InternalContradiction("companion eigenvalues did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..d).map(|i| t[(i, i)]).collect())
}

fn derivative(p: &[C]) -> Vec<C> {
    let d = p.len() - 1;
    p[..d].iter().enumerate().map(|(i, &c)| c * (d - i) as f64).collect()
}

/// Newton steps on `p`, kept only while the residual shrinks.
fn polish(p: &[C], mut r: C) -> C {
    if p.len() < 2 {
        return r;
    }
    let dp = derivative(p);
    let mut res = horner(p, r).norm();
    for _ in 0..3 {
        let slope = horner(&dp, r);
        if slope.norm() == 0.0 {
            break;
        }
        let cand = r - horner(p, r) / slope;
        let cres = horner(p, cand).norm();
        if cres < res {
            r = cand;
            res = cres;
        } else {
            break;
        }
    }
    r
}

/// A `k`-fold root is a simple root of the `(k-1)`-th derivative.
fn polish_multiple(p: &[C], r: C, k: usize) -> C {
    let mut q = p.to_vec();
    for _ in 1..k {
        q = derivative(&q);
    }
    polish(&q, r)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A merged group of computed roots: its centre, its size and the
/// individually polished members.
struct RootCluster {
    center: C,
    multiplicity: usize,
    members: Vec<C>,
}

/// Groups computed roots that are the split images of one multiple root.
/// A group of `k` roots is merged at its centroid when the first `k` Taylor
/// coefficients there vanish to relative tolerance `tol`, which by the
/// usual perturbation bound merges `k`-fold clusters of radius about
/// `tol^(1/k)`.
fn cluster_roots(p: &[C], roots: Vec<C>, tol: f64) -> Vec<RootCluster> {
    let mut rest = roots;
    let mut out = Vec::new();
    'outer: loop {
        for k in (2..=rest.len()).rev() {
            for sub in subsets(rest.len(), k) {
                let c: C = sub.iter().map(|&i| rest[i]).sum::<C>() / k as f64;
                let radius = 10.0 * tol.powf(1.0 / k as f64) * (1.0 + c.norm());
                if sub.iter().any(|&i| (rest[i] - c).norm() > radius) {
                    continue;
                }
                if root_multiplicity(p, c, tol, k) == k {
                    out.push(RootCluster {
                        center: polish_multiple(p, c, k),
                        multiplicity: k,
                        members: sub.iter().map(|&i| polish(p, rest[i])).collect(),
                    });
                    for &i in sub.iter().rev() {
                        rest.remove(i);
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    out.extend(rest.into_iter().map(|r| {
        let r = polish(p, r);
        RootCluster {
            center: r,
            multiplicity: 1,
            members: vec![r],
        }
    }));
    out
}

/// Fixed probe directions on the projective line, quasi-uniform on the
/// Riemann sphere.
fn probe_directions() -> Vec<(C, C)> {
    let n = 24;
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let theta = z.acos() / 2.0;
            let phi = golden * i as f64;
            (C::new(theta.cos(), 0.0), C::from_polar(theta.sin(), phi))
        })
        .collect()
}

/// Unitary change of variables `(x, y) = s*(a, b) + t*(-conj b, conj a)`
/// with `|F(a, b)|` largest among the probe directions, so that the form in
/// `(s, t)` has no root at `t = 0`.
fn best_rotation(eval: impl Fn(C, C) -> C) -> (C, C) {
    probe_directions()
        .into_iter()
        .map(|(a, b)| (eval(a, b).norm(), (a, b)))
        .fold((-1.0, (ONE, ZERO)), |best, cur| if cur.0 > best.0 { cur } else { best })
        .1
}

/// All projective roots of a quartic with multiplicities summing to four.
/// Roots whose Taylor coefficients vanish to `eps` relative to rounding
/// scale are merged, i.e. clusters of chordal radius about `eps^(1/2)` for
/// double roots.
pub fn quartic_roots(q: &QuarticForm, eps: f64) -> Result<Vec<ProjectivePoint>> {
    if q.is_identically_zero(eps) || q.c.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::IdenticallyZero);
    }
    let (a, b) = best_rotation(|x, y| q.eval(x, y));
    let (ra, rb) = (-b.conj(), a.conj());
    let values: Vec<C> = (0..5)
        .map(|j| {
            let s = unit_root(5, j);
            q.eval(s * a + ra, s * b + rb)
        })
        .collect();
    let g = interpolate(&values);
    let roots = poly_roots(&g)?;
    Ok(cluster_roots(&g, roots, eps)
        .into_iter()
        .map(|c| ProjectivePoint::new(c.center * a + ra, c.center * b + rb, c.multiplicity))
        .collect())
}

// ---------------------------------------------------------------------------
// Span analysis.

/// Orthonormal basis `b0, b1` of the span with the `(x, y)` coordinates of
/// each basis vector in terms of the original `phi0, phi1`.
struct Frame {
    b0: Vec<C>,
    b1: Vec<C>,
    xy0: (C, C),
    xy1: (C, C),
}

impl Frame {
    fn new(phi0: &[C], phi1: &[C]) -> Result<Frame> {
        let n0 = norm(phi0);
        let e0: Vec<C> = phi0.iter().map(|a| a / n0).collect();
        let mut w = phi1.to_vec();
        let mut coef = ZERO;
        // Two Gram-Schmidt passes for orthogonality to working precision.
        for _ in 0..2 {
            let dot: C = e0.iter().zip(&w).map(|(p, q)| p.conj() * q).sum();
            coef += dot;
            for (wi, ei) in w.iter_mut().zip(&e0) {
                *wi -= dot * ei;
            }
        }
        let nw = norm(&w);
        if nw == 0.0 {
            return Err(Error::CollinearSpan);
        }
        let e1: Vec<C> = w.iter().map(|a| a / nw).collect();
        Ok(Frame {
            b0: e0,
            b1: e1,
            xy0: (C::new(1.0 / n0, 0.0), ZERO),
            xy1: (-coef / (n0 * nw), C::new(1.0 / nw, 0.0)),
        })
    }

    fn rotated(&self, a: C, b: C) -> Frame {
        let (ra, rb) = (-b.conj(), a.conj());
        Frame {
            b0: combine(a, &self.b0, b, &self.b1),
            b1: combine(ra, &self.b0, rb, &self.b1),
            xy0: (a * self.xy0.0 + b * self.xy1.0, a * self.xy0.1 + b * self.xy1.1),
            xy1: (ra * self.xy0.0 + rb * self.xy1.0, ra * self.xy0.1 + rb * self.xy1.1),
        }
    }

    fn element(&self, s: C, t: C) -> Vec<C> {
        combine(s, &self.b0, t, &self.b1)
    }

    fn to_point(&self, s: C, t: C, multiplicity: usize) -> ProjectivePoint {
        ProjectivePoint::new(
            s * self.xy0.0 + t * self.xy1.0,
            s * self.xy0.1 + t * self.xy1.1,
            multiplicity,
        )
    }
}

/// A listed pencil point below the generic type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExceptionalPoint {
    pub point: ProjectivePoint,
    pub class: TriClass,
}

/// Summary of the entanglement types realised on a pencil.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanProfile {
    pub quartic_identically_zero: bool,
    pub generic_type: TriClass,
    pub exceptional: Vec<ExceptionalPoint>,
    pub contains_000: bool,
    pub bisep_cuts: Vec<u8>,
    pub w_points: usize,
    pub ghz_generic: bool,
}

impl SpanProfile {
    pub fn new(quartic_identically_zero: bool, generic_type: TriClass, mut exceptional: Vec<ExceptionalPoint>) -> Self {
        exceptional.sort_by_key(|p| p.class);
        let mut bisep_cuts: Vec<u8> = exceptional.iter().filter_map(|e| e.class.cut()).collect();
        bisep_cuts.sort_unstable();
        SpanProfile {
            quartic_identically_zero,
            generic_type,
            contains_000: exceptional.iter().any(|e| e.class == TriClass::Sep000),
            w_points: exceptional.iter().filter(|e| e.class == TriClass::W).count(),
            ghz_generic: generic_type == TriClass::Ghz,
            bisep_cuts,
            exceptional,
        }
    }

    /// Exceptional classes in sorted order, for comparing profiles.
    pub fn class_multiset(&self) -> Vec<TriClass> {
        let mut v: Vec<TriClass> = self.exceptional.iter().map(|e| e.class).collect();
        v.sort();
        v
    }

    pub fn sep000_count(&self) -> usize {
        self.exceptional.iter().filter(|e| e.class == TriClass::Sep000).count()
    }
}

struct Candidate {
    s: C,
    t: C,
    class: TriClass,
    multiplicity: usize,
    score: f64,
}

/// How far the clauses that should vanish at `a` are from vanishing.
fn residual_score(a: &[C], eps: f64) -> f64 {
    let r = crate::tri::w_clauses(a, eps);
    let m = a.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    let off: f64 = (0..3)
        .filter(|&k| !r.clause_truth[k])
        .map(|k| r.quantities[2 * k].norm() + r.quantities[2 * k + 1].norm())
        .sum();
    if m > 0.0 { off / m } else { 0.0 }
}

fn chordal(a: (C, C), b: (C, C)) -> f64 {
    let na = (a.0.norm_sqr() + a.1.norm_sqr()).sqrt();
    let nb = (b.0.norm_sqr() + b.1.norm_sqr()).sqrt();
    (a.0 * b.1 - a.1 * b.0).norm() / (na * nb)
}

/// Merges candidates that are closer than `radius`, or that share a class
/// with the pencil point halfway between them. Near a point where the
/// clause forms vanish to high order a whole neighbourhood tests as that
/// class, and scattered root estimates inside it are one point. The lowest
/// class wins, ties go to the smallest clause residual, and multiplicities
/// add up.
fn merge_candidates(cands: Vec<Candidate>, radius: f64, frame: &Frame, eps: f64) -> Vec<Candidate> {
    let same_region = |o: &Candidate, c: &Candidate| {
        if chordal((o.s, o.t), (c.s, c.t)) <= radius {
            return true;
        }
        if o.class != c.class {
            return false;
        }
        let (s, t) = midpoint((o.s, o.t), (c.s, c.t));
        classify_amplitudes(&frame.element(s, t), eps).is_ok_and(|m| m == c.class)
    };
    let mut out: Vec<Candidate> = Vec::new();
    for c in cands {
        match out.iter_mut().find(|o| same_region(o, &c)) {
            Some(o) => {
                o.multiplicity += c.multiplicity;
                if c.class < o.class || (c.class == o.class && c.score < o.score) {
                    o.class = c.class;
                    o.score = c.score;
                    o.s = c.s;
                    o.t = c.t;
                }
            }
            None => out.push(c),
        }
    }
    out
}

/// Point halfway along the shorter arc between two projective points.
fn midpoint(a: (C, C), b: (C, C)) -> (C, C) {
    let na = (a.0.norm_sqr() + a.1.norm_sqr()).sqrt();
    let nb = (b.0.norm_sqr() + b.1.norm_sqr()).sqrt();
    let inner = a.0.conj() * b.0 + a.1.conj() * b.1;
    let phase = if inner.norm() > 0.0 { inner.conj() / inner.norm() } else { ONE };
    (a.0 / na + b.0 * phase / nb, a.1 / na + b.1 * phase / nb)
}

const PROBE_SEEDS: [u64; 2] = [0x5EED_0001, 0x5EED_0002];

fn probe_point(seed: u64) -> (C, C) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = || C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    (g(), g())
}

/// Generic type, exceptional points and their classes for the pencil
/// spanned by `phi0` and `phi1`.
pub fn analyze_span(phi0: &PureState, phi1: &PureState, eps: f64) -> Result<SpanProfile> {
    require_three_qubits(phi0)?;
    require_three_qubits(phi1)?;
    let base = Frame::new(phi0.amps(), phi1.amps())?;
    let sv_ratio = {
        let m = DMatrix::from_fn(2, 8, |r, c| if r == 0 { phi0.amps()[c] } else { phi1.amps()[c] });
        let sv = crate::qstate::singular_values(m);
        sv[1] / sv[0]
    };
    if sv_ratio <= crate::qstate::rank_tolerance(eps) {
        return Err(Error::CollinearSpan);
    }
    let (a, b) = best_rotation(|s, t| ghz_invariant(&base.element(s, t)));
    let frame = base.rotated(a, b);
    let (g, nodes) = sample_quartic(&frame.b0, &frame.b1);
    let form = QuarticForm {
        c: [g[0], g[1], g[2], g[3], g[4]],
        nodes: Some(nodes),
    };
    let identically_zero = form.is_identically_zero(eps);
    let clauses = ClauseQuadratics::from_basis(&frame.b0, &frame.b1);

    let generic_type = if identically_zero {
        let classes: Vec<TriClass> = PROBE_SEEDS
            .iter()
            .map(|&seed| {
                let (s, t) = probe_point(seed);
                classify_amplitudes(&frame.element(s, t), eps)
            })
            .collect::<Result<_>>()?;
        if classes[0] != classes[1] {
            return Err(Error::GenericTypeUnstable {
                first: classes[0],
                second: classes[1],
            });
        }
        classes[0]
    } else {
        TriClass::Ghz
    };

    // Clause candidates: roots of each form, and the common root of each
    // pair from the cross product of coefficient vectors (the monomial
    // vector (s^2, s t, t^2) is orthogonal to both under the bilinear form).
    let mut raw: Vec<(C, C)> = Vec::new();
    for f in clauses.forms() {
        raw.extend(f.candidate_roots());
    }
    for [p, q] in &clauses.pairs {
        let (u, v) = (p.c, q.c);
        let w = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        if w.iter().any(|z| z.norm() > 0.0) {
            raw.push((w[0], w[1]));
            raw.push((w[1], w[2]));
        }
    }
    let mut low: Vec<Candidate> = Vec::new();
    for (s, t) in raw {
        if s.norm() + t.norm() == 0.0 {
            continue;
        }
        let scale = (s.norm_sqr() + t.norm_sqr()).sqrt();
        let (s, t) = (s / scale, t / scale);
        let a = frame.element(s, t);
        if let Ok(class) = classify_amplitudes(&a, eps) {
            if class < generic_type && class < TriClass::W {
                let score = residual_score(&a, eps);
                low.push(Candidate { s, t, class, multiplicity: 0, score });
            }
        }
    }
    let radius = eps.sqrt();
    let mut low = merge_candidates(low, radius, &frame, eps);

    let mut cands: Vec<Candidate> = Vec::new();
    if identically_zero {
        for c in &mut low {
            c.multiplicity = 1;
        }
        cands = low;
    } else {
        // Each separable point is a multiple root of the quartic; take its
        // multiplicity from the Taylor expansion at the accurately located
        // clause candidate, divide it out and solve for what remains.
        let mut p = g.clone();
        let poly_tol = eps;
        for mut c in low {
            let r = c.s / c.t;
            if !r.is_finite() {
                continue;
            }
            let deg = p.len() - 1;
            if deg == 0 {
                break;
            }
            // A point below GHZ is a root of the quartic whatever the
            // rounding says.
            let m = root_multiplicity(&p, r, poly_tol, deg).max(1);
            for _ in 0..m {
                p = deflate(&p, r);
            }
            c.multiplicity = m;
            cands.push(c);
        }
        let rest = poly_roots(&p)?;
        for cluster in cluster_roots(&p, rest, poly_tol) {
            // Two distinct roots closer than the tolerance merge, and their
            // centre need not be a root at all; the members still are.
            let tries = std::iter::once(cluster.center).chain(cluster.members.iter().copied().filter(|_| cluster.multiplicity > 1));
            let best = tries
                .filter_map(|s| {
                    let scale = (s.norm_sqr() + 1.0).sqrt();
                    let (s, t) = (s / scale, ONE / scale);
                    let a = frame.element(s, t);
                    let class = classify_amplitudes(&a, eps).ok().filter(|c| *c < TriClass::Ghz)?;
                    let scales = ghz_scales(&a);
                    let off_ghz = if scales.gauge > 0.0 { ghz_invariant(&a).norm() / scales.gauge } else { 0.0 };
                    let score = residual_score(&a, eps) + off_ghz;
                    Some(Candidate { s, t, class, multiplicity: cluster.multiplicity, score })
                })
                .min_by(|x, y| x.class.cmp(&y.class).then(x.score.total_cmp(&y.score)));
            cands.extend(best);
        }
        cands = merge_candidates(cands, radius, &frame, eps);
    }

    let exceptional = cands
        .into_iter()
        .filter(|c| c.class < generic_type)
        .map(|c| ExceptionalPoint {
            point: frame.to_point(c.s, c.t, c.multiplicity.max(1)),
            class: c.class,
        })
        .collect();
    Ok(SpanProfile::new(identically_zero, generic_type, exceptional))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    fn basis3(idx: &[usize]) -> PureState {
        PureState::from_basis(3, idx).unwrap()
    }

    fn real3(v: &[f64]) -> PureState {
        PureState::from_real(3, v).unwrap()
    }

    fn w() -> PureState {
        basis3(&[1, 2, 4])
    }

    fn close(a: C, b: f64) -> bool {
        (a - C::new(b, 0.0)).norm() < 1e-12
    }

    #[test]
    fn interpolation_recovers_monomials() {
        let q = quartic(&basis3(&[0]), &basis3(&[7])).unwrap();
        let want = [0.0, 0.0, 1.0, 0.0, 0.0];
        for (c, w) in q.c.iter().zip(want) {
            assert!(close(*c, w), "{:?}", q.c);
        }
    }

    #[test]
    fn canonical_w_pencil_vanishes() {
        let q = quartic(&basis3(&[5, 6]), &w()).unwrap();
        assert!(q.is_identically_zero(EPS));
        assert!(matches!(quartic_roots(&q, EPS), Err(Error::IdenticallyZero)));
    }

    #[test]
    fn ghz_basis_vector_fixes_top_coefficient() {
        let phi0 = PureState::new(
            3,
            (0..8).map(|i| C::new(0.3 * i as f64 - 1.0, 0.7 - 0.2 * i as f64)).collect(),
        )
        .unwrap();
        let q = quartic(&phi0, &basis3(&[0, 7])).unwrap();
        assert!((q.c[4] - ONE).norm() < 1e-12);
    }

    #[test]
    fn zero_input_rejected() {
        assert!(matches!(
            quartic(&PureState::zero(3).unwrap(), &w()),
            Err(Error::ZeroState)
        ));
    }

    #[test]
    fn roots_of_monomials() {
        let q = QuarticForm::from_coeffs([ZERO, ZERO, ONE, ZERO, ZERO]);
        let r = quartic_roots(&q, EPS).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|p| p.multiplicity == 2));
        assert!(r.contains(&ProjectivePoint::infinity()));
        assert!(r.contains(&ProjectivePoint::new(ZERO, ONE, 1)));

        let q = QuarticForm::from_coeffs([ZERO, ZERO, ZERO, ZERO, ONE]);
        let r = quartic_roots(&q, EPS).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 4);
        assert_eq!(r[0], ProjectivePoint::infinity());
    }

    #[test]
    fn fourth_roots_of_unity() {
        let q = QuarticForm::from_coeffs([ONE, ZERO, ZERO, ZERO, -ONE]);
        let r = quartic_roots(&q, EPS).unwrap();
        assert_eq!(r.len(), 4);
        let i = C::new(0.0, 1.0);
        for y in [ONE, -ONE, i, -i] {
            assert!(r.contains(&ProjectivePoint::new(ONE, y, 1)), "missing (1:{y})");
        }
    }

    #[test]
    fn projective_equality_ignores_scale() {
        let p = ProjectivePoint::new(C::new(1.0, 2.0), C::new(-3.0, 0.5), 1);
        let q = ProjectivePoint::new(C::new(1.0, 2.0) * C::new(0.0, -7.0), C::new(-3.0, 0.5) * C::new(0.0, -7.0), 1);
        assert_eq!(p, q);
    }

    #[test]
    fn clause_quadratic_examples() {
        let cq = clause_quadratics(&basis3(&[5, 6]), &w()).unwrap();
        let [g3, g4] = cq.pairs[1];
        assert!(close(g3.c[0], 0.0) && close(g3.c[1], 0.0) && close(g3.c[2], 1.0));
        assert!(g4.max_abs() < 1e-12);

        let cq = clause_quadratics(&real3(&[0., 0., 0., 1., 0., 1., 4., 0.]), &w()).unwrap();
        // (x^2, xy, y^2) coefficients of each pair.
        let want = [
            [[0.0, 0.0, -1.0], [4.0, 0.0, 0.0]],
            [[0.0, 0.0, 1.0], [4.0, 0.0, 0.0]],
            [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
        ];
        for (pair, wp) in cq.pairs.iter().zip(want) {
            for (f, wf) in pair.iter().zip(wp) {
                for (c, w) in f.c.iter().zip(wf) {
                    assert!(close(*c, w), "{:?} vs {:?}", f.c, wf);
                }
            }
        }

        let cq = clause_quadratics(&basis3(&[0]), &basis3(&[7])).unwrap();
        assert!(cq.forms().all(|f| f.max_abs() < 1e-12));
    }

    #[test]
    fn span_of_product_endpoints() {
        let p = analyze_span(&basis3(&[0]), &basis3(&[7]), EPS).unwrap();
        assert!(!p.quartic_identically_zero);
        assert_eq!(p.generic_type, TriClass::Ghz);
        assert_eq!(p.class_multiset(), vec![TriClass::Sep000, TriClass::Sep000]);
        let pts: Vec<ProjectivePoint> = p.exceptional.iter().map(|e| e.point).collect();
        assert!(pts.contains(&ProjectivePoint::infinity()));
        assert!(pts.contains(&ProjectivePoint::new(ZERO, ONE, 1)));
        assert!(p.exceptional.iter().all(|e| e.point.multiplicity == 2));
    }

    #[test]
    fn span_with_single_biseparable_point() {
        let p = analyze_span(&basis3(&[5, 6]), &w(), EPS).unwrap();
        assert!(p.quartic_identically_zero);
        assert_eq!(p.generic_type, TriClass::W);
        assert_eq!(p.class_multiset(), vec![TriClass::Bisep(1)]);
        assert_eq!(p.exceptional[0].point, ProjectivePoint::infinity());
    }

    #[test]
    fn span_without_separable_points() {
        let p = analyze_span(&real3(&[0., 0., 0., 1., 0., 1., 4., 0.]), &w(), EPS).unwrap();
        assert!(p.quartic_identically_zero);
        assert_eq!(p.generic_type, TriClass::W);
        assert!(p.exceptional.is_empty());
    }

    #[test]
    fn collinear_span_rejected() {
        let a = w();
        let b = a.scaled(C::new(2.0, 0.0));
        assert!(matches!(analyze_span(&a, &b, EPS), Err(Error::CollinearSpan)));
    }

    #[test]
    fn taylor_and_deflation() {
        // (t - 2)^2 (t + 1) = t^3 - 3t^2 + 4
        let p = [ONE, C::new(-3.0, 0.0), ZERO, C::new(4.0, 0.0)];
        assert_eq!(root_multiplicity(&p, C::new(2.0, 0.0), 1e-12, 3), 2);
        assert_eq!(root_multiplicity(&p, C::new(-1.0, 0.0), 1e-12, 3), 1);
        assert_eq!(root_multiplicity(&p, ZERO, 1e-12, 3), 0);
        let d = deflate(&p, C::new(-1.0, 0.0));
        assert!(d.iter().zip([1.0, -4.0, 4.0]).all(|(a, b)| close(*a, b)));
    }
}
