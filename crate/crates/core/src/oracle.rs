//! Brute-force cross-checks for the three-qubit classifier and the pencil
//! analysis.
//!
//! Nothing here calls into `tri` or `pencil`: ranks come from singular value
//! decompositions, the genuine split comes from a separately written
//! hyperdeterminant, and span profiles come from dense sampling of the
//! projective line followed by local minimisation. Only the result types are
//! shared, so that profiles can be compared field by field.

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use nalgebra::{DMatrix, SVD};
use num_complex::Complex64 as C;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pencil::{ExceptionalPoint, ProjectivePoint, SpanProfile};
use crate::qstate::PureState;
use crate::tri::TriClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    RankBased,
    Sampling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub tri: TriClass,
    pub method: OracleMethod,
}

/// Measures behind a rank-based verdict. `sv_ratio[k]` is the smaller over
/// the larger singular value of the qubit-`k+1` flattening. `tangle` is the
/// hyperdeterminant over its value gradient times the state norm, `tangle_vs_rounding` over a
/// bound on its rounding error and `tangle_vs_norm` over `|a|^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankMeasures {
    pub sv_ratio: [f64; 3],
    pub tangle: f64,
    pub tangle_vs_rounding: f64,
    pub tangle_vs_norm: f64,
}

/// Singular values of the 2x4 matrix with rows indexed by qubit `q`
/// (1-based, big-endian) and columns by the other two qubits.
fn flattening_ratio(a: &[C], q: usize) -> f64 {
    let shift = 3 - q;
    let m = DMatrix::from_fn(2, 4, |r, col| {
        let low = col & ((1 << shift) - 1);
        let high = col >> shift;
        a[(high << (shift + 1)) | (r << shift) | low]
    });
    let sv = SVD::new(m, false, false).singular_values;
    let (hi, lo) = if sv[0] >= sv[1] { (sv[0], sv[1]) } else { (sv[1], sv[0]) };
    if hi > 0.0 {
        lo / hi
    } else {
        0.0
    }
}

/// Writes the state as `|0>A + |1>B` with 2x2 slices and expands
/// `det(x A + y B) = p x^2 + q x y + r y^2`. The hyperdeterminant is the
/// discriminant `q^2 - 4 p r`. Returns it relative to `|a| |grad|`, a first
/// order distance to the locus where it vanishes; relative to the same
/// expression built from unsigned products, which bounds its rounding
/// error; and relative to `|a|^4`, which is smooth along a pencil and so
/// suits minimisation.
fn tangle_ratios(a: &[C]) -> (f64, f64, f64) {
    let det = |m: [C; 4]| m[0] * m[3] - m[1] * m[2];
    let det_abs = |m: [C; 4]| m[0].norm() * m[3].norm() + m[1].norm() * m[2].norm();
    let sa = [a[0], a[1], a[2], a[3]];
    let sb = [a[4], a[5], a[6], a[7]];
    let (p, r) = (det(sa), det(sb));
    let q = sa[0] * sb[3] + sb[0] * sa[3] - sa[1] * sb[2] - sb[1] * sa[2];
    let q_abs = sa[0].norm() * sb[3].norm()
        + sb[0].norm() * sa[3].norm()
        + sa[1].norm() * sb[2].norm()
        + sb[1].norm() * sa[2].norm();
    let disc = (q * q - p * r * 4.0).norm();
    let floor = q_abs * q_abs + 4.0 * det_abs(sa) * det_abs(sb);
    let n2: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if floor == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    // d(disc) = 2 q dq - 4 r dp - 4 p dr
    let zero = C::new(0.0, 0.0);
    let dp = [a[3], -a[2], -a[1], a[0], zero, zero, zero, zero];
    let dq = [a[7], -a[6], -a[5], a[4], a[3], -a[2], -a[1], a[0]];
    let dr = [zero, zero, zero, zero, a[7], -a[6], -a[5], a[4]];
    let grad: f64 = (0..8)
        .map(|i| (q * dq[i] * 2.0 - r * dp[i] * 4.0 - p * dr[i] * 4.0).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let first_order = if grad > 0.0 { disc / (grad * n2.sqrt()) } else { 0.0 };
    (first_order, disc / floor, disc / (n2 * n2))
}

pub fn rank_measures(a: &[C]) -> RankMeasures {
    let (tangle, tangle_vs_rounding, tangle_vs_norm) = tangle_ratios(a);
    RankMeasures {
        sv_ratio: [1, 2, 3].map(|q| flattening_ratio(a, q)),
        tangle,
        tangle_vs_rounding,
        tangle_vs_norm,
    }
}

/// A hyperdeterminant this close to its own rounding error is zero.
const ROUNDING_FLOOR: f64 = 32.0 * f64::EPSILON;

/// Verdict from measures at tolerance `eps`. A flattening counts as rank one
/// when its singular value ratio is at most `eps`. A genuine state is GHZ
/// when it is further than `eps` from the vanishing locus of the
/// hyperdeterminant to first order, and the value is clear of rounding.
fn verdict(m: &RankMeasures, eps: f64) -> TriClass {
    let product: Vec<usize> = (0..3).filter(|&k| m.sv_ratio[k] <= eps).collect();
    match product.len() {
        0 if m.tangle > eps && m.tangle_vs_rounding > ROUNDING_FLOOR => TriClass::Ghz,
        0 => TriClass::W,
        1 => TriClass::Bisep(product[0] as u8 + 1),
        // Two product qubits force the third: the state is fully separable.
        _ => TriClass::Sep000,
    }
}

fn classify_raw(a: &[C], eps: f64) -> Result<TriClass> {
    if a.iter().all(|z| *z == C::new(0.0, 0.0)) {
        return Err(Error::ZeroState);
    }
    Ok(verdict(&rank_measures(a), eps))
}

/// Three-qubit class from the ranks of the single-qubit flattenings.
pub fn classify3_by_ranks(state: &PureState, eps: f64) -> Result<TriClass> {
    if state.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: state.amps().len(),
        });
    }
    classify_raw(state.amps(), eps)
}

pub fn oracle_verdict(state: &PureState, eps: f64) -> Result<OracleVerdict> {
    Ok(OracleVerdict {
        tri: classify3_by_ranks(state, eps)?,
        method: OracleMethod::RankBased,
    })
}

// ---------------------------------------------------------------------------
// Sampling profiler.

type Pt = (C, C);

fn unit(p: Pt) -> Pt {
    let n = (p.0.norm_sqr() + p.1.norm_sqr()).sqrt();
    (p.0 / n, p.1 / n)
}

fn dist(a: Pt, b: Pt) -> f64 {
    let (a, b) = (unit(a), unit(b));
    (a.0 * b.1 - a.1 * b.0).norm()
}

fn element(phi0: &[C], phi1: &[C], p: Pt) -> Vec<C> {
    phi0.iter().zip(phi1).map(|(u, v)| p.0 * u + p.1 * v).collect()
}

/// Quasi-uniform points on the Riemann sphere, as unit vectors in C^2.
fn fibonacci_points(n: usize) -> Vec<Pt> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let theta = z.clamp(-1.0, 1.0).acos();
            let phi = golden * i as f64;
            (
                C::new((theta / 2.0).cos(), 0.0),
                C::from_polar((theta / 2.0).sin(), phi),
            )
        })
        .collect()
}

/// Point displaced from `base` by `u` along the orthogonal direction.
fn chart(base: Pt, u: C) -> Pt {
    let perp = (-base.1.conj(), base.0.conj());
    unit((base.0 + perp.0 * u, base.1 + perp.1 * u))
}

struct LocalCost<'a> {
    phi0: &'a [C],
    phi1: &'a [C],
    base: Pt,
    measure: usize,
}

impl LocalCost<'_> {
    fn value(&self, p: Pt) -> f64 {
        let a = element(self.phi0, self.phi1, p);
        match self.measure {
            3 => tangle_ratios(&a).2,
            k => flattening_ratio(&a, k + 1),
        }
    }
}

impl CostFunction for LocalCost<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.value(chart(self.base, C::new(x[0], x[1]))))
    }
}

/// Nelder-Mead from `start` on one measure, restarted until it stalls.
fn refine(phi0: &[C], phi1: &[C], start: Pt, measure: usize, step: f64) -> Pt {
    let mut base = start;
    let mut step = step;
    for _ in 0..6 {
        let cost = LocalCost { phi0, phi1, base, measure };
        let simplex = vec![vec![0.0, 0.0], vec![step, 0.0], vec![0.0, step]];
        let Ok(solver) = NelderMead::new(simplex).with_sd_tolerance(0.0) else {
            break;
        };
        let Ok(res) = Executor::new(cost, solver)
            .configure(|s| s.max_iters(400))
            .run()
        else {
            break;
        };
        let Some(x) = res.state.best_param else {
            break;
        };
        let moved = (x[0] * x[0] + x[1] * x[1]).sqrt();
        base = chart(base, C::new(x[0], x[1]));
        if moved < 1e-15 {
            break;
        }
        step = (moved * 0.5).max(1e-14);
    }
    base
}

/// The `k` nearest other samples of every sample.
fn neighbours(points: &[Pt], k: usize) -> Vec<Vec<usize>> {
    (0..points.len())
        .map(|i| {
            let mut near: Vec<(f64, usize)> = (0..points.len())
                .filter(|&j| j != i)
                .map(|j| (dist(points[i], points[j]), j))
                .collect();
            let k = k.min(near.len());
            if k < near.len() {
                near.select_nth_unstable_by(k, |a, b| a.0.total_cmp(&b.0));
            }
            near.truncate(k);
            near.into_iter().map(|(_, j)| j).collect()
        })
        .collect()
}

/// Samples whose value is no larger than that of any neighbour.
fn local_minima(values: &[f64], near: &[Vec<usize>]) -> Vec<usize> {
    (0..values.len())
        .filter(|&i| near[i].iter().all(|&j| values[i] <= values[j]))
        .collect()
}

/// Local minima polished per measure; a pencil has at most a handful of
/// exceptional points.
const MAX_SEEDS: usize = 32;

/// Profile of the pencil `x phi0 + y phi1` by classifying `samples`
/// quasi-uniform points, then polishing the local minima of each rank and
/// tangle measure and keeping the polished points that fall below the
/// generic class. Points joined by a segment that stays below the generic
/// class are one exceptional point.
pub fn profile_by_sampling(phi0: &PureState, phi1: &PureState, samples: usize, eps: f64) -> Result<SpanProfile> {
    for s in [phi0, phi1] {
        if s.n() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                found: s.amps().len(),
            });
        }
    }
    if phi0.is_zero() && phi1.is_zero() {
        return Err(Error::ZeroState);
    }
    let (u, v) = (phi0.amps(), phi1.amps());
    let points = fibonacci_points(samples.max(16));
    let measures: Vec<RankMeasures> = points.iter().map(|&p| rank_measures(&element(u, v, p))).collect();
    let classes: Vec<TriClass> = measures.iter().map(|m| verdict(m, eps)).collect();

    let mut tally: Vec<(TriClass, usize)> = Vec::new();
    for &c in &classes {
        match tally.iter_mut().find(|(t, _)| *t == c) {
            Some(e) => e.1 += 1,
            None => tally.push((c, 1)),
        }
    }
    let generic = tally.iter().max_by_key(|(_, n)| *n).map(|(c, _)| *c).unwrap_or(TriClass::Ghz);

    let spacing = (4.0 * std::f64::consts::PI / points.len() as f64).sqrt();
    let near = neighbours(&points, 8);
    let mut found: Vec<(Pt, TriClass)> = Vec::new();
    // The tangle only separates anything when the generic point is GHZ.
    let used = if generic == TriClass::Ghz { 4 } else { 3 };
    for measure in 0..used {
        let values: Vec<f64> = measures
            .iter()
            .map(|m| if measure == 3 { m.tangle_vs_norm } else { m.sv_ratio[measure] })
            .collect();
        let mut seeds = local_minima(&values, &near);
        seeds.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        seeds.truncate(MAX_SEEDS);
        for i in seeds {
            let p = refine(u, v, points[i], measure, spacing);
            let a = element(u, v, p);
            if let Ok(c) = classify_raw(&a, eps) {
                if c < generic {
                    found.push((p, c));
                }
            }
        }
    }
    // Samples that already sit on an exceptional point.
    for (i, &c) in classes.iter().enumerate() {
        if c < generic {
            found.push((points[i], c));
        }
    }

    let below = |p: Pt| classify_raw(&element(u, v, p), eps).is_ok_and(|c| c < generic);
    let joined = |a: Pt, b: Pt| {
        let inner = a.0.conj() * b.0 + a.1.conj() * b.1;
        let ph = if inner.norm() > 0.0 { inner.conj() / inner.norm() } else { C::new(1.0, 0.0) };
        let b = (b.0 * ph, b.1 * ph);
        (1..8).all(|j| {
            let t = j as f64 / 8.0;
            below(unit((a.0 * (1.0 - t) + b.0 * t, a.1 * (1.0 - t) + b.1 * t)))
        })
    };
    let mut clusters: Vec<(Pt, TriClass)> = Vec::new();
    found.sort_by_key(|f| f.1);
    for (p, c) in found {
        match clusters.iter_mut().find(|(q, _)| dist(*q, p) < 1e-12 || joined(*q, p)) {
            Some(_) => {}
            None => clusters.push((p, c)),
        }
    }
    let exceptional = clusters
        .into_iter()
        .map(|(p, class)| ExceptionalPoint {
            point: ProjectivePoint::new(p.0, p.1, 1),
            class,
        })
        .collect();
    Ok(SpanProfile::new(
        !matches!(generic, TriClass::Ghz),
        generic,
        exceptional,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    fn basis3(idx: &[usize]) -> PureState {
        PureState::from_basis(3, idx).unwrap()
    }

    #[test]
    fn canonical_three_qubit_states() {
        assert_eq!(classify3_by_ranks(&basis3(&[0]), EPS).unwrap(), TriClass::Sep000);
        assert_eq!(classify3_by_ranks(&basis3(&[1, 2, 4]), EPS).unwrap(), TriClass::W);
        assert_eq!(classify3_by_ranks(&basis3(&[0, 7]), EPS).unwrap(), TriClass::Ghz);
        assert_eq!(classify3_by_ranks(&basis3(&[5, 6]), EPS).unwrap(), TriClass::Bisep(1));
        assert_eq!(classify3_by_ranks(&basis3(&[0, 5]), EPS).unwrap(), TriClass::Bisep(2));
        assert_eq!(classify3_by_ranks(&basis3(&[0, 6]), EPS).unwrap(), TriClass::Bisep(3));
    }

    #[test]
    fn zero_state_is_rejected() {
        let z = PureState::zero(3).unwrap();
        assert!(matches!(classify3_by_ranks(&z, EPS), Err(Error::ZeroState)));
    }

    #[test]
    fn ghz_pencil_has_two_product_points() {
        let p = profile_by_sampling(&basis3(&[0]), &basis3(&[7]), 2000, EPS).unwrap();
        assert_eq!(p.generic_type, TriClass::Ghz);
        assert_eq!(p.class_multiset(), vec![TriClass::Sep000, TriClass::Sep000]);
        let at = |x: f64, y: f64| ProjectivePoint::new(C::new(x, 0.0), C::new(y, 0.0), 1);
        for e in &p.exceptional {
            let d = e.point.chordal_distance(&at(1.0, 0.0)).min(e.point.chordal_distance(&at(0.0, 1.0)));
            assert!(d < 1e-6, "{}", e.point);
        }
    }
}
