//! Four-qubit superclasses: factorization screen, pencil analysis on a
//! distinguished qubit and the decision table over the pencil profile.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pencil::{analyze_span, SpanProfile};
use crate::qstate::{bipartition_ranks, decompose, rank_tolerance, Bipartition, PureState};
use crate::tri::{classify3, TriClass};

/// Why a state was screened out as not genuinely four-partite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegenerateKind {
    /// `qubit` factors out; `rest` is the class of the remaining three.
    QubitSeparable { qubit: usize, rest: TriClass },
    /// The state is a product across a two-two cut.
    PairProduct { cut: Bipartition },
}

impl fmt::Display for DegenerateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerateKind::QubitSeparable { qubit, rest } => {
                write!(f, "qubit {qubit} separable, rest {rest}")
            }
            DegenerateKind::PairProduct { cut } => write!(f, "pair product {cut}"),
        }
    }
}

/// Superclass tag. Cut indices name a qubit of the three-qubit residual
/// state, numbered 1..=3 in the residual's own order.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadTag {
    W000_000,
    W000_0Psi,
    W000_GHZ,
    W000_W,
    W0kPsi_0kPsi(u8),
    W0iPsi_0jPsi(u8, u8),
    W0Psi_GHZ(u8),
    W0kPsi_W(u8),
    WGHZ_W,
    WW_W,
    Degenerate(DegenerateKind),
}

impl QuadTag {
    pub const LABELS: [&'static str; 11] = [
        "W000_000",
        "W000_0Psi",
        "W000_GHZ",
        "W000_W",
        "W0kPsi_0kPsi",
        "W0iPsi_0jPsi",
        "W0Psi_GHZ",
        "W0kPsi_W",
        "WGHZ_W",
        "WW_W",
        "Degenerate",
    ];

    /// Position in the decision-table order.
    pub fn order(&self) -> usize {
        match self {
            QuadTag::W000_000 => 0,
            QuadTag::W000_0Psi => 1,
            QuadTag::W000_GHZ => 2,
            QuadTag::W000_W => 3,
            QuadTag::W0kPsi_0kPsi(_) => 4,
            QuadTag::W0iPsi_0jPsi(..) => 5,
            QuadTag::W0Psi_GHZ(_) => 6,
            QuadTag::W0kPsi_W(_) => 7,
            QuadTag::WGHZ_W => 8,
            QuadTag::WW_W => 9,
            QuadTag::Degenerate(_) => 10,
        }
    }

    pub fn label(&self) -> &'static str {
        Self::LABELS[self.order()]
    }

    pub fn cuts(&self) -> Vec<u8> {
        match *self {
            QuadTag::W0kPsi_0kPsi(k) | QuadTag::W0Psi_GHZ(k) | QuadTag::W0kPsi_W(k) => vec![k],
            QuadTag::W0iPsi_0jPsi(i, j) => vec![i, j],
            _ => Vec::new(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, QuadTag::Degenerate(_))
    }

    fn with_cuts(&self, cuts: &[u8]) -> QuadTag {
        match *self {
            QuadTag::W0kPsi_0kPsi(_) => QuadTag::W0kPsi_0kPsi(cuts[0]),
            QuadTag::W0Psi_GHZ(_) => QuadTag::W0Psi_GHZ(cuts[0]),
            QuadTag::W0kPsi_W(_) => QuadTag::W0kPsi_W(cuts[0]),
            QuadTag::W0iPsi_0jPsi(..) => QuadTag::W0iPsi_0jPsi(cuts[0], cuts[1]),
            other => other,
        }
    }
}

impl fmt::Display for QuadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cuts = self.cuts();
        if cuts.is_empty() {
            write!(f, "{}", self.label())
        } else {
            let c: Vec<String> = cuts.iter().map(u8::to_string).collect();
            write!(f, "{}({})", self.label(), c.join(","))
        }
    }
}

/// Verdict for one distinguished qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadClass {
    pub tag: QuadTag,
    pub distinguished: usize,
    pub profile: Option<SpanProfile>,
}

impl QuadClass {
    /// Cut indices mapped from residual numbering to the four global qubits.
    pub fn global_cuts(&self) -> Vec<usize> {
        self.tag
            .cuts()
            .iter()
            .map(|&k| residual_to_global(k as usize, self.distinguished))
            .collect()
    }
}

impl Serialize for QuadClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadClass", 5)?;
        st.serialize_field("class", self.tag.label())?;
        st.serialize_field("distinguished", &self.distinguished)?;
        st.serialize_field("cuts", &self.tag.cuts())?;
        if let QuadTag::Degenerate(kind) = &self.tag {
            st.serialize_field("degenerate", &kind.to_string())?;
        }
        st.serialize_field("profile", &self.profile)?;
        st.end()
    }
}

/// Global qubit number of residual qubit `k` after removing `distinguished`.
pub fn residual_to_global(k: usize, distinguished: usize) -> usize {
    if k < distinguished {
        k
    } else {
        k + 1
    }
}

fn screen(state: &PureState, eps: f64) -> Result<Option<DegenerateKind>> {
    let ranks = bipartition_ranks(state, rank_tolerance(eps))?;
    if let Some(q) = ranks.separable_qubit() {
        let d = decompose(state, q)?;
        let rest = if d.phi0.norm() >= d.phi1.norm() { d.phi0 } else { d.phi1 };
        let rest = match classify3(&rest, eps) {
            Ok(c) => c,
            Err(Error::AmbiguousClassification { .. }) => TriClass::Zero,
            Err(e) => return Err(e),
        };
        return Ok(Some(DegenerateKind::QubitSeparable { qubit: q, rest }));
    }
    Ok(ranks.product_pair().map(|cut| DegenerateKind::PairProduct { cut }))
}

/// The decision table. Counts refer to distinct exceptional points.
pub fn decide_profile(p: &SpanProfile) -> Result<QuadTag> {
    if !p.generic_type.is_genuine() {
        return Err(Error::InternalContradiction(format!(
            "pencil of a genuinely entangled state has generic type {}",
            p.generic_type
        )));
    }
    let generic_w = p.generic_type == TriClass::W;
    let cuts = &p.bisep_cuts;
    match p.sep000_count() {
        0 => {}
        1 => {
            return if !cuts.is_empty() {
                Ok(QuadTag::W000_0Psi)
            } else if generic_w {
                Ok(QuadTag::W000_W)
            } else {
                Ok(QuadTag::W000_GHZ)
            };
        }
        _ => return Ok(QuadTag::W000_000),
    }
    if cuts.len() >= 2 {
        // `cuts` is sorted, so a repeat shows up as adjacent equal entries.
        if let Some(w) = cuts.windows(2).find(|w| w[0] == w[1]) {
            return Ok(QuadTag::W0kPsi_0kPsi(w[0]));
        }
        return Ok(QuadTag::W0iPsi_0jPsi(cuts[0], cuts[1]));
    }
    if let [k] = cuts[..] {
        return Ok(if generic_w { QuadTag::W0kPsi_W(k) } else { QuadTag::W0Psi_GHZ(k) });
    }
    if generic_w {
        return Ok(QuadTag::WW_W);
    }
    if p.exceptional.is_empty() {
        return Err(Error::InternalContradiction(
            "pencil with GHZ generic type and no exceptional point: every element GHZ".into(),
        ));
    }
    Ok(QuadTag::WGHZ_W)
}

fn check_four(state: &PureState) -> Result<()> {
    if state.n() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.n(),
        });
    }
    if state.is_zero() {
        return Err(Error::ZeroState);
    }
    Ok(())
}

/// Superclass of a four-qubit state with respect to one distinguished qubit.
pub fn classify4(state: &PureState, distinguished: usize, eps: f64) -> Result<QuadClass> {
    check_four(state)?;
    crate::qstate::check_qubit(distinguished, 4)?;
    if let Some(kind) = screen(state, eps)? {
        return Ok(QuadClass {
            tag: QuadTag::Degenerate(kind),
            distinguished,
            profile: None,
        });
    }
    let d = decompose(state, distinguished)?;
    let profile = match analyze_span(&d.phi0, &d.phi1, eps) {
        Ok(p) => p,
        Err(Error::CollinearSpan) => {
            return Err(Error::InternalContradiction(
                "screen passed but the residual states are collinear".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let tag = decide_profile(&profile)?;
    Ok(QuadClass {
        tag,
        distinguished,
        profile: Some(profile),
    })
}

/// Verdicts for all four choices of distinguished qubit and a label that
/// does not depend on how the qubits are numbered.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadSummary {
    pub verdicts: Vec<QuadClass>,
    pub canonical_label: String,
}

/// Sorts the verdicts by tag order and global cuts, then renames the global
/// qubits appearing in cuts by order of first appearance.
pub fn canonical_label(verdicts: &[QuadClass]) -> String {
    if verdicts.iter().any(|v| v.tag.is_degenerate()) {
        return "Degenerate".into();
    }
    let mut rows: Vec<(usize, Vec<usize>, QuadTag)> = verdicts
        .iter()
        .map(|v| (v.tag.order(), v.global_cuts(), v.tag))
        .collect();
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut names: Vec<usize> = Vec::new();
    let parts: Vec<String> = rows
        .iter()
        .map(|(_, cuts, tag)| {
            let renamed: Vec<u8> = cuts
                .iter()
                .map(|q| {
                    let pos = names.iter().position(|n| n == q).unwrap_or_else(|| {
                        names.push(*q);
                        names.len() - 1
                    });
                    (pos + 1) as u8
                })
                .collect();
            tag.with_cuts(&renamed).to_string()
        })
        .collect();
    parts.join(" ")
}

pub fn classify4_all(state: &PureState, eps: f64) -> Result<QuadSummary> {
    let verdicts = (1..=4)
        .map(|q| classify4(state, q, eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadSummary {
        canonical_label: canonical_label(&verdicts),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::{ExceptionalPoint, ProjectivePoint};

    const EPS: f64 = 1e-9;

    fn basis4(idx: &[usize]) -> PureState {
        PureState::from_basis(4, idx).unwrap()
    }

    fn profile(generic: TriClass, zero: bool, classes: &[TriClass]) -> SpanProfile {
        let pts = classes
            .iter()
            .enumerate()
            .map(|(i, &class)| ExceptionalPoint {
                point: ProjectivePoint::new(num_complex::Complex64::new(i as f64, 0.0), num_complex::Complex64::new(1.0, 0.0), 1),
                class,
            })
            .collect();
        SpanProfile::new(zero, generic, pts)
    }

    #[test]
    fn table_rows() {
        use TriClass::*;
        let t = |g, z, c: &[TriClass]| decide_profile(&profile(g, z, c)).unwrap();
        assert_eq!(t(Ghz, false, &[Sep000, Sep000]), QuadTag::W000_000);
        assert_eq!(t(Ghz, false, &[Sep000, Bisep(2)]), QuadTag::W000_0Psi);
        assert_eq!(t(Ghz, false, &[Sep000, W, W]), QuadTag::W000_GHZ);
        assert_eq!(t(W, true, &[Sep000]), QuadTag::W000_W);
        assert_eq!(t(Ghz, false, &[Bisep(2), Bisep(2)]), QuadTag::W0kPsi_0kPsi(2));
        assert_eq!(t(Ghz, false, &[Bisep(3), Bisep(1)]), QuadTag::W0iPsi_0jPsi(1, 3));
        assert_eq!(t(Ghz, false, &[Bisep(1), Bisep(2), Bisep(2)]), QuadTag::W0kPsi_0kPsi(2));
        assert_eq!(t(Ghz, false, &[Bisep(3), W]), QuadTag::W0Psi_GHZ(3));
        assert_eq!(t(W, true, &[Bisep(1)]), QuadTag::W0kPsi_W(1));
        assert_eq!(t(Ghz, false, &[W, W, W, W]), QuadTag::WGHZ_W);
        assert_eq!(t(W, true, &[]), QuadTag::WW_W);
    }

    #[test]
    fn all_ghz_profile_is_a_contradiction() {
        let p = profile(TriClass::Ghz, false, &[]);
        assert!(matches!(decide_profile(&p), Err(Error::InternalContradiction(_))));
        let p = profile(TriClass::Bisep(1), true, &[]);
        assert!(matches!(decide_profile(&p), Err(Error::InternalContradiction(_))));
    }

    #[test]
    fn ghz4_everywhere_w000_000() {
        let s = basis4(&[0, 15]);
        let all = classify4_all(&s, EPS).unwrap();
        assert!(all.verdicts.iter().all(|v| v.tag == QuadTag::W000_000));
        assert_eq!(all.canonical_label, "W000_000 W000_000 W000_000 W000_000");
    }

    #[test]
    fn degenerate_inputs() {
        let v = classify4(&basis4(&[0]), 1, EPS).unwrap();
        assert!(matches!(
            v.tag,
            QuadTag::Degenerate(DegenerateKind::QubitSeparable { qubit: 1, rest: TriClass::Sep000 })
        ));
        // Bell pair on qubits 1,2 times Bell pair on 3,4.
        let bb = basis4(&[0b0000, 0b0011, 0b1100, 0b1111]);
        let all = classify4_all(&bb, EPS).unwrap();
        assert!(all.verdicts.iter().all(|v| matches!(
            v.tag,
            QuadTag::Degenerate(DegenerateKind::PairProduct { .. })
        )));
        assert_eq!(all.canonical_label, "Degenerate");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            classify4(&PureState::zero(4).unwrap(), 1, EPS),
            Err(Error::ZeroState)
        ));
        assert!(matches!(
            classify4(&basis4(&[0, 15]), 5, EPS),
            Err(Error::InvalidQubit { .. })
        ));
        let three = PureState::from_basis(3, &[0, 7]).unwrap();
        assert!(matches!(classify4(&three, 1, EPS), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn residual_numbering() {
        assert_eq!(residual_to_global(1, 1), 2);
        assert_eq!(residual_to_global(1, 2), 1);
        assert_eq!(residual_to_global(3, 2), 4);
        assert_eq!(residual_to_global(3, 4), 3);
    }
}
