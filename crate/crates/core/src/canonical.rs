//! Representative states for every reachable class, the two parameterized
//! four-qubit families, and a seeded sampler of random SLOCC operators.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qstate::{LocalOperator, PureState, SloccOp};
use crate::quad::QuadTag;
use crate::tri::TriClass;

type C = Complex64;

/// Four-qubit families with a canonical representative.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadFamily {
    W000_000,
    W000_0Psi,
    W000_GHZ,
    W000_W,
    W0kPsi_0kPsi,
    W0iPsi_0jPsi,
    W0Psi_GHZ,
    W0kPsi_W,
    WGHZ_W,
    WW_W,
}

impl QuadFamily {
    pub const ALL: [QuadFamily; 10] = [
        QuadFamily::W000_000,
        QuadFamily::W000_0Psi,
        QuadFamily::W000_GHZ,
        QuadFamily::W000_W,
        QuadFamily::W0kPsi_0kPsi,
        QuadFamily::W0iPsi_0jPsi,
        QuadFamily::W0Psi_GHZ,
        QuadFamily::W0kPsi_W,
        QuadFamily::WGHZ_W,
        QuadFamily::WW_W,
    ];

    pub fn name(&self) -> &'static str {
        QuadTag::LABELS[*self as usize]
    }

    /// Verdict of `classify4` on the representative, distinguished qubit 1.
    pub fn expected_tag(&self) -> QuadTag {
        match self {
            QuadFamily::W000_000 => QuadTag::W000_000,
            QuadFamily::W000_0Psi => QuadTag::W000_0Psi,
            QuadFamily::W000_GHZ => QuadTag::W000_GHZ,
            QuadFamily::W000_W => QuadTag::W000_W,
            QuadFamily::W0kPsi_0kPsi => QuadTag::W0kPsi_0kPsi(1),
            QuadFamily::W0iPsi_0jPsi => QuadTag::W0iPsi_0jPsi(1, 2),
            QuadFamily::W0Psi_GHZ => QuadTag::W0Psi_GHZ(1),
            QuadFamily::W0kPsi_W => QuadTag::W0kPsi_W(1),
            QuadFamily::WGHZ_W => QuadTag::WGHZ_W,
            QuadFamily::WW_W => QuadTag::WW_W,
        }
    }
}

impl fmt::Display for QuadFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Quad(QuadFamily),
    Tri(TriClass),
}

impl Family {
    /// Accepts the four-qubit labels and `GHZ`, `W`, `Sep000`, `Bisep(k)`.
    pub fn parse(name: &str) -> Result<Family> {
        if let Some(f) = QuadFamily::ALL.iter().find(|f| f.name() == name) {
            return Ok(Family::Quad(*f));
        }
        match TriClass::parse(name) {
            Some(TriClass::Zero) | None => Err(Error::Parse(format!("unknown family {name:?}"))),
            Some(t) => Ok(Family::Tri(t)),
        }
    }
}

/// A family and its named complex parameters. Unset parameters take the
/// defaults `lambda = 0`, `a3 = a5 = 1`, `mu = 0`, `sign = +1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, C>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec {
            family,
            params: BTreeMap::new(),
        }
    }

    pub fn quad(family: QuadFamily) -> Self {
        Self::new(Family::Quad(family))
    }

    pub fn with(mut self, name: &str, value: C) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// `|0>(lambda|0> + |1>)(-lambda|00> + |Psi+>) + |1>|W>`.
    pub fn w0kpsi_w(lambda: C) -> Self {
        Self::quad(QuadFamily::W0kPsi_W).with("lambda", lambda)
    }

    /// The three-parameter family with the sign of the square root branch.
    pub fn ww_w(a3: C, a5: C, mu: C, plus: bool) -> Self {
        Self::quad(QuadFamily::WW_W)
            .with("a3", a3)
            .with("a5", a5)
            .with("mu", mu)
            .with("sign", C::new(if plus { 1.0 } else { -1.0 }, 0.0))
    }

    fn param(&self, name: &str, default: C) -> C {
        self.params.get(name).copied().unwrap_or(default)
    }

    fn allowed_params(&self) -> &'static [&'static str] {
        match self.family {
            Family::Quad(QuadFamily::W0kPsi_W) => &["lambda"],
            Family::Quad(QuadFamily::WW_W) => &["a3", "a5", "mu", "sign"],
            _ => &[],
        }
    }
}

/// Principal square root: nonnegative real part, and `+i sqrt|z|` on the
/// negative real axis whatever the sign of zero in the imaginary part.
pub fn principal_sqrt(z: C) -> C {
    let z = C::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    z.sqrt()
}

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

fn basis(n: usize, idx: &[usize]) -> PureState {
    PureState::from_basis(n, idx).expect("valid basis indices")
}

/// `|0>|phi0> + |1>|phi1>` for three-qubit `phi0`, `phi1`.
pub fn from_pencil(phi0: &PureState, phi1: &PureState) -> Result<PureState> {
    let mut amps = phi0.amps().to_vec();
    amps.extend_from_slice(phi1.amps());
    PureState::new(4, amps)
}

pub fn w3() -> PureState {
    basis(3, &[1, 2, 4])
}

pub fn ghz3() -> PureState {
    basis(3, &[0, 7])
}

/// `|0>` on qubit `k`, `|00> + |11>` on the other two.
pub fn bisep3(k: usize) -> PureState {
    let others: Vec<usize> = (1..=3).filter(|&q| q != k).collect();
    let idx: Vec<usize> = (0..2)
        .map(|b| others.iter().fold(0, |acc, &q| acc | (b << (3 - q))))
        .collect();
    basis(3, &idx)
}

pub fn tri_canonical(class: TriClass) -> Result<PureState> {
    match class {
        TriClass::Zero => PureState::zero(3),
        TriClass::Sep000 => Ok(basis(3, &[0])),
        TriClass::Bisep(k @ 1..=3) => Ok(bisep3(k as usize)),
        TriClass::Bisep(k) => Err(Error::InvalidQubit { qubit: k as usize, n: 3 }),
        TriClass::W => Ok(w3()),
        TriClass::Ghz => Ok(ghz3()),
    }
}

/// Residual state `phi0` of the three-parameter family (its `phi1` is W).
pub fn ww_w_phi0(a3: C, a5: C, mu: C, plus: bool) -> Result<PureState> {
    if a3 == c(0.0) {
        return Err(Error::ConstraintViolation("a3 != 0".into()));
    }
    if a5 == c(0.0) {
        return Err(Error::ConstraintViolation("a5 != 0".into()));
    }
    let sign = if plus { 1.0 } else { -1.0 };
    let s = principal_sqrt(a3 * a5) * sign;
    let a6 = a3 + a5 + s * 2.0;
    let scale = a3.norm() + a5.norm();
    if a6.norm() <= 1e-12 * scale {
        return Err(Error::ConstraintViolation(format!(
            "a3 + a5 {} 2 sqrt(a3 a5) != 0",
            if plus { "+" } else { "-" }
        )));
    }
    let den = a3 * (a5 + s);
    if den.norm() <= 1e-12 * scale * scale {
        return Err(Error::ConstraintViolation(format!(
            "a5 {} sqrt(a3 a5) != 0",
            if plus { "+" } else { "-" }
        )));
    }
    let mut a = vec![c(0.0); 8];
    a[0] = -mu * mu / (a3 * 4.0);
    a[2] = -mu;
    a[3] = a3;
    a[4] = mu * a5 * (a3 + s) / den;
    a[5] = a5;
    a[6] = a6;
    PureState::new(3, a)
}

/// The separable-point construction `|0>|phi>|Psi> + |1>|W>` with
/// `|phi> = phi0 |0>` and `|Psi> = psi00|00> + psi01|01> + psi10|10>`.
/// Its pencil on qubit 1 contains product-type elements at
/// `x = -1/(phi0 psi01)` and `x = -1/(phi0 psi10)` with `y = 1`.
pub fn separable_point_construction(phi0: C, psi00: C, psi01: C, psi10: C) -> Result<PureState> {
    let mut a = vec![c(0.0); 8];
    a[0] = phi0 * psi00;
    a[1] = phi0 * psi01;
    a[2] = phi0 * psi10;
    from_pencil(&PureState::new(3, a)?, &w3())
}

/// Builds the representative of `spec`, checking the family constraints.
pub fn make_canonical(spec: &FamilySpec) -> Result<PureState> {
    if let Some(bad) = spec.params.keys().find(|k| !spec.allowed_params().contains(&k.as_str())) {
        return Err(Error::Parse(format!("parameter {bad:?} does not apply to this family")));
    }
    let family = match spec.family {
        Family::Tri(t) => return tri_canonical(t),
        Family::Quad(f) => f,
    };
    let st = match family {
        QuadFamily::W000_000 => basis(4, &[0, 15]),
        QuadFamily::W000_0Psi => basis(4, &[0, 13, 14]),
        QuadFamily::W000_GHZ => basis(4, &[0, 9, 10, 12, 15]),
        QuadFamily::W000_W => basis(4, &[0, 9, 10, 12]),
        QuadFamily::W0kPsi_0kPsi => basis(4, &[1, 2, 12, 15]),
        QuadFamily::W0iPsi_0jPsi => basis(4, &[0, 3, 10, 15]),
        QuadFamily::W0Psi_GHZ => basis(4, &[1, 2, 8, 15]),
        QuadFamily::W0kPsi_W => {
            let l = spec.param("lambda", c(0.0));
            // (l|0> + |1>) (-l|00> + |01> + |10>) on qubits 2..4.
            let first = PureState::new(1, vec![l, c(1.0)])?;
            let pair = PureState::new(2, vec![-l, c(1.0), c(1.0), c(0.0)])?;
            from_pencil(&first.tensor(&pair)?, &w3())?
        }
        QuadFamily::WGHZ_W => basis(4, &[1, 2, 4, 8, 15]),
        QuadFamily::WW_W => {
            let sign = spec.param("sign", c(1.0));
            if sign.im != 0.0 || sign.re.abs() != 1.0 {
                return Err(Error::ConstraintViolation("sign must be +1 or -1".into()));
            }
            let phi0 = ww_w_phi0(
                spec.param("a3", c(1.0)),
                spec.param("a5", c(1.0)),
                spec.param("mu", c(0.0)),
                sign.re > 0.0,
            )?;
            from_pencil(&phi0, &w3())?
        }
    };
    Ok(st)
}

/// A named fixture with its expected verdict on distinguished qubit 1.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub state: PureState,
    pub expected: QuadTag,
}

/// One representative per family, plus the separable-point construction.
pub fn fixtures() -> Vec<Fixture> {
    let mut out: Vec<Fixture> = QuadFamily::ALL
        .iter()
        .map(|f| Fixture {
            name: f.name().to_string(),
            state: make_canonical(&FamilySpec::quad(*f)).expect("defaults satisfy constraints"),
            expected: f.expected_tag(),
        })
        .collect();
    out.push(Fixture {
        name: "separable_points".into(),
        state: separable_point_construction(c(1.0), c(1.0), c(2.0), c(3.0)).expect("valid"),
        expected: QuadTag::W0iPsi_0jPsi(1, 2),
    });
    out
}

/// The lambda grid used for the one-parameter family.
pub fn lambda_grid() -> Vec<C> {
    vec![c(0.0), c(1.0), c(-1.0), C::new(0.0, 1.0), C::new(2.0, 3.0)]
}

/// `(a3, a5, mu, plus)` over `{1, 2, i, 1+i}^2 x {0, 1, i} x {+, -}`,
/// keeping the points that satisfy the family constraints.
pub fn ww_grid() -> Vec<(C, C, C, bool)> {
    let vals = [c(1.0), c(2.0), C::new(0.0, 1.0), C::new(1.0, 1.0)];
    let mus = [c(0.0), c(1.0), C::new(0.0, 1.0)];
    let mut out = Vec::new();
    for &a3 in &vals {
        for &a5 in &vals {
            for &mu in &mus {
                for plus in [true, false] {
                    if ww_w_phi0(a3, a5, mu, plus).is_ok() {
                        out.push((a3, a5, mu, plus));
                    }
                }
            }
        }
    }
    out
}

fn gaussian(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar unitary times log-uniform singular values times Haar unitary.
fn random_local(rng: &mut ChaCha8Rng, max_condition: f64) -> LocalOperator {
    let half = 0.5 * max_condition.ln();
    let haar = |rng: &mut ChaCha8Rng| -> [[C; 2]; 2] {
        // Gram-Schmidt on a Ginibre matrix; the positive diagonal of the
        // implied R makes the result Haar distributed.
        let (g0, g1) = ([gaussian(rng), gaussian(rng)], [gaussian(rng), gaussian(rng)]);
        let n0 = (g0[0].norm_sqr() + g0[1].norm_sqr()).sqrt();
        let u0 = [g0[0] / n0, g0[1] / n0];
        let dot = u0[0].conj() * g1[0] + u0[1].conj() * g1[1];
        let w = [g1[0] - dot * u0[0], g1[1] - dot * u0[1]];
        let n1 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        let u1 = [w[0] / n1, w[1] / n1];
        [[u0[0], u1[0]], [u0[1], u1[1]]]
    };
    let u = haar(rng);
    let v = haar(rng);
    let s = if half > 0.0 {
        [rng.random_range(-half..=half).exp(), rng.random_range(-half..=half).exp()]
    } else {
        [1.0, 1.0]
    };
    let mut m = [[c(0.0); 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            // (U diag(s) V^dagger)_{ij}
            *cell = (0..2).map(|k| u[i][k] * s[k] * v[j][k].conj()).sum();
        }
    }
    LocalOperator::new(m)
}

/// One random invertible operator per qubit with singular values in
/// `[max_condition^(-1/2), max_condition^(1/2)]`, so each condition number
/// is at most `max_condition`. Deterministic in `seed`.
pub fn random_slocc(n: usize, max_condition: f64, seed: u64) -> SloccOp {
    assert!(max_condition >= 1.0, "condition bound below 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SloccOp::new((0..n).map(|_| random_local(&mut rng, max_condition)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_parameter_family_at_zero() {
        let s = make_canonical(&FamilySpec::w0kpsi_w(c(0.0))).unwrap();
        let nz: Vec<usize> = (0..16).filter(|&i| s.amps()[i].norm() > 0.0).collect();
        assert_eq!(nz, vec![5, 6, 9, 10, 12]);
        assert!(nz.iter().all(|&i| s.amps()[i] == c(1.0)));
    }

    #[test]
    fn three_parameter_family_base_point() {
        let s = make_canonical(&FamilySpec::ww_w(c(1.0), c(1.0), c(0.0), true)).unwrap();
        let want = [0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 4.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        for (a, w) in s.amps().iter().zip(want) {
            assert_eq!(*a, c(w));
        }
    }

    #[test]
    fn excluded_branch_is_rejected() {
        let e = make_canonical(&FamilySpec::ww_w(c(1.0), c(1.0), c(0.0), false));
        assert!(matches!(e, Err(Error::ConstraintViolation(_))));
        assert!(matches!(ww_w_phi0(c(0.0), c(1.0), c(0.0), true), Err(Error::ConstraintViolation(_))));
        assert!(matches!(ww_w_phi0(c(1.0), c(0.0), c(0.0), true), Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn principal_branch() {
        assert_eq!(principal_sqrt(C::new(-4.0, -0.0)), C::new(0.0, 2.0));
        assert_eq!(principal_sqrt(c(9.0)), c(3.0));
        assert!(principal_sqrt(C::new(0.0, 1.0)).re > 0.0);
    }

    #[test]
    fn ghz4_generator() {
        assert_eq!(make_canonical(&FamilySpec::quad(QuadFamily::W000_000)).unwrap(), basis(4, &[0, 15]));
    }

    #[test]
    fn unknown_parameter_rejected() {
        let spec = FamilySpec::quad(QuadFamily::W000_000).with("lambda", c(1.0));
        assert!(matches!(make_canonical(&spec), Err(Error::Parse(_))));
    }

    #[test]
    fn family_names_parse() {
        for f in QuadFamily::ALL {
            assert_eq!(Family::parse(f.name()).unwrap(), Family::Quad(f));
        }
        assert_eq!(Family::parse("GHZ").unwrap(), Family::Tri(TriClass::Ghz));
        assert!(Family::parse("WGHZ_GHZ").is_err());
    }

    #[test]
    fn unitary_when_condition_is_one() {
        let op = random_slocc(3, 1.0, 11);
        for o in &op.ops {
            let m = o.m;
            for i in 0..2 {
                for j in 0..2 {
                    let g: num_complex::Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn deterministic_and_bounded() {
        assert_eq!(random_slocc(4, 1e3, 5), random_slocc(4, 1e3, 5));
        assert_ne!(random_slocc(4, 1e3, 5), random_slocc(4, 1e3, 6));
        for seed in 0..200 {
            let op = random_slocc(4, 1e3, seed);
            assert!(op.max_condition_number() <= 1e3 * (1.0 + 1e-9));
        }
    }

    #[test]
    fn ww_grid_filters_the_excluded_points() {
        let g = ww_grid();
        assert!(!g.is_empty());
        assert!(!g.contains(&(c(1.0), c(1.0), c(0.0), false)));
        assert!(g.contains(&(c(1.0), c(1.0), c(0.0), true)));
    }
}
