//! Random search for a pencil of two GHZ-class states containing only GHZ
//! states. There is none: the y^4 coefficient of the quartic equals the
//! invariant of `phi1`, and a quartic with nonzero coefficients somewhere
//! has roots, each of them a non-GHZ element of the pencil.

use std::collections::BTreeMap;

use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{ghz3, random_slocc};
use crate::error::{Error, Result};
use crate::exact::{exact_quartic, GaussRat};
use crate::pencil::{analyze_span, quartic};
use crate::qstate::{apply_slocc, PureState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub eps: f64,
    /// Bound on the condition number of each local operator.
    pub max_condition: f64,
    /// Use the unnormalised `|000> + |111>` itself as `phi1`.
    pub pin_ghz: bool,
    /// Check the y^4 coefficient in exact arithmetic.
    pub exact: bool,
}

impl FuzzConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        FuzzConfig {
            trials,
            seed,
            eps: crate::DEFAULT_EPS,
            max_condition: 1e3,
            pin_ghz: false,
            exact: false,
        }
    }
}

/// What one trial saw.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    /// Exceptional classes, sorted, joined by commas; empty when the pencil
    /// is GHZ everywhere.
    pub exceptional: String,
    /// `|c4 - I(phi1)|` relative to `|I(phi1)|`, when `phi1` is pinned.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y4_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y4_exact_is_one: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub trials: usize,
    pub seed: u64,
    pub all_ghz_count: usize,
    pub error_count: usize,
    /// Number of pencils per exceptional class multiset.
    pub exceptional_distribution: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_y4_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_y4_failures: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outcomes: Vec<TrialOutcome>,
}

impl FuzzReport {
    /// No all-GHZ pencil, no error, and every pinned y^4 check passed.
    pub fn passed(&self, y4_tolerance: f64) -> bool {
        self.all_ghz_count == 0
            && self.error_count == 0
            && self.max_y4_deviation.is_none_or(|d| d <= y4_tolerance)
            && self.exact_y4_failures.is_none_or(|n| n == 0)
    }
}

/// Seeds for the two operators of a trial, decorrelated from neighbouring
/// trials and from other base seeds.
fn trial_seeds(seed: u64, trial: usize) -> (u64, u64) {
    let mix = |mut z: u64| {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let base = mix(seed ^ mix(trial as u64));
    (base, mix(base))
}

fn unnormalised_ghz() -> PureState {
    let mut a = vec![C::new(0.0, 0.0); 8];
    a[0] = C::new(1.0, 0.0);
    a[7] = C::new(1.0, 0.0);
    PureState::new(3, a).expect("eight amplitudes")
}

fn run_trial(cfg: &FuzzConfig, trial: usize) -> TrialOutcome {
    let (s0, s1) = trial_seeds(cfg.seed, trial);
    let ghz = ghz3();
    let phi0 = apply_slocc(&ghz, &random_slocc(3, cfg.max_condition, s0)).expect("three-qubit operator");
    let phi1 = if cfg.pin_ghz {
        unnormalised_ghz()
    } else {
        apply_slocc(&ghz, &random_slocc(3, cfg.max_condition, s1)).expect("three-qubit operator")
    };
    let mut out = TrialOutcome {
        trial,
        exceptional: String::new(),
        y4_deviation: None,
        y4_exact_is_one: None,
        error: None,
    };
    if cfg.pin_ghz {
        match quartic(&phi0, &phi1) {
            Ok(q) => out.y4_deviation = Some((q.c[4] - C::new(1.0, 0.0)).norm()),
            Err(e) => out.error = Some(e.to_string()),
        }
        if cfg.exact {
            let exact = |s: &PureState| s.amps().iter().map(|&z| GaussRat::from_complex(z)).collect::<Option<Vec<_>>>();
            out.y4_exact_is_one = match (exact(&phi0), exact(&phi1)) {
                (Some(a), Some(b)) => exact_quartic(&a, &b).ok().map(|c| c[4] == GaussRat::from_ints(1, 0)),
                _ => Some(false),
            };
        }
    }
    match analyze_span(&phi0, &phi1, cfg.eps) {
        Ok(p) => {
            out.exceptional = p
                .class_multiset()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

/// Runs the trials on the rayon pool; the report does not depend on the
/// number of threads. `keep_outcomes` retains the per-trial records.
pub fn fuzz_empty(cfg: &FuzzConfig, keep_outcomes: bool) -> Result<FuzzReport> {
    if cfg.trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect();
    let mut dist = BTreeMap::new();
    let mut all_ghz = 0;
    let mut errors = 0;
    for o in &outcomes {
        if o.error.is_some() {
            errors += 1;
            continue;
        }
        if o.exceptional.is_empty() {
            all_ghz += 1;
        }
        *dist.entry(o.exceptional.clone()).or_insert(0) += 1;
    }
    let max_y4 = cfg.pin_ghz.then(|| {
        outcomes
            .iter()
            .filter_map(|o| o.y4_deviation)
            .fold(0.0, f64::max)
    });
    let exact_failures = (cfg.pin_ghz && cfg.exact)
        .then(|| outcomes.iter().filter(|o| o.y4_exact_is_one != Some(true)).count());
    Ok(FuzzReport {
        trials: cfg.trials,
        seed: cfg.seed,
        all_ghz_count: all_ghz,
        error_count: errors,
        exceptional_distribution: dist,
        max_y4_deviation: max_y4,
        exact_y4_failures: exact_failures,
        outcomes: if keep_outcomes { outcomes } else { Vec::new() },
    })
}
