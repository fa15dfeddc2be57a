//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use slocc::canonical::{
    fixtures, lambda_grid, make_canonical, random_slocc, separable_point_construction, tri_canonical, ww_grid,
    FamilySpec, QuadFamily,
};
use slocc::fuzz::{fuzz_empty, FuzzConfig};
use slocc::oracle::{classify3_by_ranks, profile_by_sampling};
use slocc::pencil::ProjectivePoint;
use slocc::tri::ghz_invariant;
use slocc::{analyze_span, apply_slocc, classify3, classify4, decompose, quartic, Error, PureState, TriClass};

const EPS: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn gaussian(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> PureState {
    let amps: Vec<C> = (0..1 << n).map(|_| gaussian(rng)).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    PureState::new(n, amps.into_iter().map(|z| z / norm).collect()).unwrap()
}

/// Number of the first `seeds` random local images of `state` whose
/// verdict differs from `expected`.
fn orbit_misses(state: &PureState, expected: &str, seeds: u64) -> usize {
    (0..seeds)
        .into_par_iter()
        .filter(|&seed| {
            let moved = apply_slocc(state, &random_slocc(4, 1e3, seed)).unwrap();
            classify4(&moved, 1, EPS).map(|v| v.tag.to_string()).ok().as_deref() != Some(expected)
        })
        .count()
}

fn restored_classes() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, PureState, String)> = Vec::new();
    for l in lambda_grid() {
        let s = make_canonical(&FamilySpec::w0kpsi_w(l)).unwrap();
        cases.push((format!("W0kPsi_W lambda={l}"), s, QuadFamily::W0kPsi_W.expected_tag().to_string()));
    }
    for (a3, a5, mu, plus) in ww_grid() {
        let s = make_canonical(&FamilySpec::ww_w(a3, a5, mu, plus)).unwrap();
        cases.push((format!("WW_W {a3} {a5} {mu} {plus}"), s, QuadFamily::WW_W.expected_tag().to_string()));
    }
    let mut misses = 0;
    let mut first = None;
    for (name, s, want) in &cases {
        let m = orbit_misses(s, want, 500);
        if m > 0 && first.is_none() {
            first = Some(name.clone());
        }
        misses += m;
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        misses == 0 && secs < 60.0,
        format!(
            "{} grid points x 500 local images, {misses} misses{}, {secs:.1} s",
            cases.len(),
            first.map(|f| format!(" (first at {f})")).unwrap_or_default()
        ),
    )
}

fn ghz_pencils_not_empty() -> Outcome {
    let free = fuzz_empty(&FuzzConfig::new(10_000, 7), false).unwrap();
    let pinned = fuzz_empty(
        &FuzzConfig {
            pin_ghz: true,
            exact: true,
            ..FuzzConfig::new(1000, 11)
        },
        false,
    )
    .unwrap();
    let dev = pinned.max_y4_deviation.unwrap_or(f64::INFINITY);
    let exact_failures = pinned.exact_y4_failures.unwrap_or(usize::MAX);
    outcome(
        free.all_ghz_count == 0 && free.error_count == 0 && dev <= 1e-12 && exact_failures == 0,
        format!(
            "10^4 pencils: {} all-GHZ, {} errors; pinned: max |c4 - 1| = {dev:.1e}, {exact_failures} exact mismatches",
            free.all_ghz_count, free.error_count
        ),
    )
}

fn three_qubit_oracle() -> Outcome {
    let classes = [
        TriClass::Sep000,
        TriClass::Bisep(1),
        TriClass::Bisep(2),
        TriClass::Bisep(3),
        TriClass::W,
        TriClass::Ghz,
    ];
    let total = 10_000u64;
    let disagreements: usize = (0..total)
        .into_par_iter()
        .filter(|&i| {
            let base = tri_canonical(classes[(i % 6) as usize]).unwrap();
            let s = apply_slocc(&base, &random_slocc(3, 1e3, 1_000_000 + i)).unwrap();
            classify3(&s, EPS).ok() != classify3_by_ranks(&s, EPS).ok()
        })
        .count();
    outcome(disagreements == 0, format!("{total} local images of the six classes, {disagreements} disagreements"))
}

fn quartic_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (p0, p1) = (random_state(3, &mut rng), random_state(3, &mut rng));
        let form = quartic(&p0, &p1).unwrap();
        for _ in 0..20 {
            let (x, y) = (gaussian(&mut rng), gaussian(&mut rng));
            let v = p0.combine(x, &p1, y).unwrap();
            let direct = ghz_invariant(v.amps());
            // The invariant is homogeneous of degree four, so |v|^4 is its
            // natural size.
            let scale = direct.norm().max(v.norm().powi(4));
            worst = worst.max((form.eval(x, y) - direct).norm() / scale);
        }
    }
    outcome(worst <= 1e-10, format!("1000 pencils x 20 points, worst relative error {worst:.1e}"))
}

fn sampling_oracle() -> Outcome {
    let mut mismatches = Vec::new();
    for f in fixtures() {
        let d = decompose(&f.state, 1).unwrap();
        let fast = analyze_span(&d.phi0, &d.phi1, EPS).unwrap();
        let slow = profile_by_sampling(&d.phi0, &d.phi1, 2000, EPS).unwrap();
        if fast.generic_type != slow.generic_type || fast.class_multiset() != slow.class_multiset() {
            mismatches.push(f.name.clone());
        }
    }
    let (phi, psi00, psi01, psi10) = (C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(2.0, 0.0), C::new(3.0, 0.0));
    let s = separable_point_construction(phi, psi00, psi01, psi10).unwrap();
    let d = decompose(&s, 1).unwrap();
    let profile = analyze_span(&d.phi0, &d.phi1, EPS).unwrap();
    let mut worst: f64 = 0.0;
    for x in [-1.0 / (phi * psi01), -1.0 / (phi * psi10)] {
        let target = ProjectivePoint::new(x, C::new(1.0, 0.0), 1);
        let nearest = profile
            .exceptional
            .iter()
            .filter(|e| matches!(e.class, TriClass::Bisep(_)))
            .map(|e| e.point.chordal_distance(&target))
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(nearest);
    }
    outcome(
        mismatches.is_empty() && worst <= 1e-6,
        format!(
            "{} fixtures, mismatches {mismatches:?}; separable points within chordal {worst:.1e}",
            fixtures().len()
        ),
    )
}

fn scale_invariance() -> Outcome {
    let mut changed = Vec::new();
    let verdicts = |s: &PureState| -> Vec<String> { (1..=4).map(|q| classify4(s, q, EPS).unwrap().tag.to_string()).collect() };
    for f in fixtures() {
        let base = verdicts(&f.state);
        for k in [1e6, 1e-6] {
            if verdicts(&f.state.scaled(C::new(k, 0.0))) != base {
                changed.push(format!("{} x {k:e}", f.name));
            }
        }
    }
    for class in [TriClass::Sep000, TriClass::Bisep(1), TriClass::Bisep(2), TriClass::Bisep(3), TriClass::W, TriClass::Ghz] {
        let s = tri_canonical(class).unwrap();
        for k in [1e6, 1e-6] {
            if classify3(&s.scaled(C::new(k, 0.0)), EPS).unwrap() != class {
                changed.push(format!("{class} x {k:e}"));
            }
        }
    }
    outcome(changed.is_empty(), format!("fixtures at 10^6 and 10^-6, changed verdicts {changed:?}"))
}

fn random_states_never_contradict() -> Outcome {
    let tally: Vec<Result<String, String>> = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + i);
            let s = random_state(4, &mut rng);
            match classify4(&s, 1, EPS) {
                Ok(v) => Ok(v.tag.label().to_string()),
                Err(e @ Error::InternalContradiction(_)) => Err(format!("contradiction: {e}")),
                Err(e) => Err(format!("other error: {e}")),
            }
        })
        .collect();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = 0;
    for t in &tally {
        match t {
            Ok(label) if slocc::QuadTag::LABELS.contains(&label.as_str()) => *counts.entry(label.clone()).or_default() += 1,
            _ => failures += 1,
        }
    }
    outcome(failures == 0, format!("10^4 random states, {failures} failures, tally {counts:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("restored classes survive local operators", restored_classes),
        ("no pencil of two GHZ states is GHZ everywhere", ghz_pencils_not_empty),
        ("three-qubit classifier matches rank oracle", three_qubit_oracle),
        ("quartic matches direct invariant evaluation", quartic_identity),
        ("pencil profile matches dense sampling", sampling_oracle),
        ("verdicts are scale invariant", scale_invariance),
        ("random states never hit the all-GHZ assertion", random_states_never_contradict),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.pass;
        println!("criterion {} {}: {name} | {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
