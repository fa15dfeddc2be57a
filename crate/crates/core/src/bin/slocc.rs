//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//! Exit status: 0 on success, 2 when a four-qubit state is degenerate,
//! 1 on any error.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C;
use serde_json::{json, Value};

use slocc::canonical::{make_canonical, random_slocc, Family, FamilySpec};
use slocc::exact::{analyze_span_exact, classify3_exact, classify4_exact, decompose_exact, exact_quartic, GaussRat};
use slocc::fuzz::{fuzz_empty, FuzzConfig};
use slocc::io::{parse_state, state_to_value, ParsedState};
use slocc::pencil::{analyze_span, clause_quadratics, quartic, quartic_roots};
use slocc::qstate::{apply_slocc, classify2, decompose, span_dimension};
use slocc::quad::{canonical_label, classify4, decide_profile, QuadClass};
use slocc::tri::{classify3, w_clauses};
use slocc::{Error, Result, DEFAULT_EPS};

#[derive(Parser)]
#[command(name = "slocc", version, about = "SLOCC classification of 2-, 3- and 4-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Relative tolerance for every zero and rank decision.
    #[arg(long, default_value_t = DEFAULT_EPS, value_parser = positive_eps)]
    eps: f64,
    /// Use exact Gaussian-rational arithmetic on the literal input values.
    #[arg(long)]
    exact: bool,
    /// Extra detail in the JSON output.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the state in FILE (or stdin when FILE is omitted or "-").
    Classify {
        file: Option<String>,
        /// Distinguished qubit for four-qubit states: 1..4 or "all".
        #[arg(long, default_value = "1", value_parser = parse_distinguished)]
        distinguished: Distinguished,
        #[command(flatten)]
        common: Common,
    },
    /// Write a canonical family member as state JSON.
    Generate {
        /// Family tag, e.g. W0kPsi_W, WW_W, W000_000, GHZ, Bisep(2).
        #[arg(long)]
        family: String,
        /// Family parameter as name=re[,im]; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, C)>,
        /// Apply a random local operator (condition number at most 1e3)
        /// drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Search pencils of two random GHZ-class states for one that is GHZ
    /// everywhere.
    FuzzEmpty {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use |000> + |111> itself as the second spanning state and check
        /// that the y^4 coefficient of the quartic is 1.
        #[arg(long)]
        pin_ghz: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Dump the pencil analysis behind a four-qubit verdict, or the clause
    /// values behind a three-qubit one.
    Explain {
        file: Option<String>,
        #[arg(long, default_value = "1", value_parser = parse_distinguished)]
        distinguished: Distinguished,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy)]
enum Distinguished {
    One(usize),
    All,
}

fn parse_distinguished(s: &str) -> std::result::Result<Distinguished, String> {
    match s {
        "all" => Ok(Distinguished::All),
        _ => match s.parse::<usize>() {
            Ok(q @ 1..=4) => Ok(Distinguished::One(q)),
            _ => Err("expected 1, 2, 3, 4 or \"all\"".into()),
        },
    }
}

fn positive_eps(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(e) if e > 0.0 && e < 1.0 => Ok(e),
        _ => Err("expected a number in (0, 1)".into()),
    }
}

fn parse_param(s: &str) -> std::result::Result<(String, C), String> {
    let (name, value) = s.split_once('=').ok_or("expected name=re[,im]")?;
    let mut parts = value.split(',');
    let mut num = |what: &str| -> std::result::Result<f64, String> {
        parts
            .next()
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map_or(Ok(0.0), |t| t.parse().map_err(|_| format!("bad {what} part in {s:?}")))
    };
    let re = num("real")?;
    let im = num("imaginary")?;
    if parts.next().is_some() {
        return Err(format!("too many components in {s:?}"));
    }
    Ok((name.trim().to_string(), C::new(re, im)))
}

fn read_state(file: Option<&str>) -> Result<ParsedState> {
    let text = match file {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
            buf
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))?,
    };
    parse_state(&text)
}

/// JSON plus whether the verdict is degenerate.
type Output = (Value, bool);

fn classify_quad(p: &ParsedState, q: usize, c: &Common) -> Result<QuadClass> {
    if c.exact {
        classify4_exact(&p.exact, q)
    } else {
        classify4(&p.state, q, c.eps)
    }
}

fn cmd_classify(file: Option<&str>, which: Distinguished, c: &Common) -> Result<Output> {
    let p = read_state(file)?;
    match p.state.n() {
        2 => Ok((json!({ "n": 2, "class": classify2(&p.state, c.eps)? }), false)),
        3 => {
            let class = if c.exact {
                classify3_exact(&p.exact)?
            } else {
                classify3(&p.state, c.eps)?
            };
            let mut v = json!({ "n": 3, "class": class });
            if c.verbose && !c.exact {
                v["clauses"] = serde_json::to_value(w_clauses(p.state.amps(), c.eps))?;
            }
            Ok((v, false))
        }
        4 => match which {
            Distinguished::One(q) => {
                let verdict = classify_quad(&p, q, c)?;
                let degenerate = verdict.tag.is_degenerate();
                Ok((serde_json::to_value(&verdict)?, degenerate))
            }
            Distinguished::All => {
                let verdicts = (1..=4).map(|q| classify_quad(&p, q, c)).collect::<Result<Vec<_>>>()?;
                let label = canonical_label(&verdicts);
                let rows = serde_json::to_value(&verdicts)?;
                let degenerate = label == "Degenerate";
                Ok((json!({ "class": label, "verdicts": rows }), degenerate))
            }
        },
        n => Err(Error::UnsupportedQubitCount(n)),
    }
}

fn cmd_generate(family: &str, params: &[(String, C)], seed: Option<u64>) -> Result<Output> {
    let mut spec = FamilySpec::new(Family::parse(family)?);
    for (name, value) in params {
        spec = spec.with(name, *value);
    }
    let mut state = make_canonical(&spec)?;
    if let Some(seed) = seed {
        state = apply_slocc(&state, &random_slocc(state.n(), 1e3, seed))?;
    }
    Ok((state_to_value(&state), false))
}

fn cmd_fuzz(trials: u64, seed: u64, pin_ghz: bool, c: &Common) -> Result<Output> {
    let cfg = FuzzConfig {
        eps: c.eps,
        pin_ghz,
        exact: c.exact,
        ..FuzzConfig::new(trials as usize, seed)
    };
    let report = fuzz_empty(&cfg, c.verbose)?;
    if !report.passed(1e-12) {
        eprintln!(
            "fuzz-empty: {} all-GHZ pencils, {} errors",
            report.all_ghz_count, report.error_count
        );
        emit(&serde_json::to_value(&report)?);
        return Err(Error::InternalContradiction("emptiness check failed".into()));
    }
    Ok((serde_json::to_value(&report)?, false))
}

fn exact_value(z: &GaussRat) -> Value {
    json!([z.re.to_string(), z.im.to_string()])
}

fn cmd_explain(file: Option<&str>, which: Distinguished, c: &Common) -> Result<Output> {
    let p = read_state(file)?;
    match p.state.n() {
        3 => {
            let class = classify3(&p.state, c.eps)?;
            Ok((json!({ "n": 3, "class": class, "clauses": w_clauses(p.state.amps(), c.eps) }), false))
        }
        4 => {
            let qs: Vec<usize> = match which {
                Distinguished::One(q) => vec![q],
                Distinguished::All => (1..=4).collect(),
            };
            let mut rows = Vec::new();
            let mut degenerate = false;
            for q in qs {
                let verdict = classify_quad(&p, q, c)?;
                degenerate |= verdict.tag.is_degenerate();
                let d = decompose(&p.state, q)?;
                let mut row = json!({
                    "distinguished": q,
                    "class": verdict.tag.label(),
                    "cuts": verdict.tag.cuts(),
                    "phi0": state_to_value(&d.phi0),
                    "phi1": state_to_value(&d.phi1),
                    "span_dimension": span_dimension(&d, c.eps)?,
                });
                if verdict.tag.is_degenerate() {
                    row["degenerate"] = json!(verdict.tag.to_string());
                } else if c.exact {
                    let (e0, e1) = decompose_exact(&p.exact, q);
                    let coeffs = exact_quartic(&e0, &e1)?;
                    let profile = analyze_span_exact(&e0, &e1)?;
                    row["quartic"] = Value::Array(coeffs.iter().map(exact_value).collect());
                    row["decision"] = json!(decide_profile(&profile)?.to_string());
                    row["profile"] = serde_json::to_value(&profile)?;
                } else {
                    let form = quartic(&d.phi0, &d.phi1)?;
                    let profile = analyze_span(&d.phi0, &d.phi1, c.eps)?;
                    row["quartic"] = serde_json::to_value(&form)?["c"].clone();
                    row["quartic_identically_zero"] = json!(form.is_identically_zero(c.eps));
                    if !form.is_identically_zero(c.eps) {
                        row["quartic_roots"] = serde_json::to_value(quartic_roots(&form, c.eps)?)?;
                    }
                    row["clause_quadratics"] = serde_json::to_value(clause_quadratics(&d.phi0, &d.phi1)?)?;
                    row["decision"] = json!(decide_profile(&profile)?.to_string());
                    row["profile"] = serde_json::to_value(&profile)?;
                }
                rows.push(row);
            }
            Ok((json!({ "n": 4, "explanations": rows }), degenerate))
        }
        n => Err(Error::UnsupportedQubitCount(n)),
    }
}

/// Pretty JSON on stdout. A reader that closed the pipe early is not an
/// error worth reporting.
fn emit(value: &Value) {
    let text = serde_json::to_string_pretty(value).unwrap_or_else(|_| "null".into());
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    // Usage errors exit 1 like any other error; 2 is reserved for
    // degenerate verdicts.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Classify { file, distinguished, common } => cmd_classify(file.as_deref(), *distinguished, common),
        Command::Generate { family, params, seed } => cmd_generate(family, params, *seed),
        Command::FuzzEmpty {
            trials,
            seed,
            pin_ghz,
            common,
        } => cmd_fuzz(*trials, *seed, *pin_ghz, common),
        Command::Explain { file, distinguished, common } => cmd_explain(file.as_deref(), *distinguished, common),
    };
    match result {
        Ok((value, degenerate)) => {
            emit(&value);
            if degenerate {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
