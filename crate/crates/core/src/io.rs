//! JSON formats: state files `{"n": int, "amps": [[re, im], ...]}` and
//! serde helpers for complex numbers.
//!
//! Numbers are read from their literal text, so a decimal such as `0.1` is
//! kept both as the nearest `f64` and as the exact rational `1/10`. Entries
//! may also be strings holding a rational, e.g. `"-1/3"`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::Serializer;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::GaussRat;
use crate::qstate::PureState;

pub fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&z.re)?;
    seq.serialize_element(&z.im)?;
    seq.end()
}

pub fn ser_complex_slice<S: Serializer>(zs: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(zs.len()))?;
    for z in zs {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// A state read from JSON, with the exact rational reading of every entry.
#[derive(Debug, Clone)]
pub struct ParsedState {
    pub state: PureState,
    pub exact: Vec<GaussRat>,
}

/// Parses a decimal literal (optionally with exponent) or `p/q` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i64;
    if shift.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, shift.unsigned_abs() as usize);
    let mut r = if shift >= 0 {
        BigRational::from_integer(all * pow)
    } else {
        BigRational::new(all, pow)
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn entry(v: &Value) -> Result<(BigRational, f64)> {
    match v {
        Value::Number(n) => {
            let text = n.to_string();
            let f: f64 = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {text}")))?;
            Ok((parse_rational(&text)?, f))
        }
        Value::String(s) => {
            let r = parse_rational(s)?;
            let f = rational_to_f64(&r);
            Ok((r, f))
        }
        other => Err(Error::Parse(format!("expected a number, found {other}"))),
    }
}

pub fn parse_state_value(v: &Value) -> Result<ParsedState> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("state must be a JSON object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))? as usize;
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedQubitCount(n));
    }
    let amps = obj
        .get("amps")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"amps\"".into()))?;
    if amps.len() != 1 << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: amps.len(),
        });
    }
    let mut floats = Vec::with_capacity(amps.len());
    let mut exact = Vec::with_capacity(amps.len());
    for a in amps {
        let (re, im) = match a {
            Value::Array(pair) if pair.len() == 2 => (entry(&pair[0])?, entry(&pair[1])?),
            Value::Array(_) => return Err(Error::Parse("amplitude must be [re, im]".into())),
            scalar => (entry(scalar)?, (BigRational::zero(), 0.0)),
        };
        if !re.1.is_finite() || !im.1.is_finite() {
            return Err(Error::Parse("amplitude is not finite".into()));
        }
        floats.push(Complex64::new(re.1, im.1));
        exact.push(GaussRat::new(re.0, im.0));
    }
    Ok(ParsedState {
        state: PureState::new(n, floats)?,
        exact,
    })
}

pub fn parse_state(text: &str) -> Result<ParsedState> {
    let v: Value = serde_json::from_str(text)?;
    parse_state_value(&v)
}

pub fn state_to_value(state: &PureState) -> Value {
    let amps: Vec<Value> = state
        .amps()
        .iter()
        .map(|z| serde_json::json!([clean(z.re), clean(z.im)]))
        .collect();
    serde_json::json!({ "n": state.n(), "amps": amps })
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Exact state as JSON, with non-integer entries written as `"p/q"`.
pub fn exact_state_to_value(n: usize, amps: &[GaussRat]) -> Value {
    let num = |r: &BigRational| -> Value {
        if r.denom().is_one() {
            serde_json::from_str(&r.numer().to_string()).unwrap_or(Value::Null)
        } else {
            Value::String(format!("{}/{}", r.numer(), r.denom()))
        }
    };
    let amps: Vec<Value> = amps.iter().map(|z| serde_json::json!([num(&z.re), num(&z.im)])).collect();
    serde_json::json!({ "n": n, "amps": amps })
}
