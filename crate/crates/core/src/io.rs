//! JSON forms of polynomials, root measures and atom triplets.
//!
//! Polynomials: `{"degree": d, "roots": ["1", "-1/2", ...]}` or
//! `{"coeffs_monic_desc": ["1", "-3", "2"]}`, with rationals as strings
//! (bare JSON integers are accepted on input).

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::measures::{AtomTriplet, EmpiricalMeasure};
use crate::polycore::MonicPoly;
use crate::rational::{format_rational, parse_rational, Rational};

fn rational_list(v: &Value, key: &str) -> Result<Vec<Rational>> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("\"{key}\" must be an array")))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
            _ => Err(Error::Parse(format!("\"{key}\" entries must be rational strings, got {x}"))),
        })
        .collect()
}

pub fn poly_from_value(v: &Value) -> Result<MonicPoly> {
    if v.get("coeffs_monic_desc").is_some() {
        return MonicPoly::from_coeffs(rational_list(v, "coeffs_monic_desc")?);
    }
    if v.get("roots").is_some() {
        let roots = rational_list(v, "roots")?;
        if let Some(d) = v.get("degree") {
            let d = d.as_u64().ok_or_else(|| Error::Parse("\"degree\" must be an integer".into()))?;
            if d as usize != roots.len() {
                return Err(Error::Parse(format!("degree {d} but {} roots", roots.len())));
            }
        }
        return MonicPoly::from_roots(&roots);
    }
    Err(Error::Parse("polynomial needs \"roots\" or \"coeffs_monic_desc\"".into()))
}

pub fn poly_from_json(s: &str) -> Result<MonicPoly> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    poly_from_value(&v)
}

fn strings(r: &[Rational]) -> Vec<String> {
    r.iter().map(format_rational).collect()
}

pub fn poly_to_value(p: &MonicPoly) -> Value {
    json!({ "coeffs_monic_desc": strings(p.coeffs()) })
}

/// Compact coefficient form.
pub fn poly_to_json(p: &MonicPoly) -> String {
    poly_to_value(p).to_string()
}

/// `[{"root": "r", "mult": m}, ...]`; irrational roots as decimal approximations.
pub fn measure_to_value(m: &EmpiricalMeasure) -> Value {
    Value::Array(
        m.entries()
            .iter()
            .map(|(r, k)| json!({ "root": r.to_string(), "mult": k }))
            .collect(),
    )
}

pub fn triplets_to_value(t: &[AtomTriplet]) -> Value {
    Value::Array(
        t.iter()
            .map(|a| {
                json!({
                    "alpha": format_rational(&a.alpha),
                    "beta": format_rational(&a.beta),
                    "gamma": format_rational(&a.gamma),
                    "multiplicity": a.multiplicity,
                    "mass": format_rational(&a.mass),
                    "cdf_at_gamma": a.cdf_at_gamma.as_ref().map(format_rational),
                })
            })
            .collect(),
    )
}
