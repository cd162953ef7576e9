//! Browser bindings: the same tables the command line prints, as JSON
//! strings for the demo page in www/ to render. Inputs are clamped to
//! interactive sizes rather than letting a stray keystroke freeze the tab.

use std::collections::BTreeMap;

use wasm_bindgen::prelude::*;

use gammacf::numkit::{const_gamma, rat_to_dec};
use gammacf::report::{self, Format, Table};
use gammacf::{contfrac, linforms, sequences, Rat};

const MAX_N: u64 = 300;
const MAX_DEPTH: u64 = 120;
const MAX_DIGITS: usize = 100;

fn clamp_digits(digits: u32) -> usize {
    (digits as usize).clamp(10, MAX_DIGITS)
}

/// Main approximant table with decimal values and the error against γ.
#[wasm_bindgen]
pub fn approximants(n_max: u32, digits: u32) -> Result<String, JsError> {
    let n_max = (n_max as u64).min(MAX_N);
    let p = clamp_digits(digits);
    let g = const_gamma(p).map_err(|e| JsError::new(&e.to_string()))?;
    let mut table = Table::new(
        "approximants",
        &[("n", true), ("q", false), ("p_num", false), ("p_den", false), ("value", false), ("err", false)],
    );
    for pair in sequences::gamma_table_rec(n_max) {
        let value = &pair.p / Rat::from_integer(pair.q.clone());
        let dec = rat_to_dec(&value, p);
        let err = (&dec - &g).abs();
        table.push(vec![
            pair.n.to_string(),
            pair.q.to_string(),
            pair.p.numer().to_string(),
            pair.p.denom().to_string(),
            dec.to_string(),
            err.to_string(),
        ]);
    }
    Ok(report::render(&[table], Format::Json))
}

/// Continued-fraction elements and convergents for one family, in the
/// same shape as the command-line JSON dump.
#[wasm_bindgen]
pub fn cf_dump(family: &str, a: &str, z: &str, depth: u32) -> Result<String, JsError> {
    let depth = (depth as u64).min(MAX_DEPTH);
    let mut params = BTreeMap::new();
    for (name, text) in [("a", a), ("z", z)] {
        let text = text.trim();
        if !text.is_empty() {
            params.insert(name.to_string(), parse_rat(text)?);
        }
    }
    let mut cf = contfrac::cf_family(family, &params).map_err(|e| JsError::new(&e.to_string()))?;
    let elements = cf.elements(depth).map_err(|e| JsError::new(&e.to_string()))?;
    let convergents = cf.convergents(depth).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(report::render(&report::cf_tables(&elements, &convergents), Format::Json))
}

/// Evaluate a term-spec (the same JSON the command line takes) at one n.
#[wasm_bindgen]
pub fn linform_eval(spec_json: &str, n: u32, digits: u32) -> Result<String, JsError> {
    let n = (n as u64).min(MAX_N);
    let p = clamp_digits(digits);
    let spec: linforms::TermSpec =
        serde_json::from_str(spec_json).map_err(|e| JsError::new(&format!("ill-formed term spec: {e}")))?;
    if !linforms::spec_wellformed(&spec, n) {
        return Err(JsError::new(&format!("term spec is not well formed at n = {n}")));
    }
    let form = linforms::linform(&spec, n).map_err(|e| JsError::new(&e.to_string()))?;
    let value = linforms::linform_value(&spec, n, p).map_err(|e| JsError::new(&e.to_string()))?;
    let mut table = Table::new(
        "linform",
        &[("n", true), ("q_num", false), ("q_den", false), ("p_num", false), ("p_den", false), ("F", false)],
    );
    table.push(vec![
        n.to_string(),
        form.q.numer().to_string(),
        form.q.denom().to_string(),
        form.p.numer().to_string(),
        form.p.denom().to_string(),
        value.to_string(),
    ]);
    let mut out = report::render(&[table], Format::Json);
    if !spec.is_proper() {
        out = format!("{{\"warning\": \"improper: gamma coefficient is zero\", \"rows\": {out}}}");
    }
    Ok(out)
}

fn parse_rat(s: &str) -> Result<Rat, JsError> {
    let bad = || JsError::new(&format!("invalid rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let num: gammacf::Int = num.trim().parse().map_err(|_| bad())?;
    let den: gammacf::Int = den.trim().parse().map_err(|_| bad())?;
    if den == 0.into() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}
