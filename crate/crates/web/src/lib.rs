//! wasm-bindgen entry points for the static demo page in `www/`.
//! Each export returns pretty JSON; errors surface as thrown strings.

use densitymod::exact::GaussRat;
use densitymod::gk::{classify, invariant_form};
use densitymod::harmonic::GradedBasis;
use densitymod::theta::{verify_theorem1, Theorem1Config};
use wasm_bindgen::prelude::*;

const MAX_N: usize = 3;
const MAX_DEGREE: u32 = 8;

fn parse(n: u32, lambda: &str) -> Result<(usize, GaussRat), String> {
    let n = n as usize;
    if !(1..=MAX_N).contains(&n) {
        return Err(format!("n must be between 1 and {MAX_N}"));
    }
    let l = lambda.parse::<GaussRat>().map_err(|e| e.to_string())?;
    Ok((n, l))
}

fn degree(d: u32) -> Result<u32, String> {
    if (1..=MAX_DEGREE).contains(&d) {
        Ok(d)
    } else {
        Err(format!("degree cap must be between 1 and {MAX_DEGREE}"))
    }
}

pub fn classify_report(n: u32, lambda: &str, max_degree: u32) -> Result<String, String> {
    let (n, l) = parse(n, lambda)?;
    let r = classify(n, &l, degree(max_degree)?).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&r).map_err(|e| e.to_string())
}

/// Invariant Hermitian form on all K-types of degree ≤ `max_degree`.
pub fn form_report(n: u32, lambda: &str, max_degree: u32) -> Result<String, String> {
    let (n, l) = parse(n, lambda)?;
    let cap = degree(max_degree)? + 1;
    let basis = GradedBasis::new(n, cap, GaussRat::zero()).map_err(|e| e.to_string())?;
    let labels: Vec<i32> = basis.nodes().iter().filter(|nd| nd.degree < cap).map(|nd| nd.label).collect();
    let r = invariant_form(n, cap, &l, &labels).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&r).map_err(|e| e.to_string())
}

pub fn equivalence_report(n: u32, lambda: &str, grid: u32, seed: u32) -> Result<String, String> {
    let (n, l) = parse(n, lambda)?;
    let mut cfg = Theorem1Config::new(n, l);
    cfg.grid = grid.clamp(1, 500) as usize;
    cfg.probes = 3;
    cfg.seed = seed as u64;
    let r = verify_theorem1(&cfg).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&r).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = classifyJson)]
pub fn classify_json(n: u32, lambda: &str, max_degree: u32) -> Result<String, JsValue> {
    classify_report(n, lambda, max_degree).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = formJson)]
pub fn form_json(n: u32, lambda: &str, max_degree: u32) -> Result<String, JsValue> {
    form_report(n, lambda, max_degree).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = equivalenceJson)]
pub fn equivalence_json(n: u32, lambda: &str, grid: u32, seed: u32) -> Result<String, JsValue> {
    equivalence_report(n, lambda, grid, seed).map_err(|e| JsValue::from_str(&e))
}
