//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each entry point takes the same text formats as the `tsr` command line
//! and returns a JSON string. The plain functions are usable natively; the
//! `wasm_bindgen` wrappers turn errors into JavaScript exceptions.

use serde_json::json;
use tsr_core::census::{self, CensusOptions};
use tsr_core::{Field, MatrixFq, TsrSpec, TsrState};
use wasm_bindgen::prelude::*;

/// Larger censuses would freeze the page.
pub const DEMO_SPEC_LIMIT: u128 = 200_000;

fn spec(q: &str, c: &str, b: &str) -> Result<TsrSpec, String> {
    let field = Field::parse(q).map_err(|e| e.to_string())?;
    let c = field.parse_elem_list(c).map_err(|e| e.to_string())?;
    let b = MatrixFq::parse(&field, b).map_err(|e| e.to_string())?;
    TsrSpec::new(c, b).map_err(|e| e.to_string())
}

pub fn charpoly_json(q: &str, c: &str, b: &str) -> Result<String, String> {
    let spec = spec(q, c, b)?;
    let class = spec.classify().map_err(|e| e.to_string())?;
    let direct = spec.char_poly_direct();
    let structural = spec.char_poly_structural();
    Ok(json!({
        "m": spec.m(),
        "n": spec.n(),
        "companion": spec.block_companion().to_string(),
        "direct": direct.to_string(),
        "structural": structural.to_string(),
        "agree": direct == structural,
        "irreducible": class.irreducible,
        "primitive": class.primitive,
    })
    .to_string())
}

pub fn sequence_json(q: &str, c: &str, b: &str, state: &str, steps: u32) -> Result<String, String> {
    let spec = spec(q, c, b)?;
    let field = spec.field().clone();
    let start = TsrState::parse(&field, state).map_err(|e| e.to_string())?;
    let mut states = vec![start.format(&field)];
    let mut current = start.clone();
    for _ in 0..steps {
        current = spec.step(&current, 1).map_err(|e| e.to_string())?;
        states.push(current.format(&field));
    }
    let period = spec.period(&start).map_err(|e| e.to_string())?;
    Ok(json!({ "states": states, "period": period.to_string() }).to_string())
}

pub fn census_json(q: &str, m: usize, n: usize) -> Result<String, String> {
    let field = Field::parse(q).map_err(|e| e.to_string())?;
    let size = census::q_pow(field.order(), n.saturating_sub(1))
        .saturating_mul(census::q_pow(field.order(), m * m));
    if size > DEMO_SPEC_LIMIT {
        return Err(format!("too large for the browser demo ({size} candidates); use the tsr command line"));
    }
    let report = census::count_tsri_brute(m, n, &field, &CensusOptions::default()).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn charpoly(q: &str, c: &str, b: &str) -> Result<String, JsError> {
    charpoly_json(q, c, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sequence(q: &str, c: &str, b: &str, state: &str, steps: u32) -> Result<String, JsError> {
    sequence_json(q, c, b, state, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn census_tsri(q: &str, m: usize, n: usize) -> Result<String, JsError> {
    census_json(q, m, n).map_err(|e| JsError::new(&e))
}
