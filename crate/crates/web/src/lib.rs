//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function has a plain Rust counterpart in [`demo`] so the
//! numerics can be tested natively.

pub mod demo;

use wasm_bindgen::prelude::*;

fn js_err(e: linstark::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Samples of G(E, delta) on [0, e_max] followed by the roots found there,
/// as JSON `{"energy": [...], "g": [...], "roots": [...]}`.
#[wasm_bindgen]
pub fn eigencondition_curve(delta: f64, e_max: f64, samples: usize) -> Result<String, JsValue> {
    let c = demo::eigencondition_curve(delta, e_max, samples).map_err(js_err)?;
    serde_json::to_string(&c).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Normalised perturbed wavefunction and the tilted potential on [-z_max, z_max].
#[wasm_bindgen]
pub fn wavefunction(even: bool, n: usize, delta: f64, z_max: f64, samples: usize) -> Result<String, JsValue> {
    let w = demo::wavefunction(demo::parity(even), n, delta, z_max, samples).map_err(js_err)?;
    serde_json::to_string(&w).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Exact level energy against the series and WKB estimates for delta in [0, delta_max].
#[wasm_bindgen]
pub fn stark_curve(even: bool, n: usize, delta_max: f64, samples: usize) -> Result<String, JsValue> {
    let s = demo::stark_curve(demo::parity(even), n, delta_max, samples).map_err(js_err)?;
    serde_json::to_string(&s).map_err(|e| JsValue::from_str(&e.to_string()))
}
