//! WebAssembly bindings for a static demo page.
//!
//! Each export takes plain numbers and strings, returns a string (JSON or
//! SVG), and throws a JS `Error` carrying a readable message on bad input.
//! The work happens in [`ops`], which is ordinary Rust and tested natively.

use wasm_bindgen::prelude::*;

pub mod ops;
mod svg;

/// Bundle sequences of the given rank and degree on `P^n`, as a JSON array.
#[wasm_bindgen(js_name = bundleSequences)]
pub fn bundle_sequences(n: u32, rank: i32, degree: i32) -> Result<String, JsError> {
    ops::bundle_sequences(n, rank.into(), degree.into()).map_err(|e| JsError::new(&e))
}

/// The lattice of Betti pairs sharing a Hilbert function, drawn as an SVG
/// Hasse diagram. An empty `anchor` means the normalized anchor.
#[wasm_bindgen(js_name = latticeSvg)]
pub fn lattice_svg(n: u32, seq: &str, anchor: &str, max_reg: i32) -> Result<String, JsError> {
    ops::lattice_svg(n, seq, anchor, max_reg.into()).map_err(|e| JsError::new(&e))
}

/// The explicit presentation matrix of a Betti pair over `F_p` together with
/// the outcome of the bundle check, as JSON.
#[wasm_bindgen(js_name = presentation)]
pub fn presentation(n: u32, a: &str, b: &str, p: u32) -> Result<String, JsError> {
    ops::presentation(n, a, b, p.into()).map_err(|e| JsError::new(&e))
}
