//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes the text of an input file and returns JSON. The plain
//! `*_json` functions carry the logic so they can be tested natively.

use kh_core::algebra::ExactField;
use kh_core::diagram::parse_pd;
use kh_core::gridhfk::{self, GridDiagram};
use kh_core::khovanov::{self, KhOptions, KhReport};
use kh_core::lee::LeeReport;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// The browser tab has no time budget to spare.
const WEB_MAX_CROSSINGS: usize = 16;

fn opts() -> KhOptions {
    KhOptions { max_crossings: Some(WEB_MAX_CROSSINGS), ..KhOptions::default() }
}

pub fn khovanov_json(pd: &str, ring: &str, reduced: bool) -> Result<String, String> {
    let d = parse_pd(pd).map_err(|e| e.to_string())?;
    let ring = ExactField::parse(ring).ok_or_else(|| format!("unknown ring {ring}"))?;
    let report = KhReport::compute(&d, ring, reduced, &opts()).map_err(|e| e.to_string())?;
    let mut v = report.to_json();
    v["text"] = json!(report.dims.to_text());
    v["crossings"] = json!(d.crossing_count());
    if let Ok(det) = khovanov::determinant(&report.dims) {
        if !reduced {
            v["determinant"] = json!(det);
        }
    }
    Ok(v.to_string())
}

pub fn lee_json(pd: &str) -> Result<String, String> {
    let d = parse_pd(pd).map_err(|e| e.to_string())?;
    let report = LeeReport::compute(&d, &opts()).map_err(|e| e.to_string())?;
    Ok(report.to_json().to_string())
}

pub fn grid_json(grid: &str) -> Result<String, String> {
    let g = GridDiagram::from_json(grid).map_err(|e| e.to_string())?;
    let h = gridhfk::hat_hfk_with(&g, 7).map_err(|e| e.to_string())?;
    let mut v = gridhfk::hat_report(&g, &h);
    let delta: Vec<_> = gridhfk::hfk_delta_collapse(&h).iter().map(|(k, n)| json!([k, n])).collect();
    v["delta"] = json!(delta);
    if g.components() == 1 && g.size <= gridhfk::MINUS_MAX_SIZE {
        v["tau"] = json!(gridhfk::tau(&g).map_err(|e| e.to_string())?);
    }
    Ok(v.to_string())
}

#[wasm_bindgen]
pub fn khovanov(pd: &str, ring: &str, reduced: bool) -> Result<String, JsValue> {
    khovanov_json(pd, ring, reduced).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rasmussen(pd: &str) -> Result<String, JsValue> {
    lee_json(pd).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn grid_hfk(grid: &str) -> Result<String, JsValue> {
    grid_json(grid).map_err(|e| JsValue::from_str(&e))
}
