//! Browser bindings: spectrum, twin/pair analysis and fidelity traces for a
//! graph expression. Results cross the boundary as JSON text or flat arrays.

use qwalk::spectral::spectrum_table;
use qwalk::transfer::{analyze as analyze_target, resolve_target, AnalysisOptions};
use qwalk::walk::fidelity_trace as trace;
use qwalk::{decompose, GraphExpr};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest graph the page will decompose.
pub const MAX_VERTICES: usize = 400;

#[derive(Serialize)]
struct Spectrum {
    graph: String,
    vertices: usize,
    eigenvalues: Vec<qwalk::spectral::EigenvalueEntry>,
}

fn build(expr: &str) -> Result<(GraphExpr, qwalk::Graph), String> {
    let e = GraphExpr::parse(expr).map_err(|e| e.to_string())?;
    if matches!(e, GraphExpr::Edges(_)) {
        return Err("edges(...) reads files and is not available in the browser".into());
    }
    let g = e.build().map_err(|e| e.to_string())?;
    if g.n_vertices() > MAX_VERTICES {
        return Err(format!("{} vertices; the demo stops at {MAX_VERTICES}", g.n_vertices()));
    }
    Ok((e, g))
}

pub fn spectrum_json(expr: &str) -> Result<String, String> {
    let (e, g) = build(expr)?;
    let dec = decompose(&g).map_err(|e| e.to_string())?;
    let out = Spectrum { graph: e.to_string(), vertices: g.n_vertices(), eigenvalues: spectrum_table(&dec) };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Twin analysis when `b` is empty, pair analysis otherwise.
pub fn analyze_json(expr: &str, a: &str, b: &str, copies: usize) -> Result<String, String> {
    let (e, _) = build(expr)?;
    let pair = (!b.trim().is_empty()).then_some((a, b));
    let copies = (copies > 0).then_some(copies);
    let target = resolve_target(&e, Some(a), pair, copies).map_err(|e| e.to_string())?;
    if target.graph_expr().build().map_err(|e| e.to_string())?.n_vertices() > 2 * MAX_VERTICES {
        return Err("graph too large for the demo".into());
    }
    let report = analyze_target(&target, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// `[t0, f0, t1, f1, ...]` for the pair, or for the twin copies of `a` when `b` is empty.
pub fn trace_points(expr: &str, a: &str, b: &str, end: f64, steps: usize) -> Result<Vec<f64>, String> {
    let (e, _) = build(expr)?;
    let pair = (!b.trim().is_empty()).then_some((a, b));
    let target = resolve_target(&e, Some(a), pair, None).map_err(|e| e.to_string())?;
    let (u, v) = target.pair_indices().map_err(|e| e.to_string())?;
    let g = target.graph_expr().build().map_err(|e| e.to_string())?;
    let dec = decompose(&g).map_err(|e| e.to_string())?;
    let pts = trace(&dec, u, v, 0.0, end, steps).map_err(|e| e.to_string())?;
    Ok(pts.into_iter().flat_map(|(t, f)| [t, f]).collect())
}

#[wasm_bindgen]
pub fn spectrum(expr: &str) -> Result<String, JsError> {
    spectrum_json(expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze(expr: &str, a: &str, b: &str, copies: usize) -> Result<String, JsError> {
    analyze_json(expr, a, b, copies).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fidelity_trace(expr: &str, a: &str, b: &str, end: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    trace_points(expr, a, b, end, steps).map_err(|e| JsError::new(&e))
}
