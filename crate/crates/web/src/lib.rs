//! Browser bindings: each export takes a graph document (JSON or TSV) and
//! returns a rendered report.

use kforest::document::GraphDocument;
use kforest::report::{condense_report, hierarchy_report, phi_report, Format};
use kforest::search::DEFAULT_ENUMERATION_CAP;
use wasm_bindgen::prelude::*;

fn parse(text: &str) -> Result<GraphDocument, String> {
    GraphDocument::parse(text)
        .map_err(|e| format!("line {}, column {}: {}", e.line, e.column, e.message))
}

fn format_of(name: &str) -> Result<Format, String> {
    match name {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        "dot" => Ok(Format::Dot),
        other => Err(format!("unknown format {other:?}")),
    }
}

pub fn render_phi(text: &str, format: &str) -> Result<String, String> {
    Ok(phi_report(&parse(text)?).render(format_of(format)?))
}

pub fn render_hierarchy(text: &str, format: &str, verify: bool) -> Result<String, String> {
    let doc = parse(text)?;
    let report =
        hierarchy_report(&doc, DEFAULT_ENUMERATION_CAP, verify).map_err(|e| e.to_string())?;
    Ok(report.render(format_of(format)?))
}

pub fn render_condensation(text: &str, level: usize, format: &str) -> Result<String, String> {
    let doc = parse(text)?;
    let format = format_of(format)?;
    match condense_report(&doc, level, DEFAULT_ENUMERATION_CAP) {
        Ok(report) => Ok(report.render(format)),
        Err(e) => Err(format!("{e}\n\n{}", phi_report(&doc).text())),
    }
}

#[wasm_bindgen]
pub fn phi(text: &str, format: &str) -> Result<String, JsError> {
    render_phi(text, format).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hierarchy(text: &str, format: &str, verify: bool) -> Result<String, JsError> {
    render_hierarchy(text, format, verify).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn condense(text: &str, level: usize, format: &str) -> Result<String, JsError> {
    render_condensation(text, level, format).map_err(|e| JsError::new(&e))
}
