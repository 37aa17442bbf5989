//! Browser bindings for three operations: promotion data of a tableau, the
//! grown hourglass plabic graph as SVG, and the dual web of a polynomial.
//!
//! Each operation is a plain function returning `Result<String, String>` so
//! it can be tested natively; the `#[wasm_bindgen]` wrappers only convert
//! errors into JavaScript exceptions.

use std::fmt::Write;

use wasm_bindgen::prelude::*;
use webloom::render::{render_map, render_matching, render_web};
use webloom::{dual_matching, dual_web, grow, PluckerPolynomial, RectTableau, RenderSpec, WebUniverse};

/// Interior vertex cap for the webs searched when computing a dual.
pub const DUAL_CAP: usize = 12;

fn text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Promotion, evacuation and promotion permutations of a tableau given as
/// comma-separated rows, one fact per line.
pub fn tableau_report(tableau: &str) -> Result<String, String> {
    let t = RectTableau::parse_short(tableau).map_err(text)?;
    let mut out = String::new();
    let promoted = if t.is_standard() { t.promotion() } else { t.ssyt_promotion() }.map_err(text)?;
    writeln!(out, "promotion: {}", promoted.short()).unwrap();
    writeln!(out, "evacuation: {}", t.evacuation().map_err(text)?.short()).unwrap();
    writeln!(out, "lattice word: {}", t.lattice_word()).unwrap();
    for (i, p) in t.standardize().prom_perms().map_err(text)?.iter().enumerate() {
        writeln!(out, "prom{}: {p}", i + 1).unwrap();
    }
    Ok(out)
}

/// SVG of the hourglass plabic graph grown from a 4-row tableau, followed by
/// its trip permutations as an HTML caption.
pub fn growth_view(tableau: &str) -> Result<String, String> {
    let t = RectTableau::parse_short(tableau).map_err(text)?;
    let g = grow(&t).map_err(text)?;
    let trips = g.graph.trip_perms().map_err(text)?;
    let caption: Vec<String> = trips.iter().enumerate().map(|(i, p)| format!("trip{}: {p}", i + 1)).collect();
    Ok(format!("{}<p>{}</p>", render_map(g.graph.map(), &RenderSpec::default()), caption.join(", ")))
}

/// HTML listing the dual of a quadratic or cubic Plücker polynomial, one
/// coefficient and SVG per term.
pub fn dual_view(polynomial: &str) -> Result<String, String> {
    let p: PluckerPolynomial = polynomial.trim().parse().map_err(text)?;
    let spec = RenderSpec::default();
    let mut terms: Vec<(i64, String)> = Vec::new();
    match p.degree() {
        2 => {
            for (m, &c) in &dual_matching(&p).map_err(text)?.terms {
                terms.push((c, render_matching(m, &spec)));
            }
        }
        3 => {
            let lambda = p.boundary_condition().map_err(text)?;
            let universe = WebUniverse::for_boundary(&lambda, DUAL_CAP).map_err(text)?;
            for (_, c, w) in dual_web(&p, &universe).map_err(text)?.terms() {
                terms.push((c, render_web(w, &spec)));
            }
        }
        d => return Err(format!("degree {d} is not supported; expected 2 or 3")),
    }
    if terms.is_empty() {
        return Ok("<p>The dual is zero.</p>".into());
    }
    Ok(terms.into_iter().map(|(c, svg)| format!("<figure>{svg}<figcaption>coefficient {c}</figcaption></figure>")).collect())
}

#[wasm_bindgen(js_name = tableauReport)]
pub fn tableau_report_js(tableau: &str) -> Result<String, JsError> {
    tableau_report(tableau).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = growthView)]
pub fn growth_view_js(tableau: &str) -> Result<String, JsError> {
    growth_view(tableau).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = dualView)]
pub fn dual_view_js(polynomial: &str) -> Result<String, JsError> {
    dual_view(polynomial).map_err(|e| JsError::new(&e))
}
