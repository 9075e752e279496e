//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Matrices are entered as plain text, one row per line, entries separated by
//! whitespace or commas (`2 1 1`, `1/2 -3i`, ...). A JSON matrix document is
//! accepted too. Every exported function returns a JSON string.

use exact_jordan::decomp::{
    block_diagonalize_with, blockwise_trigonalize_with, jordan_analysis, trigonalize_with,
};
use exact_jordan::io::{parse_matrix_json, DecompositionDocument, MatrixDocument};
use exact_jordan::spectral::parse_eigenvalue_list;
use exact_jordan::{
    check_decomposition, format_scalar, generate_case, parse_scalar, Gaussian, JordanStructure,
    Kind, Matrix,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Parses a whitespace/comma grid or a JSON matrix document.
pub fn parse_matrix_text(text: &str) -> Result<Matrix, String> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return parse_matrix_json(trimmed).map_err(|e| e.to_string());
    }
    let rows: Vec<Vec<Gaussian>> = trimmed
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, line)| {
            line.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .enumerate()
                .map(|(j, s)| {
                    parse_scalar(s).map_err(|e| format!("row {}, column {}: {e}", i + 1, j + 1))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 {
        return Err("the matrix is empty".into());
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(format!(
            "row {} has {} entries, expected {n}",
            i + 1,
            r.len()
        ));
    }
    Ok(Matrix::from_rows(rows))
}

/// Renders a matrix in the grid format accepted by [`parse_matrix_text`].
pub fn matrix_text(m: &Matrix) -> String {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(format_scalar).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(0);
    cells
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn hint(spectrum: &str) -> Result<Option<Vec<Gaussian>>, String> {
    if spectrum.trim().is_empty() {
        Ok(None)
    } else {
        parse_eigenvalue_list(spectrum)
            .map(Some)
            .map_err(|e| e.to_string())
    }
}

/// Runs one decomposition stage and attaches its check report.
pub fn decompose_json(matrix: &str, kind: &str, spectrum: &str) -> Result<String, String> {
    let a = parse_matrix_text(matrix)?;
    let hint = hint(spectrum)?;
    let hint = hint.as_deref();
    let kind = Kind::parse(kind).ok_or_else(|| format!("unknown decomposition `{kind}`"))?;
    let d = match kind {
        Kind::Schur => trigonalize_with(&a, hint),
        Kind::BlockDiag => block_diagonalize_with(&a, hint),
        Kind::BlockTri => blockwise_trigonalize_with(&a, hint),
        Kind::Jordan => jordan_analysis(&a, hint).map(|j| j.decomposition),
    }
    .map_err(|e| e.to_string())?;
    let report = check_decomposition(&a, &d);
    let mut doc =
        serde_json::to_value(DecompositionDocument::from_decomposition(&d, Some(&report)))
            .expect("documents serialize");
    doc["V_text"] = Value::String(matrix_text(&d.v));
    doc["M_text"] = Value::String(matrix_text(&d.m));
    Ok(doc.to_string())
}

/// Spectrum with the full stage ladder and Jordan chains of each eigenvalue.
pub fn ladder_json(matrix: &str, spectrum: &str) -> Result<String, String> {
    let a = parse_matrix_text(matrix)?;
    let hint = hint(spectrum)?;
    let analysis = jordan_analysis(&a, hint.as_deref()).map_err(|e| e.to_string())?;
    let eigenvalues: Vec<Value> = analysis
        .spectrum
        .entries
        .iter()
        .zip(&analysis.ladders)
        .zip(&analysis.chains)
        .map(|((e, ladder), chains)| {
            json!({
                "lambda": format_scalar(&e.lambda),
                "multiplicity": e.multiplicity,
                "geometric": e.geometric_dim,
                "max_stage": e.max_stage,
                "stage_dims": ladder.dims(),
                "chains": chains.iter().map(|c| {
                    c.vectors.iter()
                        .map(|v| v.to_rows().iter().map(|r| format_scalar(&r[0])).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "n": a.rows(),
        "diagonalizable": analysis.spectrum.is_diagonalizable(),
        "eigenvalues": eigenvalues,
    })
    .to_string())
}

/// A random matrix with the given Jordan structure, e.g. `2:2,1;1i:1`.
pub fn generate_json(structure: &str, seed: u64, bound: i64) -> Result<String, String> {
    let st: JordanStructure = structure
        .parse()
        .map_err(|e: exact_jordan::Error| e.to_string())?;
    let case = generate_case(&st, seed, bound).map_err(|e| e.to_string())?;
    Ok(json!({
        "structure": st.to_string(),
        "matrix": MatrixDocument::from_matrix(&case.a),
        "matrix_text": matrix_text(&case.a),
        "jordan_text": matrix_text(&case.jordan),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn decompose(matrix: &str, kind: &str, spectrum: &str) -> Result<String, JsValue> {
    decompose_json(matrix, kind, spectrum).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ladder(matrix: &str, spectrum: &str) -> Result<String, JsValue> {
    ladder_json(matrix, spectrum).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate(structure: &str, seed: u32, bound: i32) -> Result<String, JsValue> {
    generate_json(structure, u64::from(seed), i64::from(bound)).map_err(|e| JsValue::from_str(&e))
}
