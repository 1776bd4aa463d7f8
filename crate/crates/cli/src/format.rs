//! JSON and CSV encodings of polynomials, Hecke elements and classes.
//!
//! Polynomials are objects from exponent to coefficient, `{"-1":1,"0":2}`.
//! A class is `{"basis":"Nabla","terms":[{"w":"121","coeff":{"-1":1}}]}`
//! with terms in decreasing element order, as in the text rendering.

use heckecat_core::{BasisTag, CharacterVector, CoxeterGroup, HeckeElement, LaurentPoly};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unexpected JSON shape: {0}")]
    Shape(&'static str),
    #[error(transparent)]
    Core(#[from] heckecat_core::Error),
}

/// Output format selected with `--output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    let mut m = Map::new();
    for (k, c) in p.terms() {
        m.insert(k.to_string(), Value::from(c));
    }
    Value::Object(m)
}

pub fn poly_from_json(v: &Value) -> Result<LaurentPoly, FormatError> {
    let obj = v.as_object().ok_or(FormatError::Shape("polynomial must be an object"))?;
    let mut p = LaurentPoly::zero();
    for (k, c) in obj {
        let k: i32 = k.parse().map_err(|_| FormatError::Shape("exponent keys must be integers"))?;
        let c = c.as_i64().ok_or(FormatError::Shape("coefficients must be integers"))?;
        p.add_term(k, c)?;
    }
    Ok(p)
}

/// Coefficients of a polynomial in `q`, constant term first.
pub fn q_coeffs(p: &LaurentPoly) -> Vec<i64> {
    let top = p.max_degree().unwrap_or(-1);
    (0..=top).map(|k| p.coeff(k)).collect()
}

pub fn vector_to_json(g: &CoxeterGroup, v: &CharacterVector) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .rev()
        .map(|(w, c)| json!({ "w": g.display(w), "coeff": poly_to_json(c) }))
        .collect();
    json!({ "basis": v.basis().name(), "terms": terms })
}

pub fn vector_from_json(g: &CoxeterGroup, v: &Value) -> Result<CharacterVector, FormatError> {
    let basis: BasisTag = v
        .get("basis")
        .and_then(Value::as_str)
        .ok_or(FormatError::Shape("missing \"basis\""))?
        .parse()?;
    let terms = v.get("terms").and_then(Value::as_array).ok_or(FormatError::Shape("missing \"terms\""))?;
    let mut out = CharacterVector::zero(g, basis);
    for t in terms {
        let w = t.get("w").and_then(Value::as_str).ok_or(FormatError::Shape("term without \"w\""))?;
        let c = poly_from_json(t.get("coeff").ok_or(FormatError::Shape("term without \"coeff\""))?)?;
        out.add_term(g.parse_element(w)?, &c)?;
    }
    Ok(out)
}

pub fn hecke_to_json(g: &CoxeterGroup, h: &HeckeElement) -> Value {
    let terms: Vec<Value> = h
        .terms()
        .rev()
        .map(|(w, c)| json!({ "w": g.display(w), "coeff": poly_to_json(c) }))
        .collect();
    json!({ "cartan": g.cartan().to_string(), "terms": terms })
}

/// Writes rows as CSV with a header line.
pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8"))
}

/// One row per term: element, coefficient text, coefficient JSON.
pub fn vector_csv(g: &CoxeterGroup, v: &CharacterVector) -> Result<String, csv::Error> {
    let rows: Vec<Vec<String>> = v
        .terms()
        .rev()
        .map(|(w, c)| vec![v.basis().name().to_string(), g.display(w), c.to_string(), poly_to_json(c).to_string()])
        .collect();
    csv_string(&["basis", "w", "coeff", "coeff_json"], &rows)
}

pub fn hecke_csv(g: &CoxeterGroup, h: &HeckeElement) -> Result<String, csv::Error> {
    let rows: Vec<Vec<String>> = h
        .terms()
        .rev()
        .map(|(w, c)| vec![g.display(w), c.to_string(), poly_to_json(c).to_string()])
        .collect();
    csv_string(&["w", "coeff", "coeff_json"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_json_keeps_exponent_order() {
        let p = LaurentPoly::from_terms([(-1, 1), (0, 2), (3, 1), (10, -4)]);
        let j = poly_to_json(&p);
        assert_eq!(j.to_string(), r#"{"-1":1,"0":2,"3":1,"10":-4}"#);
        assert_eq!(poly_from_json(&j).unwrap(), p);
    }

    #[test]
    fn q_coefficients() {
        assert_eq!(q_coeffs(&LaurentPoly::from_terms([(0, 1), (2, 3)])), vec![1, 0, 3]);
        assert!(q_coeffs(&LaurentPoly::zero()).is_empty());
    }
}
