//! Browser demo: three operations exposed to JavaScript through wasm-bindgen.
//!
//! Each operation has a plain Rust entry point returning JSON (so it can be
//! tested natively) and a thin `#[wasm_bindgen]` wrapper.

use nss_core::{
    lambda_family, phi_fast, verify_lambda_family, Certifier, Domain, Error, ExponentVector,
    GridSpec, Int, IntPoly, LambdaFamily, Polynomial,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest grid the table view renders.
pub const MAX_TABLE_POINTS: u128 = 400;

#[derive(Debug, Serialize)]
pub struct PowerSum {
    pub exponent: u32,
    pub actual: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct AxisFamily {
    pub set: Vec<String>,
    pub lambdas: Vec<String>,
    pub top_value: String,
    pub power_sums: Vec<PowerSum>,
    pub verified: bool,
}

#[derive(Debug, Serialize)]
pub struct LambdaView {
    pub domain: &'static str,
    pub axes: Vec<AxisFamily>,
}

#[derive(Debug, Serialize)]
pub struct CertificateView {
    pub domain: &'static str,
    pub polynomial: String,
    pub term: String,
    pub term_exponents: Vec<u32>,
    pub lambdas: Vec<Vec<String>>,
    pub top_values: Vec<String>,
    pub phi: String,
    pub phi_grid: Option<String>,
    pub predicted: String,
    pub grid_size: String,
    pub witness: Vec<String>,
    pub witness_value: String,
    /// The certificate in its structured text form.
    pub record: String,
}

#[derive(Debug, Serialize)]
pub struct Cell {
    pub value: String,
    pub weight: String,
    pub contribution: String,
    pub nonzero: bool,
}

#[derive(Debug, Serialize)]
pub struct GridTable {
    pub domain: &'static str,
    pub polynomial: String,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub cells: Vec<Vec<Cell>>,
    pub phi: String,
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn err(e: Error) -> String {
    e.to_string()
}

fn with_domain<F, G>(domain: &str, int: F, intpoly: G) -> Result<String, String>
where
    F: FnOnce() -> Result<String, String>,
    G: FnOnce() -> Result<String, String>,
{
    match domain {
        "int" => int(),
        "intpoly" => intpoly(),
        other => Err(format!("unknown domain `{other}`; use int or intpoly")),
    }
}

fn families<D: Domain>(grid: &GridSpec<D>) -> Result<Vec<LambdaFamily<D>>, String> {
    grid.axes().iter().map(|s| lambda_family(s).map_err(err)).collect()
}

fn parse_job<D: Domain>(poly: &str, sets: &str) -> Result<(Polynomial<D>, GridSpec<D>), String> {
    let grid = GridSpec::<D>::parse(sets).map_err(err)?;
    let text = if poly.trim().is_empty() { "0" } else { poly };
    let f = Polynomial::parse(text, grid.arity()).map_err(|e| e.to_string())?;
    Ok((f, grid))
}

/// Cofactor families and their power-sum checks, one per axis of `sets`.
pub fn lambda_view(domain: &str, sets: &str) -> Result<String, String> {
    fn go<D: Domain>(sets: &str) -> Result<String, String> {
        let grid = GridSpec::<D>::parse(sets).map_err(err)?;
        let axes = families(&grid)?
            .iter()
            .map(|fam| {
                let report = verify_lambda_family(fam);
                AxisFamily {
                    set: strings(fam.set().points()),
                    lambdas: strings(fam.coefficients()),
                    top_value: fam.top_value().to_string(),
                    power_sums: report
                        .checks
                        .iter()
                        .map(|c| PowerSum {
                            exponent: c.exponent,
                            actual: c.actual.to_string(),
                            expected: c.expected.to_string(),
                            ok: c.passed(),
                        })
                        .collect(),
                    verified: report.passed(),
                }
            })
            .collect();
        json(&LambdaView { domain: D::NAME, axes })
    }
    with_domain(domain, || go::<Int>(sets), || go::<IntPoly>(sets))
}

fn parse_term(term: &str, arity: usize) -> Result<Option<ExponentVector>, String> {
    if term.trim().is_empty() {
        return Ok(None);
    }
    let exps = term
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad exponent `{}`", p.trim())))
        .collect::<Result<Vec<_>, _>>()?;
    if exps.len() != arity {
        return Err(format!("term has {} exponents but the grid has {arity} axes", exps.len()));
    }
    Ok(Some(ExponentVector::new(exps)))
}

/// Full certificate; `term` may be empty to pick the leading term.
pub fn certificate_view(domain: &str, poly: &str, sets: &str, term: &str) -> Result<String, String> {
    fn go<D: Domain>(poly: &str, sets: &str, term: &str) -> Result<String, String> {
        let (f, grid) = parse_job::<D>(poly, sets)?;
        let requested = parse_term(term, grid.arity())?;
        let certifier = Certifier {
            parallel: false,
            ..Certifier::default()
        };
        let cert = certifier.certify(&f, &grid, requested.as_ref()).map_err(err)?;
        let term_text = Polynomial::from_terms(grid.arity(), [cert.term.clone()])
            .map_err(err)?
            .to_string();
        json(&CertificateView {
            domain: D::NAME,
            polynomial: cert.polynomial.to_string(),
            term: term_text,
            term_exponents: cert.term.exponents.exponents().to_vec(),
            lambdas: cert.lambdas.iter().map(|l| strings(l)).collect(),
            top_values: strings(&cert.top_values),
            phi: cert.phi.to_string(),
            phi_grid: cert.phi_grid.as_ref().map(ToString::to_string),
            predicted: cert.predicted.to_string(),
            grid_size: cert.grid_size.to_string(),
            witness: strings(&cert.witness),
            witness_value: cert.witness_value.to_string(),
            record: cert.to_record().render(),
        })
    }
    with_domain(domain, || go::<Int>(poly, sets, term), || go::<IntPoly>(poly, sets, term))
}

/// Values of f on a grid of one or two axes, with the λ weight of each point.
/// Contributions sum to Φ(f).
pub fn grid_table(domain: &str, poly: &str, sets: &str) -> Result<String, String> {
    fn go<D: Domain>(poly: &str, sets: &str) -> Result<String, String> {
        let (f, grid) = parse_job::<D>(poly, sets)?;
        if grid.arity() > 2 {
            return Err(format!("the table shows at most 2 axes, got {}", grid.arity()));
        }
        if grid.size() > MAX_TABLE_POINTS {
            return Err(format!("the table shows at most {MAX_TABLE_POINTS} points, got {}", grid.size()));
        }
        let fams = families(&grid)?;
        let rows: Vec<(String, usize)> = if grid.arity() == 2 {
            grid.axes()[0].points().iter().map(ToString::to_string).zip(0..).collect()
        } else {
            vec![(String::new(), 0)]
        };
        let columns = grid.axes().last().expect("at least one axis");
        let mut cells = Vec::with_capacity(rows.len());
        for (_, i) in &rows {
            let mut row = Vec::with_capacity(columns.len());
            for j in 0..columns.len() {
                let indices: Vec<usize> = if grid.arity() == 2 { vec![*i, j] } else { vec![j] };
                let value = f.evaluate(&grid.point(&indices)).map_err(err)?;
                let weight = indices
                    .iter()
                    .zip(&fams)
                    .fold(D::one(), |acc, (&k, fam)| acc.mul(&fam.coefficients()[k]));
                let contribution = weight.mul(&value);
                row.push(Cell {
                    nonzero: !value.is_zero(),
                    value: value.to_string(),
                    weight: weight.to_string(),
                    contribution: contribution.to_string(),
                });
            }
            cells.push(row);
        }
        json(&GridTable {
            domain: D::NAME,
            polynomial: f.to_string(),
            row_labels: rows.into_iter().map(|(label, _)| label).collect(),
            column_labels: strings(columns.points()),
            cells,
            phi: phi_fast(&f, &fams).map_err(err)?.to_string(),
        })
    }
    with_domain(domain, || go::<Int>(poly, sets), || go::<IntPoly>(poly, sets))
}

#[wasm_bindgen(js_name = lambdaFamily)]
pub fn lambda_family_js(domain: &str, sets: &str) -> Result<String, JsValue> {
    lambda_view(domain, sets).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = certify)]
pub fn certify_js(domain: &str, poly: &str, sets: &str, term: &str) -> Result<String, JsValue> {
    certificate_view(domain, poly, sets, term).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = gridTable)]
pub fn grid_table_js(domain: &str, poly: &str, sets: &str) -> Result<String, JsValue> {
    grid_table(domain, poly, sets).map_err(|e| JsValue::from_str(&e))
}
