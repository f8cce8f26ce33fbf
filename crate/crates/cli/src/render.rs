//! Text, JSON and CSV renderings of command results.

use std::fmt::Write;

use heis_core::eta::DecompositionResult;
use heis_core::group::GroupSpec;
use heis_core::harmonic::{DimRow, HarmonicBasis};
use heis_core::sphere::{exact_inner_product, sphere_moment, GramReport, ProjectionReport, Weight};
use heis_core::verify::VerifyReport;
use heis_core::{Polynomial, Result};
use serde_json::{json, Value};

use crate::Format;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn weight_name(w: Weight) -> &'static str {
    match w {
        Weight::None => "none",
        Weight::Horizontal => "horizontal",
    }
}

pub fn basis(spec: &GroupSpec, basis: &HarmonicBasis, as_json: bool) -> String {
    let elements: Vec<String> = basis.elements.iter().map(|p| p.to_string()).collect();
    if as_json {
        return pretty(&json!({
            "group": spec.name(),
            "degree": basis.degree,
            "normalization": basis.normalization,
            "dimension": elements.len(),
            "elements": elements,
        }));
    }
    elements.iter().map(|e| format!("{e}\n")).collect()
}

pub fn dims(spec: &GroupSpec, rows: &[DimRow], format: Format) -> String {
    let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    match format {
        Format::Json => pretty(&json!({ "group": spec.name(), "rows": rows })),
        Format::Csv => {
            let mut out = String::from("m,dim_p,dim_h,closed_form,recursion,closed_form_holds,recursion_holds\n");
            for r in rows {
                let holds = r.closed_form_holds.map_or_else(String::new, |b| b.to_string());
                let closed = r.closed_form.map_or_else(String::new, |v| v.to_string());
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.m, r.dim_p, r.dim_h, closed, r.recursion, holds, r.recursion_holds
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = format!("group {}\n", spec.name());
            writeln!(out, "{:>3} {:>8} {:>8} {:>11} {:>10}", "m", "dim P_m", "dim H_m", "closed form", "recursion").unwrap();
            for r in rows {
                writeln!(
                    out,
                    "{:>3} {:>8} {:>8} {:>11} {:>10}",
                    r.m,
                    r.dim_p,
                    r.dim_h,
                    opt(r.closed_form),
                    r.recursion
                )
                .unwrap();
            }
            out
        }
    }
}

pub fn decomposition(p: &Polynomial, d: &DecompositionResult, as_json: bool) -> String {
    let value = json!({
        "poly": p.to_string(),
        "degree": d.degree,
        "h": d.h.to_string(),
        "q": d.q.to_string(),
    });
    if as_json {
        return pretty(&value);
    }
    format!("h = {}\nq = {}\n{}\n", d.h, d.q, value)
}

pub fn chain(p: &Polynomial, m: u32, chain: &[Polynomial], as_json: bool) -> String {
    let items: Vec<Value> = chain
        .iter()
        .enumerate()
        .map(|(j, h)| json!({ "eta_power": 2 * j, "degree": m - 2 * j as u32, "h": h.to_string() }))
        .collect();
    let value = json!({ "poly": p.to_string(), "degree": m, "chain": items });
    if as_json {
        return pretty(&value);
    }
    let mut out = String::new();
    for (j, h) in chain.iter().enumerate() {
        writeln!(out, "h_{} = {h}    (times eta^{})", m - 2 * j as u32, 2 * j).unwrap();
    }
    writeln!(out, "{value}").unwrap();
    out
}

pub fn gram(report: &GramReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("deg_i,idx_i,deg_j,idx_j,value,symmetry_zero\n");
            for p in &report.pairs {
                writeln!(
                    out,
                    "{},{},{},{},{:e},{}",
                    p.deg_i, p.idx_i, p.deg_j, p.idx_j, p.value, p.symmetry_zero
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let s = &report.summary;
            let mut out = format!(
                "gram max_degree={} method={:?} weight={:?} rule=({}, {})\n",
                report.max_degree, report.method, report.weight, report.n_theta, report.n_psi
            )
            .to_lowercase();
            for b in &report.basis {
                writeln!(out, "  basis[{}.{}] = {}", b.degree, b.index, b.poly).unwrap();
            }
            writeln!(out, "pairs: {}", s.pairs).unwrap();
            writeln!(
                out,
                "symmetry-forced zeros: {} (max |value| {:.3e}, vanish: {})",
                s.symmetry_zero_pairs, s.max_abs_symmetry_zero, s.symmetry_zeros_vanish
            )
            .unwrap();
            writeln!(
                out,
                "cross-degree pairs not forced by symmetry: {} ({} nonzero, max |value| {:.6})",
                s.cross_degree_unforced_pairs, s.cross_degree_unforced_nonzero, s.max_abs_cross_degree_unforced
            )
            .unwrap();
            writeln!(out, "max |moments - quadrature|: {:.3e}", s.max_method_discrepancy).unwrap();
            for p in report.pairs.iter().filter(|p| !p.symmetry_zero) {
                write!(out, "  <{}.{}, {}.{}> = {:.15}", p.deg_i, p.idx_i, p.deg_j, p.idx_j, p.value).unwrap();
                if let Some(e) = &p.exact {
                    write!(out, "  [{e}]").unwrap();
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn projection(report: &ProjectionReport, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        return s;
    }
    let mut out = format!("project {} onto harmonic traces of degree <= {}\n", report.poly, report.max_degree);
    for c in report.components.iter().filter(|c| c.coefficient.abs() > 1e-12) {
        writeln!(out, "  {:+.12} * ({})    [H_{} #{}]", c.coefficient, c.basis, c.degree, c.index).unwrap();
    }
    writeln!(out, "residual: {:.6e}", report.residual).unwrap();
    writeln!(out, "relative residual: {:.6e}", report.relative_residual).unwrap();
    writeln!(out, "condition estimate: {:.6e}", report.condition).unwrap();
    out
}

pub fn ledger(report: &VerifyReport, as_json: bool) -> String {
    if as_json {
        let mut s = report.to_json();
        s.push('\n');
        return s;
    }
    let mut out = format!("seed {} rule ({}, {})\n", report.seed, report.n_theta, report.n_psi);
    for c in &report.claims {
        writeln!(out, "[{:>2}] {:<28} {:<14} {}", c.criterion, c.id, c.status.to_string(), c.title).unwrap();
        for e in &c.evidence {
            let tag = match e.holds {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "info",
            };
            writeln!(out, "       {tag} {}: {}", e.name, e.value).unwrap();
        }
    }
    writeln!(out, "asserted failures: {}", report.asserted_failures).unwrap();
    out
}

pub fn moment_table(max_degree: u32, weight: Weight, precision: usize, format: Format) -> String {
    let mut rows = Vec::new();
    for c in 0..=max_degree / 2 {
        for a in 0..=(max_degree - 2 * c) {
            for b in 0..=(max_degree - 2 * c - a) {
                let m = sphere_moment(a, b, c, weight);
                rows.push((a, b, c, m.to_string(), m.to_decimal(precision)));
            }
        }
    }
    match format {
        Format::Json => pretty(&json!({
            "weight": weight_name(weight),
            "max_degree": max_degree,
            "precision": precision,
            "moments": rows
                .iter()
                .map(|(a, b, c, e, d)| json!({ "a": a, "b": b, "c": c, "exact": e, "decimal": d }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("a,b,c,exact,decimal\n");
            for (a, b, c, e, d) in &rows {
                writeln!(out, "{a},{b},{c},{e},{d}").unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = format!("moments of x^a y^b t^c, weight {}\n", weight_name(weight));
            for (a, b, c, e, d) in &rows {
                writeln!(out, "{a:>2} {b:>2} {c:>2}  {e:<28} {d}").unwrap();
            }
            out
        }
    }
}

pub fn poly_moment(p: &Polynomial, weight: Weight, precision: usize, as_json: bool) -> Result<String> {
    let one = Polynomial::one(p.signature());
    let m = exact_inner_product(p, &one, weight)?;
    if as_json {
        return Ok(pretty(&json!({
            "poly": p.to_string(),
            "weight": weight_name(weight),
            "exact": m.to_string(),
            "decimal": m.to_decimal(precision),
        })));
    }
    Ok(format!("{}\n{}\n", m, m.to_decimal(precision)))
}
