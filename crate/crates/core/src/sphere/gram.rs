use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{exact_inner_product, require_h1, symmetry_forced_zero, Method, QuadratureRule, Weight};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::harmonic::harmonic_basis;
use crate::poly::Polynomial;

/// Entries forced to zero by symmetry must be at most this in magnitude.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Condition number above which [`project`] refuses to solve.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisEntry {
    pub degree: u32,
    pub index: usize,
    pub poly: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramPair {
    pub deg_i: u32,
    pub idx_i: usize,
    pub deg_j: u32,
    pub idx_j: usize,
    pub value: f64,
    /// Closed form, present for the moment method.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub symmetry_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramSummary {
    pub pairs: usize,
    pub symmetry_zero_pairs: usize,
    pub max_abs_symmetry_zero: f64,
    pub symmetry_zeros_vanish: bool,
    /// Cross-degree pairs not forced to vanish by symmetry.
    pub cross_degree_unforced_pairs: usize,
    pub cross_degree_unforced_nonzero: usize,
    pub max_abs_cross_degree_unforced: f64,
    /// Largest `|moments − quadrature|` over all pairs.
    pub max_method_discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub max_degree: u32,
    pub method: Method,
    pub weight: Weight,
    pub n_theta: usize,
    pub n_psi: usize,
    pub basis: Vec<BasisEntry>,
    pub pairs: Vec<GramPair>,
    pub summary: GramSummary,
}

impl GramReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// Full symmetric matrix in basis order.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let n = self.basis.len();
        let pos = |d: u32, i: usize| {
            self.basis
                .iter()
                .position(|b| b.degree == d && b.index == i)
                .expect("basis entry")
        };
        let mut g = vec![vec![0.0; n]; n];
        for p in &self.pairs {
            let (a, b) = (pos(p.deg_i, p.idx_i), pos(p.deg_j, p.idx_j));
            g[a][b] = p.value;
            g[b][a] = p.value;
        }
        g
    }
}

/// Harmonic basis elements of `H_1` for degrees `0..=max_degree`.
pub fn harmonic_traces(max_degree: u32) -> Result<Vec<(u32, usize, Polynomial)>> {
    let spec = GroupSpec::heisenberg(1);
    let mut out = Vec::new();
    for m in 0..=max_degree {
        for (i, h) in harmonic_basis(&spec, m)?.elements.into_iter().enumerate() {
            out.push((m, i, h));
        }
    }
    Ok(out)
}

/// Inner products of all harmonic basis elements up to `max_degree`, upper
/// triangle including the diagonal.
pub fn gram_matrix(max_degree: u32, method: Method, weight: Weight, rule: &QuadratureRule) -> Result<GramReport> {
    let traces = harmonic_traces(max_degree)?;
    let values: Vec<Vec<f64>> = traces.iter().map(|(_, _, h)| rule.values(h)).collect();
    let mut pairs = Vec::new();
    let mut max_disc: f64 = 0.0;
    for a in 0..traces.len() {
        for b in a..traces.len() {
            let (di, ii, hi) = &traces[a];
            let (dj, ij, hj) = &traces[b];
            let exact = exact_inner_product(hi, hj, weight)?;
            let quad = rule.integrate_product(&values[a], &values[b], weight);
            let moment = exact.to_f64();
            max_disc = max_disc.max((moment - quad).abs());
            let (value, exact) = match method {
                Method::Moments => (moment, Some(exact.to_string())),
                Method::Quadrature => (quad, None),
            };
            pairs.push(GramPair {
                deg_i: *di,
                idx_i: *ii,
                deg_j: *dj,
                idx_j: *ij,
                value,
                exact,
                symmetry_zero: symmetry_forced_zero(hi, hj),
            });
        }
    }
    let forced: Vec<&GramPair> = pairs.iter().filter(|p| p.symmetry_zero).collect();
    let max_forced = forced.iter().map(|p| p.value.abs()).fold(0.0, f64::max);
    let unforced: Vec<&GramPair> = pairs
        .iter()
        .filter(|p| !p.symmetry_zero && p.deg_i != p.deg_j)
        .collect();
    let summary = GramSummary {
        pairs: pairs.len(),
        symmetry_zero_pairs: forced.len(),
        max_abs_symmetry_zero: max_forced,
        symmetry_zeros_vanish: max_forced <= SYMMETRY_TOLERANCE,
        cross_degree_unforced_pairs: unforced.len(),
        cross_degree_unforced_nonzero: unforced.iter().filter(|p| p.value.abs() > SYMMETRY_TOLERANCE).count(),
        max_abs_cross_degree_unforced: unforced.iter().map(|p| p.value.abs()).fold(0.0, f64::max),
        max_method_discrepancy: max_disc,
    };
    Ok(GramReport {
        max_degree,
        method,
        weight,
        n_theta: rule.n_theta,
        n_psi: rule.n_psi,
        basis: traces
            .iter()
            .map(|(d, i, h)| BasisEntry {
                degree: *d,
                index: *i,
                poly: h.to_string(),
            })
            .collect(),
        pairs,
        summary,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionComponent {
    pub degree: u32,
    pub index: usize,
    pub basis: String,
    pub coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub poly: String,
    pub max_degree: u32,
    pub components: Vec<ProjectionComponent>,
    /// `‖p − Σ cᵢ hᵢ‖` in `L²(S_ρ, σ)`, by quadrature.
    pub residual: f64,
    pub relative_residual: f64,
    pub norm: f64,
    /// 2-norm condition number of the diagonally scaled Gram matrix.
    pub condition: f64,
    pub n_theta: usize,
    pub n_psi: usize,
}

/// Least-squares fit of the trace of `p` by harmonic traces of degree
/// `≤ max_degree` in `L²(S_ρ, σ)`.
pub fn project(p: &Polynomial, max_degree: u32, rule: &QuadratureRule) -> Result<ProjectionReport> {
    require_h1(p)?;
    let traces = harmonic_traces(max_degree)?;
    let n = traces.len();
    let mut gram = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    for a in 0..n {
        for b in a..n {
            let v = exact_inner_product(&traces[a].2, &traces[b].2, Weight::None)?.to_f64();
            gram[(a, b)] = v;
            gram[(b, a)] = v;
        }
        rhs[a] = exact_inner_product(&traces[a].2, p, Weight::None)?.to_f64();
    }
    let scale: Vec<f64> = (0..n).map(|i| 1.0 / gram[(i, i)].sqrt()).collect();
    let scaled = DMatrix::from_fn(n, n, |i, j| gram[(i, j)] * scale[i] * scale[j]);
    let scaled_rhs = DVector::from_fn(n, |i, _| rhs[i] * scale[i]);
    let svd = scaled.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let y = svd
        .solve(&scaled_rhs, 0.0)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let coeffs: Vec<f64> = (0..n).map(|i| y[i] * scale[i]).collect();

    let pv = rule.values(p);
    let mut resid = pv.clone();
    for ((_, _, h), c) in traces.iter().zip(&coeffs) {
        for (r, v) in resid.iter_mut().zip(rule.values(h)) {
            *r -= c * v;
        }
    }
    let residual = rule.integrate_product(&resid, &resid, Weight::None).max(0.0).sqrt();
    let norm = rule.integrate_product(&pv, &pv, Weight::None).max(0.0).sqrt();
    Ok(ProjectionReport {
        poly: p.to_string(),
        max_degree,
        components: traces
            .iter()
            .zip(&coeffs)
            .map(|((d, i, h), c)| ProjectionComponent {
                degree: *d,
                index: *i,
                basis: h.to_string(),
                coefficient: *c,
            })
            .collect(),
        residual,
        relative_residual: if norm > 0.0 { residual / norm } else { 0.0 },
        norm,
        condition,
        n_theta: rule.n_theta,
        n_psi: rule.n_psi,
    })
}
