//! Harmonic polynomials: `H_m(G) = ker(Δ_G : P_m → P_{m−2})`.
//!
//! The generic path assembles the sub-Laplacian as an exact sparse matrix
//! between monomial bases and extracts a normalized kernel. On `H_1` there is
//! also a triangular constructor that solves the coefficient system level by
//! level in the power of `t`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::linalg::ExactMatrix;
use crate::poly::{monomial_basis, Monomial, Polynomial, Rational};

/// `Δ_G` restricted to `P_m`, as a matrix from the degree-`m` monomials
/// (columns) to the degree-`m−2` monomials (rows).
#[derive(Debug, Clone)]
pub struct GradedOperatorMatrix {
    pub degree: u32,
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    pub matrix: ExactMatrix,
}

impl GradedOperatorMatrix {
    /// Applies the matrix to the coefficient vector of `p` and returns the
    /// image as a polynomial.
    pub fn apply(&self, spec: &GroupSpec, p: &Polynomial) -> Polynomial {
        let coeffs = self.matrix.mul_vec(&p.coefficients_in(&self.cols));
        Polynomial::from_coefficients(spec.signature(), &self.rows, &coeffs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Reduced echelon form over the monomial columns, integral with content 1.
    ReducedEchelon,
    /// One element per free parameter of the triangular construction.
    Triangular,
}

#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub degree: u32,
    pub elements: Vec<Polynomial>,
    pub normalization: Normalization,
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn delta_matrix(spec: &GroupSpec, m: u32) -> Result<GradedOperatorMatrix> {
    let sig = spec.signature();
    let cols = monomial_basis(sig, m);
    let rows = if m >= 2 { monomial_basis(sig, m - 2) } else { Vec::new() };
    let index: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut columns = Vec::with_capacity(cols.len());
    for c in &cols {
        let image = spec.sublaplacian(&Polynomial::from_monomial(sig, c.clone(), Rational::one()))?;
        let mut col = Vec::with_capacity(image.len());
        for (mono, v) in image.terms() {
            let i = index.get(mono).ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "sub-Laplacian of a degree-{m} monomial is not homogeneous of degree {}",
                    m as i64 - 2
                ))
            })?;
            col.push((*i, v.clone()));
        }
        columns.push(col);
    }
    let matrix = ExactMatrix::from_columns(rows.len(), &columns);
    Ok(GradedOperatorMatrix {
        degree: m,
        rows,
        cols,
        matrix,
    })
}

/// Kernel of [`delta_matrix`], each element re-checked with
/// [`GroupSpec::sublaplacian`].
pub fn harmonic_basis(spec: &GroupSpec, m: u32) -> Result<HarmonicBasis> {
    let op = delta_matrix(spec, m)?;
    let sig = spec.signature();
    let elements = op
        .matrix
        .kernel()
        .into_iter()
        .map(|v| {
            let coeffs: Vec<Rational> = v.into_iter().map(Rational::from_integer).collect();
            Polynomial::from_coefficients(sig, &op.cols, &coeffs)
        })
        .collect::<Vec<_>>();
    for h in &elements {
        if !spec.sublaplacian(h)?.is_zero() {
            return Err(Error::InconsistentSystem(format!("kernel element {h} is not harmonic")));
        }
    }
    Ok(HarmonicBasis {
        degree: m,
        elements,
        normalization: Normalization::ReducedEchelon,
    })
}

/// `dim H_m(G) = dim P_m − rank Δ_G`.
pub fn harmonic_dimension(spec: &GroupSpec, m: u32) -> Result<usize> {
    let op = delta_matrix(spec, m)?;
    Ok(op.cols.len() - op.matrix.rank_certified())
}

/// Basis of `H_m(H_1)` from the ansatz `p = Σ_γ Q_γ(x, y) t^γ`.
///
/// The coefficient of `t^g` in `Δ_H p` only involves `Q_g, Q_{g+1}, Q_{g+2}`,
/// so the `Q_γ` are fixed from the top power of `t` downwards. In each `Q_γ`
/// the coefficients of `y^d` and `x y^{d−1}` are free (as is the constant
/// `Q_{m/2}` for even `m`); the rest follow from a triangular solve. The
/// per-level matrices come from applying `Δ_H` to monomials, not from a
/// closed form.
pub fn triangular_basis_h1(m: u32) -> Result<HarmonicBasis> {
    let spec = GroupSpec::heisenberg(1);
    let sig = spec.signature();
    let top = m / 2;
    let mono = |i: u32, j: u32, g: u32| Monomial::new(sig, vec![i, j, g]);
    let one = Rational::one;

    // Free parameters in order: the constant `a` (even m), then
    // (a_0, a_1) of each level by increasing x,y-degree.
    let mut free: Vec<Monomial> = Vec::new();
    for g in (0..=top).rev() {
        let d = m - 2 * g;
        if d == 0 {
            free.push(mono(0, 0, g));
        } else {
            free.push(mono(0, d, g));
            free.push(mono(1, d - 1, g));
        }
    }

    let mut elements = Vec::with_capacity(free.len());
    for f in &free {
        let mut p = Polynomial::from_monomial(sig, f.clone(), one());
        for g in (0..top + u32::from(m % 2 == 1)).rev() {
            let d = m - 2 * g;
            if d < 2 {
                continue;
            }
            // t^g coefficient of Δ_H(p) from the already fixed higher levels.
            let known = spec.sublaplacian(&p)?;
            let rhs = |r: u32| known.coefficient(&mono(r, d - 2 - r, g));
            let images = (0..=d)
                .map(|i| spec.sublaplacian(&Polynomial::from_monomial(sig, mono(i, d - i, g), one())))
                .collect::<Result<Vec<_>>>()?;
            let mut level: BTreeMap<u32, Rational> = BTreeMap::new();
            for r in 0..=d - 2 {
                // Row x^r y^{d−2−r}: pivot a_{r+2}; other entries must point
                // at columns already determined.
                let mut acc = -rhs(r);
                let mut pivot = Rational::zero();
                for (i, image) in (0..=d).zip(&images) {
                    let c = image.coefficient(&mono(r, d - 2 - r, g));
                    if c.is_zero() {
                        continue;
                    }
                    if i == r + 2 {
                        pivot = c;
                    } else if i > r + 2 {
                        return Err(Error::InconsistentSystem(format!(
                            "level t^{g}: row {r} reaches column {i} beyond its pivot"
                        )));
                    } else if let Some(v) = level.get(&i) {
                        // Columns 0 and 1 are free and already inside `rhs`.
                        acc -= c * v;
                    }
                }
                if pivot.is_zero() {
                    return Err(Error::InconsistentSystem(format!("level t^{g}: zero pivot in row {r}")));
                }
                level.insert(r + 2, acc / pivot);
            }
            for (i, c) in level {
                p.add_term(mono(i, d - i, g), c);
            }
        }
        if !spec.sublaplacian(&p)?.is_zero() {
            return Err(Error::InconsistentSystem(format!("triangular element {p} is not harmonic")));
        }
        elements.push(p);
    }
    Ok(HarmonicBasis {
        degree: m,
        elements,
        normalization: Normalization::Triangular,
    })
}

/// Coordinates of `p` in the family `basis`, or `None` if `p` is outside
/// its span.
pub fn express_in(basis: &[Polynomial], p: &Polynomial) -> Option<Vec<Rational>> {
    let mut monos: Vec<Monomial> = Vec::new();
    for q in basis.iter().chain(std::iter::once(p)) {
        monos.extend(q.terms().map(|(m, _)| m.clone()));
    }
    monos.sort();
    monos.dedup();
    let columns: Vec<Vec<(usize, Rational)>> = basis
        .iter()
        .map(|q| {
            q.coefficients_in(&monos)
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    let a = ExactMatrix::from_columns(monos.len(), &columns);
    a.solve(&p.coefficients_in(&monos)).ok()
}

/// Mutual containment of spans, each element expressed by an exact solve.
pub fn span_equal(a: &[Polynomial], b: &[Polynomial]) -> bool {
    a.iter().all(|p| express_in(b, p).is_some()) && b.iter().all(|p| express_in(a, p).is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub m: u32,
    pub dim_p: usize,
    pub dim_h: usize,
    /// `C(m+2k−1, 2k−1)` for built-in `H_k`.
    pub closed_form: Option<u64>,
    /// `dim P_m − dim P_{m−2}`.
    pub recursion: usize,
    pub closed_form_holds: Option<bool>,
    pub recursion_holds: bool,
}

/// Kernel dimensions for `m = 0..=max_degree`, compared against the closed
/// form (Heisenberg only) and the recursion `dim P_m − dim P_{m−2}`.
pub fn dim_table(spec: &GroupSpec, max_degree: u32) -> Result<Vec<DimRow>> {
    let sig = spec.signature();
    let dims_p: Vec<usize> = (0..=max_degree).map(|m| monomial_basis(sig, m).len()).collect();
    (0..=max_degree)
        .map(|m| {
            let dim_h = harmonic_dimension(spec, m)?;
            let dim_p = dims_p[m as usize];
            let below = if m >= 2 { dims_p[m as usize - 2] } else { 0 };
            let closed_form = spec
                .heisenberg_rank()
                .map(|k| binomial(m as u64 + 2 * k as u64 - 1, 2 * k as u64 - 1));
            Ok(DimRow {
                m,
                dim_p,
                dim_h,
                closed_form,
                recursion: dim_p - below,
                closed_form_holds: closed_form.map(|c| c == dim_h as u64),
                recursion_holds: dim_p - below == dim_h,
            })
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    u64::try_from(acc).expect("binomial fits in u64")
}
