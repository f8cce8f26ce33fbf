//! Expressions `Σ pᵢ ρ^{sᵢ}` in the Korányi gauge `ρ = (|z|⁴ + t²)^{1/4}`.
//!
//! `ρ⁴` is a polynomial, so exponents in the same class mod 4 can be merged
//! over the smallest one. Since `X⁴ − ρ⁴` is irreducible over the rational
//! functions, `1, ρ, ρ², ρ³` are independent and an expression vanishes
//! exactly when every class polynomial does. In normal form each class
//! `r ∈ {0,1,2,3}` is a single term `p ρ^s` with `s ≤ r`, and `s < r` only
//! when `p` is not divisible by `ρ⁴`; this representation is unique.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{GroupSpec, VectorField};
use crate::poly::{rat, Monomial, Polynomial, Rational, Signature};

#[derive(Clone)]
pub struct GaugeExpr {
    k: usize,
    sig: Arc<Signature>,
    terms: BTreeMap<i64, Polynomial>,
}

/// `ρ⁴ = |z|⁴ + t²` on `H_k`.
pub fn rho4(sig: &Arc<Signature>) -> Polynomial {
    let k = (sig.len() - 1) / 2;
    let mut z2 = Polynomial::zero(sig);
    for i in 0..2 * k {
        let v = Polynomial::var(sig, i);
        z2 = &z2 + &(&v * &v);
    }
    let t = Polynomial::var(sig, 2 * k);
    &(&z2 * &z2) + &(&t * &t)
}

/// Exact quotient by `ρ⁴` if it exists (long division in `t`).
fn divide_rho4(p: &Polynomial) -> Option<Polynomial> {
    let sig = p.signature();
    let t = sig.len() - 1;
    let k = (sig.len() - 1) / 2;
    let mut z2 = Polynomial::zero(sig);
    for i in 0..2 * k {
        let v = Polynomial::var(sig, i);
        z2 = &z2 + &(&v * &v);
    }
    let z4 = &z2 * &z2;
    // Split p = Σ_e c_e t^e with t-free c_e.
    let mut by_t: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exp(t);
        let mut exps = m.exps().to_vec();
        exps[t] = 0;
        by_t.entry(e)
            .or_insert_with(|| Polynomial::zero(sig))
            .add_term(Monomial::new(sig, exps), c.clone());
    }
    let mut quotient = Polynomial::zero(sig);
    let tvar = Polynomial::var(sig, t);
    while let Some((&e, _)) = by_t.iter().next_back() {
        if e < 2 {
            break;
        }
        let c = by_t.remove(&e).expect("present");
        quotient = &quotient + &(&c * &tvar.pow(e - 2));
        let lower = by_t.entry(e - 2).or_insert_with(|| Polynomial::zero(sig));
        *lower = &*lower - &(&c * &z4);
        if lower.is_zero() {
            by_t.remove(&(e - 2));
        }
    }
    by_t.values().all(Polynomial::is_zero).then_some(quotient)
}

impl GaugeExpr {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        GaugeExpr {
            k: (sig.len() - 1) / 2,
            sig: Arc::clone(sig),
            terms: BTreeMap::new(),
        }
    }

    /// `p · ρ^s`.
    pub fn term(p: Polynomial, s: i64) -> Self {
        let mut e = Self::zero(p.signature());
        if !p.is_zero() {
            e.terms.insert(s, p);
        }
        e
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::term(p, 0)
    }

    pub fn rho_power(sig: &Arc<Signature>, s: i64) -> Self {
        Self::term(Polynomial::one(sig), s)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// Raw `(s, p)` pairs in increasing `s`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Polynomial)> + '_ {
        self.terms.iter().map(|(s, p)| (*s, p))
    }

    fn add_term(&mut self, s: i64, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(|| Polynomial::zero(&self.sig));
        *slot = &*slot + p;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn normalize(&self) -> Self {
        let mut classes: BTreeMap<i64, (i64, Polynomial)> = BTreeMap::new();
        let r4 = rho4(&self.sig);
        for (&s, p) in &self.terms {
            let class = s.rem_euclid(4);
            match classes.get_mut(&class) {
                None => {
                    classes.insert(class, (s, p.clone()));
                }
                Some((base, acc)) => {
                    // Terms arrive in increasing s, so `base ≤ s`.
                    let lift = r4.pow(((s - *base) / 4) as u32);
                    *acc = &*acc + &(p * &lift);
                }
            }
        }
        let mut out = Self::zero(&self.sig);
        for (r, (mut s, mut p)) in classes {
            if p.is_zero() {
                continue;
            }
            if s > r {
                p = &p * &r4.pow(((s - r) / 4) as u32);
                s = r;
            }
            while s < r {
                match divide_rho4(&p) {
                    Some(q) => {
                        p = q;
                        s += 4;
                    }
                    None => break,
                }
            }
            out.terms.insert(s, p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.normalize().terms.is_empty()
    }

    /// Rewrites the term `p ρ^s` as `(p ρ⁴^n) ρ^{s−4n}`; the value is unchanged.
    pub fn rerepresent(&self, s: i64, n: u32) -> Self {
        let mut out = self.clone();
        if let Some(p) = out.terms.remove(&s) {
            let lifted = &p * &rho4(&self.sig).pow(n);
            out.add_term(s - 4 * n as i64, &lifted);
        }
        out
    }

    pub fn try_add(&self, other: &GaugeExpr) -> Result<GaugeExpr> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = self.clone();
        for (&s, p) in &other.terms {
            out.add_term(s, p);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GaugeExpr) -> Result<GaugeExpr> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn try_mul(&self, other: &GaugeExpr) -> Result<GaugeExpr> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = Self::zero(&self.sig);
        for (&s, p) in &self.terms {
            for (&r, q) in &other.terms {
                out.add_term(s + r, &(p * q));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GaugeExpr {
        let mut out = Self::zero(&self.sig);
        for (&s, p) in &self.terms {
            out.add_term(s, &p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, q: &Polynomial) -> Result<GaugeExpr> {
        self.try_mul(&GaugeExpr::from_poly(q.clone()))
    }

    /// Multiplies by `ρ^r`.
    pub fn shift(&self, r: i64) -> GaugeExpr {
        GaugeExpr {
            k: self.k,
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(&s, p)| (s + r, p.clone())).collect(),
        }
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let z2: f64 = point[..2 * self.k].iter().map(|v| v * v).sum();
        let t = point[2 * self.k];
        let rho = (z2 * z2 + t * t).sqrt().sqrt();
        self.terms
            .iter()
            .map(|(&s, p)| p.eval_f64(point) * rho.powi(s as i32))
            .sum()
    }

    /// The homogeneous degree if every term `p ρ^s` has `deg p + s` equal.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for (&s, p) in &self.terms {
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree().expect("nonzero") as i64 + s;
            if *deg.get_or_insert(d) != d {
                return None;
            }
        }
        deg
    }
}

impl PartialEq for GaugeExpr {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.normalize().terms == other.normalize().terms
    }
}

impl fmt::Display for GaugeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match s {
                0 => write!(f, "({p})")?,
                _ => write!(f, "({p})*rho^{s}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GaugeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaugeExpr({self})")
    }
}

fn require_field_signature(spec: &GroupSpec, e: &GaugeExpr) -> Result<usize> {
    let k = spec.require_heisenberg()?;
    if spec.signature() != &e.sig && spec.signature().as_ref() != e.sig.as_ref() {
        return Err(Error::SignatureMismatch);
    }
    Ok(k)
}

/// `X(p ρ^s) = X(p) ρ^s + (s/4) p X(ρ⁴) ρ^{s−4}`.
pub fn apply_field(spec: &GroupSpec, field: &VectorField, e: &GaugeExpr) -> Result<GaugeExpr> {
    require_field_signature(spec, e)?;
    let x_rho4 = field.apply(&rho4(&e.sig))?;
    let mut out = GaugeExpr::zero(&e.sig);
    for (&s, p) in &e.terms {
        out.add_term(s, &field.apply(p)?);
        if s != 0 {
            out.add_term(s - 4, &(p * &x_rho4).scale(&rat(s, 4)));
        }
    }
    Ok(out)
}

/// `Σ_j X_j(X_j e)` over the horizontal frame.
pub fn sublaplacian(spec: &GroupSpec, e: &GaugeExpr) -> Result<GaugeExpr> {
    require_field_signature(spec, e)?;
    let mut out = GaugeExpr::zero(&e.sig);
    for f in spec.fields() {
        out = out.try_add(&apply_field(spec, f, &apply_field(spec, f, e)?)?)?;
    }
    Ok(out)
}

/// `|∇_H ρ|² = Σ_j (X_j ρ)²`.
pub fn horizontal_gradient_sq(spec: &GroupSpec) -> Result<GaugeExpr> {
    spec.require_heisenberg()?;
    let rho = GaugeExpr::rho_power(spec.signature(), 1);
    let mut out = GaugeExpr::zero(spec.signature());
    for f in spec.fields() {
        let d = apply_field(spec, f, &rho)?;
        out = out.try_add(&d.try_mul(&d)?)?;
    }
    Ok(out)
}

/// `(2−Q)(1−Q)|∇_H ρ|² + (2−Q) ρ Δ_H ρ`, the coefficient of `f'` when
/// `Δ_H` acts on the radial function `ρ^{2−Q}`.
pub fn radial_relation_residual(spec: &GroupSpec) -> Result<GaugeExpr> {
    let q = spec.homogeneous_dimension() as i64;
    let grad = horizontal_gradient_sq(spec)?.scale(&Rational::from_integer(((2 - q) * (1 - q)).into()));
    let lap = sublaplacian(spec, &GaugeExpr::rho_power(spec.signature(), 1))?
        .shift(1)
        .scale(&Rational::from_integer((2 - q).into()));
    grad.try_add(&lap)
}

fn require_harmonic(spec: &GroupSpec, h: &Polynomial) -> Result<u32> {
    if !h.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !spec.sublaplacian(h)?.is_zero() {
        return Err(Error::NotHarmonic);
    }
    Ok(h.degree().unwrap_or(0))
}

/// `Δ_H(ρ^{−m} h) + m ρ^{−m−4} [(m+Q−2) |z|² h + 2t Ω h]` for `h ∈ H_m`, with
/// `Ω` the total rotation. Identically zero; on `H_1` the bracket is
/// `(m+2)|z|² h + 2tΩh`.
pub fn weighted_eigen_identity(spec: &GroupSpec, h: &Polynomial) -> Result<GaugeExpr> {
    let k = spec.require_heisenberg()?;
    let m = require_harmonic(spec, h)? as i64;
    let sig = spec.signature();
    let lhs = sublaplacian(spec, &GaugeExpr::term(h.clone(), -m))?;
    let q = spec.homogeneous_dimension() as i64;
    let t = Polynomial::var(sig, 2 * k);
    let bracket = &(&spec.z_norm_sq()? * h).scale(&Rational::from_integer((m + q - 2).into()))
        + &(&t * &spec.total_rotation()?.apply(h)?).scale(&Rational::from_integer(2.into()));
    let correction = GaugeExpr::term(bracket.scale(&Rational::from_integer(m.into())), -m - 4);
    lhs.try_add(&correction)
}

/// `Δ_H(ρ^{−m} h) + m(m+Q−2) ρ^{−m−2} h`: the identity with the
/// `|∇_H ρ|²` weight and the rotation term dropped. Generally nonzero.
pub fn unweighted_eigen_residual(spec: &GroupSpec, h: &Polynomial) -> Result<GaugeExpr> {
    spec.require_heisenberg()?;
    let m = require_harmonic(spec, h)? as i64;
    let q = spec.homogeneous_dimension() as i64;
    let lhs = sublaplacian(spec, &GaugeExpr::term(h.clone(), -m))?;
    let eig = GaugeExpr::term(h.scale(&Rational::from_integer((m * (m + q - 2)).into())), -m - 2);
    lhs.try_add(&eig)
}

/// Largest `|value|` of a gauge expression over the unit sphere, sampled on
/// a fixed grid of chart points (`H_1` only).
pub fn sup_on_sphere_h1(e: &GaugeExpr, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        for j in 0..n {
            let psi = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
            let r = psi.cos().sqrt();
            let v = e.eval_f64(&[r * theta.cos(), r * theta.sin(), psi.sin()]);
            worst = worst.max(v.abs());
        }
    }
    worst
}
