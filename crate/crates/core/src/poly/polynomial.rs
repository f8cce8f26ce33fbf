use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, Rational, Signature};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients over a weighted signature.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty map.
#[derive(Clone)]
pub struct Polynomial {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Polynomial {
            sig: Arc::clone(sig),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::constant(sig, Rational::one())
    }

    pub fn constant(sig: &Arc<Signature>, c: Rational) -> Self {
        Self::from_monomial(sig, Monomial::one(sig), c)
    }

    pub fn var(sig: &Arc<Signature>, i: usize) -> Self {
        Self::from_monomial(sig, Monomial::var(sig, i), Rational::one())
    }

    pub fn var_named(sig: &Arc<Signature>, name: &str) -> Option<Self> {
        sig.index_of(name).map(|i| Self::var(sig, i))
    }

    pub fn from_monomial(sig: &Arc<Signature>, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        sig: &Arc<Signature>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(sig);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Builds `Σ coeffs[i]·basis[i]`.
    pub fn from_coefficients(sig: &Arc<Signature>, basis: &[Monomial], coeffs: &[Rational]) -> Self {
        assert_eq!(basis.len(), coeffs.len());
        Self::from_terms(sig, basis.iter().cloned().zip(coeffs.iter().cloned()))
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn same_signature(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (highest weighted degree first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient vector with respect to a list of monomials. Terms outside
    /// the list are ignored.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    /// Highest weighted degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Homogeneous components keyed by weighted degree (zero components omitted).
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(&self.sig))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn component(&self, degree: u32) -> Polynomial {
        Polynomial {
            sig: Arc::clone(&self.sig),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.sig);
        }
        Polynomial {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.sig);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let w = self.sig.weight(i);
        let mut out = Polynomial::zero(&self.sig);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(i, w) {
                out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// `p(λ^{w_1} x_1, …)`: each term is scaled by λ to its weighted degree.
    pub fn dilate(&self, lambda: &Rational) -> Result<Polynomial> {
        if lambda.is_zero() {
            return Err(Error::ZeroDilation);
        }
        let mut powers: BTreeMap<u32, Rational> = BTreeMap::new();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let f = powers
                    .entry(m.degree())
                    .or_insert_with(|| num_traits::pow(lambda.clone(), m.degree() as usize));
                (m.clone(), c * &*f)
            })
            .collect();
        Ok(Polynomial {
            sig: Arc::clone(&self.sig),
            terms,
        })
    }

    /// Replaces variable `i` by `images[i]`; the result lives over the
    /// images' common signature.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.sig.len() {
            return Err(Error::SignatureMismatch);
        }
        let target = match images.first() {
            Some(p) => Arc::clone(&p.sig),
            None => return Err(Error::SignatureMismatch),
        };
        if images.iter().any(|p| *p.sig != *target) {
            return Err(Error::SignatureMismatch);
        }
        let mut cache: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&target)]; images.len()];
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][e as usize];
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over another signature by variable name.
    pub fn embed(&self, target: &Arc<Signature>) -> Result<Polynomial> {
        let images: Vec<Polynomial> = self
            .sig
            .names()
            .iter()
            .map(|n| Polynomial::var_named(target, n).ok_or(Error::SignatureMismatch))
            .collect::<Result<_>>()?;
        self.substitute(&images)
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.sig.len());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.to_float().eval(point)
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            terms: self
                .terms()
                .map(|(m, c)| (m.exps().to_vec(), rational_to_f64(c)))
                .collect(),
        }
    }

    /// Multiplies by the least common denominator and divides by the content,
    /// giving an integral primitive polynomial whose leading canonical term
    /// is positive. Zero stays zero.
    pub fn primitive(&self) -> Polynomial {
        let Some((_, lead)) = self.terms().next() else {
            return self.clone();
        };
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            gcd = num_integer::Integer::gcd(&gcd, &n);
        }
        let mut factor = Rational::new(lcm, gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.same_signature(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }
}

pub(crate) fn rational_to_f64(c: &Rational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large numerator or denominator: scale down before dividing.
            let shift = c.numer().bits().max(c.denom().bits()).saturating_sub(1000);
            let n = (c.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (c.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_signature(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics on signature mismatch; use the `try_` form to get an error.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial signature mismatch")
            }
        }

        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Floating-point snapshot of a polynomial for fast evaluation.
#[derive(Debug, Clone)]
pub struct FloatPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    pub fn from_terms(terms: Vec<(Vec<u32>, f64)>) -> Self {
        FloatPoly { terms }
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(*c, |acc, (&k, &x)| acc * x.powi(k as i32))
            })
            .sum()
    }
}
