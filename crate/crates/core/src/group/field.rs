use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Signature};

/// Polynomial vector field `Σ aᵢ(x) ∂ᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    coeffs: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidSpec("vector field has no coefficients".into()));
        };
        let sig = Arc::clone(first.signature());
        if coeffs.len() != sig.len() || coeffs.iter().any(|c| !c.same_signature(first)) {
            return Err(Error::SignatureMismatch);
        }
        Ok(VectorField { coeffs })
    }

    pub fn zero(sig: &Arc<Signature>) -> Self {
        VectorField {
            coeffs: vec![Polynomial::zero(sig); sig.len()],
        }
    }

    /// The coordinate field `∂ᵢ`.
    pub fn partial(sig: &Arc<Signature>, i: usize) -> Self {
        let mut f = Self::zero(sig);
        f.coeffs[i] = Polynomial::one(sig);
        f
    }

    pub fn signature(&self) -> &Arc<Signature> {
        self.coeffs[0].signature()
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if !p.same_signature(&self.coeffs[0]) {
            return Err(Error::SignatureMismatch);
        }
        let mut out = Polynomial::zero(p.signature());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = p.derivative(i);
            if !d.is_zero() {
                out = &out + &(a * &d);
            }
        }
        Ok(out)
    }

    /// Lie bracket `[X, Y] = XY − YX` as a vector field.
    pub fn commutator(&self, other: &VectorField) -> Result<VectorField> {
        if !self.coeffs[0].same_signature(&other.coeffs[0]) {
            return Err(Error::SignatureMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Ok(&self.apply(b)? - &other.apply(a)?))
            .collect::<Result<_>>()?;
        Ok(VectorField { coeffs })
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(VectorField { coeffs })
    }

    pub fn scale(&self, c: &crate::poly::Rational) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }
}
