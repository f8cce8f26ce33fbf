use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::VectorField;
use crate::error::{Error, Result};
use crate::poly::{int, parse_poly, Polynomial, Rational, Signature};

/// A stratified group presentation: weighted coordinates, a horizontal frame,
/// and optionally a polynomial group law.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    name: String,
    sig: Arc<Signature>,
    fields: Vec<VectorField>,
    law: Option<Vec<Polynomial>>,
    heisenberg: Option<usize>,
}

/// On-disk JSON form of a [`GroupSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub name: String,
    pub variables: Vec<VariableEntry>,
    pub fields: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableEntry {
    pub name: String,
    pub weight: u32,
}

impl GroupSpec {
    /// Built-in Heisenberg group `H_k` with frame `X_j = ∂x_j + 2y_j ∂t`,
    /// `Y_j = ∂y_j − 2x_j ∂t` and law
    /// `(x,y,t)(x',y',t') = (x+x', y+y', t+t'+2(x'·y − x·y'))`.
    pub fn heisenberg(k: usize) -> Self {
        let sig = Signature::heisenberg(k);
        let n = sig.len();
        let t = n - 1;
        let mut fields = Vec::with_capacity(2 * k);
        for j in 0..k {
            let mut c = vec![Polynomial::zero(&sig); n];
            c[j] = Polynomial::one(&sig);
            c[t] = Polynomial::var(&sig, k + j).scale(&int(2));
            fields.push(VectorField::new(c).expect("well-formed field"));
        }
        for j in 0..k {
            let mut c = vec![Polynomial::zero(&sig); n];
            c[k + j] = Polynomial::one(&sig);
            c[t] = Polynomial::var(&sig, j).scale(&int(-2));
            fields.push(VectorField::new(c).expect("well-formed field"));
        }
        let primed = sig.primed();
        let mut law: Vec<Polynomial> = (0..t)
            .map(|i| &Polynomial::var(&primed, i) + &Polynomial::var(&primed, n + i))
            .collect();
        let mut last = &Polynomial::var(&primed, t) + &Polynomial::var(&primed, n + t);
        for j in 0..k {
            let (x, y) = (j, k + j);
            let cross = &(&Polynomial::var(&primed, n + x) * &Polynomial::var(&primed, y))
                - &(&Polynomial::var(&primed, x) * &Polynomial::var(&primed, n + y));
            last = &last + &cross.scale(&int(2));
        }
        law.push(last);
        GroupSpec {
            name: format!("h{k}"),
            sig,
            fields,
            law: Some(law),
            heisenberg: Some(k),
        }
    }

    /// `h1`, `h2`, `h3` (any `hK` with K ≥ 1 is accepted).
    pub fn builtin(name: &str) -> Option<Self> {
        let k: usize = name.strip_prefix('h')?.parse().ok()?;
        (1..=16).contains(&k).then(|| Self::heisenberg(k))
    }

    pub fn from_file(file: &SpecFile) -> Result<Self> {
        let sig = Signature::new(file.variables.iter().map(|v| (v.name.clone(), v.weight)))?;
        if file.fields.is_empty() {
            return Err(Error::InvalidSpec("no horizontal fields".into()));
        }
        let fields = file
            .fields
            .iter()
            .enumerate()
            .map(|(i, coeffs)| {
                if coeffs.len() != sig.len() {
                    return Err(Error::InvalidSpec(format!(
                        "field {i} has {} coefficients, expected {}",
                        coeffs.len(),
                        sig.len()
                    )));
                }
                let polys = coeffs
                    .iter()
                    .map(|s| parse_poly(s, &sig))
                    .collect::<Result<Vec<_>>>()?;
                VectorField::new(polys)
            })
            .collect::<Result<Vec<_>>>()?;
        let law = match &file.law {
            None => None,
            Some(exprs) => {
                if exprs.len() != sig.len() {
                    return Err(Error::InvalidSpec(format!(
                        "law has {} components, expected {}",
                        exprs.len(),
                        sig.len()
                    )));
                }
                let primed = sig.primed();
                Some(
                    exprs
                        .iter()
                        .map(|s| parse_poly(s, &primed))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        Ok(GroupSpec {
            name: file.name.clone(),
            sig,
            fields,
            law,
            heisenberg: None,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            name: self.name.clone(),
            variables: self
                .sig
                .names()
                .iter()
                .zip(self.sig.weights())
                .map(|(n, &w)| VariableEntry {
                    name: n.clone(),
                    weight: w,
                })
                .collect(),
            fields: self
                .fields
                .iter()
                .map(|f| f.coefficients().iter().map(|c| c.to_string()).collect())
                .collect(),
            law: self
                .law
                .as_ref()
                .map(|l| l.iter().map(|c| c.to_string()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("spec serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn law(&self) -> Option<&[Polynomial]> {
        self.law.as_deref()
    }

    /// `Some(k)` for a built-in `H_k`.
    pub fn heisenberg_rank(&self) -> Option<usize> {
        self.heisenberg
    }

    pub fn require_heisenberg(&self) -> Result<usize> {
        self.heisenberg
            .ok_or_else(|| Error::NotHeisenberg(self.name.clone()))
    }

    /// Homogeneous dimension `Q = Σ weights`.
    pub fn homogeneous_dimension(&self) -> u32 {
        self.sig.homogeneous_dimension()
    }

    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, &self.sig)
    }

    /// `Δ_G p = Σⱼ Xⱼ(Xⱼ p)` over the horizontal frame.
    pub fn sublaplacian(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.sig);
        for f in &self.fields {
            out = &out + &f.apply(&f.apply(p)?)?;
        }
        Ok(out)
    }

    /// Generator of the dilations, `V = Σ wᵢ xᵢ ∂ᵢ`; `V p = m p` on `P_m`.
    pub fn euler_field(&self) -> VectorField {
        let coeffs = (0..self.sig.len())
            .map(|i| Polynomial::var(&self.sig, i).scale(&int(self.sig.weight(i) as i64)))
            .collect();
        VectorField::new(coeffs).expect("well-formed field")
    }

    // Heisenberg-specific frame pieces.

    pub fn x_field(&self, j: usize) -> Result<&VectorField> {
        let k = self.require_heisenberg()?;
        self.fields.get(j).filter(|_| j < k).ok_or_else(|| {
            Error::InvalidArgument(format!("X_{} does not exist on h{k}", j + 1))
        })
    }

    pub fn y_field(&self, j: usize) -> Result<&VectorField> {
        let k = self.require_heisenberg()?;
        if j >= k {
            return Err(Error::InvalidArgument(format!("Y_{} does not exist on h{k}", j + 1)));
        }
        Ok(&self.fields[k + j])
    }

    /// The central field `T = ∂t`.
    pub fn t_field(&self) -> Result<VectorField> {
        let k = self.require_heisenberg()?;
        Ok(VectorField::partial(&self.sig, 2 * k))
    }

    /// Rotation `Ω_j = y_j ∂x_j − x_j ∂y_j`.
    pub fn rotation(&self, j: usize) -> Result<VectorField> {
        let k = self.require_heisenberg()?;
        let mut c = vec![Polynomial::zero(&self.sig); self.sig.len()];
        c[j] = Polynomial::var(&self.sig, k + j);
        c[k + j] = -Polynomial::var(&self.sig, j);
        VectorField::new(c)
    }

    /// Total rotation `Σ_j Ω_j`.
    pub fn total_rotation(&self) -> Result<VectorField> {
        let k = self.require_heisenberg()?;
        let mut acc = VectorField::zero(&self.sig);
        for j in 0..k {
            acc = acc.add(&self.rotation(j)?)?;
        }
        Ok(acc)
    }

    /// `|z|² = Σ xⱼ² + yⱼ²`.
    pub fn z_norm_sq(&self) -> Result<Polynomial> {
        let k = self.require_heisenberg()?;
        let mut acc = Polynomial::zero(&self.sig);
        for i in 0..2 * k {
            let v = Polynomial::var(&self.sig, i);
            acc = &acc + &(&v * &v);
        }
        Ok(acc)
    }

    /// Sub-Laplacian via `Δ + 4(ΣΩⱼ)∂t + 4|z|²∂t²`, independent of the frame.
    pub fn sublaplacian_decomposed(&self, p: &Polynomial) -> Result<Polynomial> {
        let k = self.require_heisenberg()?;
        let t = 2 * k;
        let mut euclid = Polynomial::zero(&self.sig);
        for i in 0..2 * k {
            euclid = &euclid + &p.derivative(i).derivative(i);
        }
        let pt = p.derivative(t);
        let rot = self.total_rotation()?.apply(&pt)?.scale(&int(4));
        let ptt = (&self.z_norm_sq()? * &pt.derivative(t)).scale(&int(4));
        Ok(&(&euclid + &rot) + &ptt)
    }

    /// `(x,y,t)(x',y',t')` lifted to the primed signature, for callers that
    /// need exact control over the law.
    pub(crate) fn law_images(&self, g: &[Rational]) -> Result<Vec<Polynomial>> {
        let law = self
            .law
            .as_ref()
            .ok_or_else(|| Error::GroupLawUnavailable(self.name.clone()))?;
        let n = self.sig.len();
        if g.len() != n {
            return Err(Error::InvalidArgument(format!(
                "group element has {} coordinates, expected {n}",
                g.len()
            )));
        }
        let images: Vec<Polynomial> = (0..2 * n)
            .map(|i| {
                if i < n {
                    Polynomial::constant(&self.sig, g[i].clone())
                } else {
                    Polynomial::var(&self.sig, i - n)
                }
            })
            .collect();
        law.iter().map(|c| c.substitute(&images)).collect()
    }
}
