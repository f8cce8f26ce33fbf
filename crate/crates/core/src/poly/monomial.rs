use std::cmp::Ordering;

use super::Signature;

/// Exponent vector with its cached weighted degree.
///
/// The derived-by-hand ordering compares weighted degree first and then the
/// exponent vectors lexicographically; canonical (printing and matrix) order
/// is the reverse of this, i.e. highest degree first, then `x^2 > x*y > y^2 > t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(sig: &Signature, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), sig.len(), "exponent vector length mismatch");
        let degree = exps.iter().zip(sig.weights()).map(|(e, w)| e * w).sum();
        Monomial { degree, exps }
    }

    pub fn one(sig: &Signature) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; sig.len()],
        }
    }

    pub fn var(sig: &Signature, i: usize) -> Self {
        let mut exps = vec![0; sig.len()];
        exps[i] = 1;
        Monomial::new(sig, exps)
    }

    /// Weighted degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Returns `(e_i, m / x_i)` or `None` when `x_i` does not divide `m`.
    pub(crate) fn lower(&self, i: usize, weight: u32) -> Option<(u32, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some((
            e,
            Monomial {
                degree: self.degree - weight,
                exps,
            },
        ))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// All monomials of weighted degree exactly `m`, in canonical order.
pub fn monomial_basis(sig: &Signature, m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; sig.len()];
    fill(sig, 0, m, &mut exps, &mut out);
    out
}

fn fill(sig: &Signature, i: usize, rest: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    let w = sig.weight(i);
    if i + 1 == sig.len() {
        if rest.is_multiple_of(w) {
            exps[i] = rest / w;
            out.push(Monomial::new(sig, exps.clone()));
        }
        return;
    }
    for e in (0..=rest / w).rev() {
        exps[i] = e;
        fill(sig, i + 1, rest - e * w, exps, out);
    }
    exps[i] = 0;
}
