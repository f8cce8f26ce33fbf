//! Seeded random inputs for property checks and the verification suite.

use std::sync::Arc;

use rand::Rng;

use crate::group::{GroupElement, GroupSpec};
use crate::poly::{monomial_basis, rat, Polynomial, Signature};

/// Sparse polynomial with up to `terms` monomials of weighted degree
/// `≤ max_degree` and small rational coefficients.
pub fn random_poly<R: Rng>(sig: &Arc<Signature>, max_degree: u32, terms: usize, rng: &mut R) -> Polynomial {
    let mut p = Polynomial::zero(sig);
    for _ in 0..terms {
        let m = rng.gen_range(0..=max_degree);
        let basis = monomial_basis(sig, m);
        if basis.is_empty() {
            continue;
        }
        let mono = basis[rng.gen_range(0..basis.len())].clone();
        p.add_term(mono, random_coeff(rng));
    }
    p
}

/// Dense-ish homogeneous polynomial of weighted degree `m`; each monomial is
/// present with probability one half.
pub fn random_homogeneous<R: Rng>(sig: &Arc<Signature>, m: u32, rng: &mut R) -> Polynomial {
    let mut p = Polynomial::zero(sig);
    for mono in monomial_basis(sig, m) {
        if rng.gen_bool(0.5) {
            p.add_term(mono, random_coeff(rng));
        }
    }
    p
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> crate::poly::Rational {
    let n = loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            break n;
        }
    };
    rat(n, rng.gen_range(1..=4))
}

pub fn random_element<R: Rng>(spec: &GroupSpec, rng: &mut R) -> GroupElement {
    GroupElement::new(
        (0..spec.signature().len())
            .map(|_| rat(rng.gen_range(-7..=7), rng.gen_range(1..=3)))
            .collect(),
    )
}
