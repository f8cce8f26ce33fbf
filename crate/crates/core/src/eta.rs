//! Decomposition of `P_m(H_1)` against the polynomial gauge `η₊² = x² + y² + 4t`.
//!
//! [`solve_dirichlet_q`] finds `q` with `Δ_H((1 − η₊²) q) = −Δ_H p`. Split by
//! homogeneous degree, the degree-`j` part of that equation reads
//! `D_j q_j = −(Δ_H p)_j − Δ_H q_{j+2}` with `D_j q = −Δ_H(η₊² q)`, so the
//! components of `q` are found from the top degree down, one square block
//! solve each. The harmonic part of a homogeneous `p_m` is then
//! `h_m = p_m − η₊² q_{m−2}`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::linalg::{determinant, invert_square};
use crate::poly::{monomial_basis, parse_poly, Monomial, Polynomial, Rational, Signature};

fn h1() -> GroupSpec {
    GroupSpec::heisenberg(1)
}

pub fn eta_squared(sig: &Arc<Signature>) -> Polynomial {
    parse_poly("x^2+y^2+4*t", sig).expect("fixed expression")
}

fn check_h1(p: &Polynomial, spec: &GroupSpec) -> Result<()> {
    if p.signature().as_ref() != spec.signature().as_ref() {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

/// The map `q_j ↦ −Δ_H(η₊² q_j)` on `P_j`, with unknowns ordered by the power
/// of `t` descending and then canonically. Rows use the same ordering.
#[derive(Debug, Clone)]
pub struct DiagonalBlock {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub matrix: Vec<Vec<Rational>>,
}

impl DiagonalBlock {
    fn index(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|x| x == m)
    }

    /// Entry at (row monomial, column monomial); zero when either is absent.
    pub fn entry(&self, row: &Monomial, col: &Monomial) -> Rational {
        match (self.index(row), self.index(col)) {
            (Some(i), Some(j)) => self.matrix[i][j].clone(),
            _ => Rational::zero(),
        }
    }

    /// Sub-block on the `t`-free monomials (rows and columns).
    pub fn gamma_zero(&self) -> Vec<Vec<Rational>> {
        let t = self.monomials.first().map_or(0, |m| m.exps().len() - 1);
        let idx: Vec<usize> = (0..self.monomials.len())
            .filter(|&i| self.monomials[i].exp(t) == 0)
            .collect();
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.matrix[i][j].clone()).collect())
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.matrix)
    }
}

fn block_order(sig: &Signature, j: u32) -> Vec<Monomial> {
    let mut monos = monomial_basis(sig, j);
    let t = sig.len() - 1;
    // Stable sort keeps canonical order within each t-power.
    monos.sort_by_key(|m| std::cmp::Reverse(m.exp(t)));
    monos
}

pub fn diagonal_block(j: u32) -> Result<DiagonalBlock> {
    let spec = h1();
    let sig = spec.signature();
    let eta2 = eta_squared(sig);
    let monomials = block_order(sig, j);
    let n = monomials.len();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for (c, mono) in monomials.iter().enumerate() {
        let f = Polynomial::from_monomial(sig, mono.clone(), Rational::one());
        let image = -spec.sublaplacian(&(&eta2 * &f))?;
        for (r, row) in monomials.iter().enumerate() {
            matrix[r][c] = image.coefficient(row);
        }
    }
    Ok(DiagonalBlock {
        degree: j,
        monomials,
        matrix,
    })
}

type CachedBlock = Arc<(DiagonalBlock, std::result::Result<Vec<Vec<Rational>>, usize>)>;

/// Diagonal block with its exact inverse, computed once per degree.
fn cached_block(j: u32) -> Result<CachedBlock> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, CachedBlock>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("block cache").get(&j) {
        return Ok(b.clone());
    }
    let block = diagonal_block(j)?;
    let inverse = invert_square(&block.matrix);
    let entry = Arc::new((block, inverse));
    cache.lock().expect("block cache").insert(j, entry.clone());
    Ok(entry)
}

/// Solves `Δ_H((1 − η₊²) q) = −Δ_H p` for `q` of degree at most `deg p − 2`.
pub fn solve_dirichlet_q(p: &Polynomial) -> Result<Polynomial> {
    let spec = h1();
    check_h1(p, &spec)?;
    let sig = spec.signature();
    let mut q = Polynomial::zero(sig);
    let Some(m) = p.degree().filter(|&m| m >= 2) else {
        return Ok(q);
    };
    let lap_p = spec.sublaplacian(p)?;
    for j in (0..=m - 2).rev() {
        let cached = cached_block(j)?;
        let (block, inverse) = (&cached.0, &cached.1);
        let inverse = inverse.as_ref().map_err(|&col| Error::SingularBlock {
            degree: j,
            gamma: block.monomials[col].exp(sig.len() - 1),
        })?;
        // `q` holds only components above `j`, so this is `Δ_H q_{j+2}`.
        let rhs_poly = &(-lap_p.component(j)) - &spec.sublaplacian(&q)?.component(j);
        let rhs = rhs_poly.coefficients_in(&block.monomials);
        let coeffs: Vec<Rational> = inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&rhs)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        let qj = Polynomial::from_coefficients(sig, &block.monomials, &coeffs);
        q = &q + &qj;
    }
    let one_minus = &Polynomial::one(sig) - &eta_squared(sig);
    let lhs = spec.sublaplacian(&(&one_minus * &q))?;
    if lhs != -lap_p {
        return Err(Error::InconsistentSystem("block solution fails the defining identity".into()));
    }
    Ok(q)
}

/// `p_m = h_m + η₊² q_{m−2}` with `Δ_H h_m = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub degree: u32,
    pub h: Polynomial,
    pub q: Polynomial,
}

fn require_homogeneous(p: &Polynomial, m: u32) -> Result<()> {
    if p.terms().any(|(mono, _)| mono.degree() != m) {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// Weighted degree of a homogeneous polynomial; zero counts as degree 0.
pub fn homogeneous_degree(p: &Polynomial) -> Result<u32> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(p.degree().unwrap_or(0))
}

pub fn decompose_once(p: &Polynomial, m: u32) -> Result<DecompositionResult> {
    let spec = h1();
    check_h1(p, &spec)?;
    require_homogeneous(p, m)?;
    let sig = spec.signature();
    if m < 2 {
        return Ok(DecompositionResult {
            degree: m,
            h: p.clone(),
            q: Polynomial::zero(sig),
        });
    }
    let q = solve_dirichlet_q(p)?.component(m - 2);
    let h = p - &(&eta_squared(sig) * &q);
    if !spec.sublaplacian(&h)?.is_zero() {
        return Err(Error::InconsistentSystem("harmonic part is not harmonic".into()));
    }
    Ok(DecompositionResult { degree: m, h, q })
}

/// `[h_m, h_{m−2}, …]` with `p_m = Σ_j η₊^{2j} h_{m−2j}`.
pub fn decompose_full(p: &Polynomial, m: u32) -> Result<Vec<Polynomial>> {
    let mut chain = Vec::with_capacity(m as usize / 2 + 1);
    let mut cur = p.clone();
    let mut d = m;
    loop {
        let step = decompose_once(&cur, d)?;
        chain.push(step.h);
        if d < 2 {
            return Ok(chain);
        }
        cur = step.q;
        d -= 2;
    }
}

/// `Σ_j η₊^{2j} chain[j]`.
pub fn recompose(chain: &[Polynomial]) -> Option<Polynomial> {
    let sig = chain.first()?.signature();
    let eta2 = eta_squared(sig);
    let mut acc = Polynomial::zero(sig);
    for h in chain.iter().rev() {
        acc = &(&acc * &eta2) + h;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use crate::sample::{random_homogeneous, random_poly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &Signature::heisenberg(1)).unwrap()
    }

    fn mono(i: u32, j: u32, g: u32) -> Monomial {
        Monomial::new(&Signature::heisenberg(1), vec![i, j, g])
    }

    #[test]
    fn worked_examples() {
        assert_eq!(solve_dirichlet_q(&p("x^2+y^2")).unwrap(), p("1"));
        assert_eq!(solve_dirichlet_q(&p("t")).unwrap(), p("0"));
        let r = decompose_once(&p("x^2+y^2"), 2).unwrap();
        assert_eq!((r.h, r.q), (p("-4*t"), p("1")));
        let r = decompose_once(&p("t"), 2).unwrap();
        assert_eq!((r.h, r.q), (p("t"), p("0")));
        assert_eq!(decompose_once(&p("3*x-y"), 1).unwrap().h, p("3*x-y"));
        assert_eq!(decompose_full(&p("x^2+y^2"), 2).unwrap(), vec![p("-4*t"), p("1")]);
        assert_eq!(decompose_full(&p("x^2+y^2+4*t"), 2).unwrap(), vec![p("0"), p("1")]);
        assert_eq!(decompose_full(&p("x"), 1).unwrap(), vec![p("x")]);
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert_eq!(decompose_once(&p("x+t"), 2), Err(Error::NotHomogeneous));
        assert_eq!(homogeneous_degree(&p("x+t")), Err(Error::NotHomogeneous));
    }

    #[test]
    fn diagonal_facts() {
        assert_eq!(diagonal_block(0).unwrap().matrix, vec![vec![int(-4)]]);
        let b1 = diagonal_block(1).unwrap();
        let (x, y) = (mono(1, 0, 0), mono(0, 1, 0));
        let m = [[b1.entry(&x, &x), b1.entry(&x, &y)], [b1.entry(&y, &x), b1.entry(&y, &y)]];
        assert_eq!(m, [[int(-8), int(16)], [int(-16), int(-8)]]);
        assert_eq!(b1.determinant(), int(320));
        for j in 2..=8 {
            let b = diagonal_block(j).unwrap();
            assert!(!b.determinant().is_zero(), "j = {j}");
            assert!(!determinant(&b.gamma_zero()).is_zero());
            for col in &b.monomials {
                let (a, be, g) = (col.exp(0), col.exp(1), col.exp(2));
                if g == 0 {
                    continue;
                }
                let row = mono(a, be + 2, g - 1);
                let gi = g as i64;
                assert_eq!(b.entry(&row, col), int(-16 * gi * (gi + 1)));
            }
        }
    }

    #[test]
    fn block_order_is_gamma_descending() {
        let b = diagonal_block(4).unwrap();
        let gammas: Vec<u32> = b.monomials.iter().map(|m| m.exp(2)).collect();
        assert_eq!(gammas, [2, 1, 1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn identity_holds_on_random_inputs() {
        let spec = h1();
        let sig = spec.signature();
        let one_minus = &Polynomial::one(sig) - &eta_squared(sig);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let poly = random_poly(sig, 8, 6, &mut rng);
            let q = solve_dirichlet_q(&poly).unwrap();
            if let (Some(dq), Some(dp)) = (q.degree(), poly.degree()) {
                assert!(dq + 2 <= dp);
            }
            let lhs = spec.sublaplacian_decomposed(&(&one_minus * &q)).unwrap();
            assert_eq!(lhs, -spec.sublaplacian_decomposed(&poly).unwrap());
        }
    }

    #[test]
    fn decomposition_is_linear_and_reconstructs() {
        let spec = h1();
        let sig = spec.signature();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for m in 0..=8 {
            let a = random_homogeneous(sig, m, &mut rng);
            let b = random_homogeneous(sig, m, &mut rng);
            let (ca, cb) = (rat(3, 2), rat(-5, 7));
            let ra = decompose_once(&a, m).unwrap();
            let rb = decompose_once(&b, m).unwrap();
            let rs = decompose_once(&(&a.scale(&ca) + &b.scale(&cb)), m).unwrap();
            assert_eq!(rs.h, &ra.h.scale(&ca) + &rb.h.scale(&cb));
            assert_eq!(rs.q, &ra.q.scale(&ca) + &rb.q.scale(&cb));
            assert_eq!(&ra.h + &(&eta_squared(sig) * &ra.q), a);
            let chain = decompose_full(&a, m).unwrap();
            assert_eq!(chain.len(), m as usize / 2 + 1);
            for (j, h) in chain.iter().enumerate() {
                assert!(h.is_zero() || homogeneous_degree(h).unwrap() == m - 2 * j as u32);
                assert!(spec.sublaplacian(h).unwrap().is_zero());
            }
            assert_eq!(recompose(&chain).unwrap(), a);
        }
    }

    #[test]
    fn dimension_identity() {
        let spec = h1();
        let sig = spec.signature();
        for m in 0..=12u32 {
            let dim_h = crate::harmonic::harmonic_dimension(&spec, m).unwrap();
            let below = if m >= 2 { monomial_basis(sig, m - 2).len() } else { 0 };
            assert_eq!(monomial_basis(sig, m).len(), dim_h + below);
        }
    }

    #[test]
    fn foreign_signature_is_rejected() {
        let h2 = Signature::heisenberg(2);
        let poly = parse_poly("x1^2", &h2).unwrap();
        assert_eq!(solve_dirichlet_q(&poly), Err(Error::SignatureMismatch));
    }
}
