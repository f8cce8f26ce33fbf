//! Numerics on the Korányi unit sphere `S_ρ = {|z|⁴ + t² = 1}` of `H_1`.
//!
//! The chart `(θ, ψ) ↦ (√cosψ cosθ, √cosψ sinθ, sinψ)` with
//! `θ ∈ [0, 2π)`, `ψ ∈ [−π/2, π/2]` has volume element `r³ dr dθ dψ` in the
//! polar coordinates `(r, θ, ψ) ↦ δ_r(chart(θ, ψ))`, so the polar surface
//! measure is `dσ = dθ dψ`. Inner products are computed either from exact
//! monomial moments or by tensor quadrature.

mod fourier;
mod gram;
pub mod moments;
mod quadrature;

use rand::Rng;
use serde::Serialize;

pub use fourier::{fourier_support, symmetry_forced_zero};
pub use gram::{gram_matrix, project, GramPair, GramReport, GramSummary, ProjectionReport};
pub use moments::{ball_volume_tanh_sinh, sphere_moment, PiPoly};
pub use quadrature::{gauss_legendre, QuadratureRule};

use crate::error::{Error, Result};
use crate::poly::{rat, Polynomial, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Moments,
    Quadrature,
}

/// Density against `dσ`: `1`, or `cosψ = |z|² = |∇_H ρ|²` on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    None,
    Horizontal,
}

/// Default quadrature sizes `(n_θ, n_ψ)`.
pub const DEFAULT_RULE: (usize, usize) = (128, 96);

pub fn chart(theta: f64, psi: f64) -> [f64; 3] {
    let r = psi.cos().max(0.0).sqrt();
    [r * theta.cos(), r * theta.sin(), psi.sin()]
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let (a, b) = values.split_at(values.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

pub(crate) fn require_h1(p: &Polynomial) -> Result<()> {
    if p.signature().as_ref() != Signature::heisenberg(1).as_ref() {
        return Err(Error::NotHeisenberg(format!(
            "sphere numerics need polynomials over h1, got variables {:?}",
            p.signature().names()
        )));
    }
    Ok(())
}

/// `∫ f g w dσ` from the closed-form moments.
pub fn exact_inner_product(f: &Polynomial, g: &Polynomial, weight: Weight) -> Result<PiPoly> {
    require_h1(f)?;
    require_h1(g)?;
    let mut out = PiPoly::zero();
    for (m, c) in (f * g).terms() {
        out.add(&sphere_moment(m.exp(0), m.exp(1), m.exp(2), weight).scaled(c));
    }
    Ok(out)
}

pub fn inner_product(
    f: &Polynomial,
    g: &Polynomial,
    method: Method,
    weight: Weight,
    rule: &QuadratureRule,
) -> Result<f64> {
    match method {
        Method::Moments => Ok(exact_inner_product(f, g, weight)?.to_f64()),
        Method::Quadrature => {
            require_h1(f)?;
            require_h1(g)?;
            Ok(rule.integrate_product(&rule.values(f), &rule.values(g), weight))
        }
    }
}

/// Rotation `θ ↦ θ + φ` with `(cos φ, sin φ) = (c, s)` rational,
/// `c² + s² = 1`: returns `p(c x − s y, s x + c y, t)`.
pub fn rotate_h1(p: &Polynomial, c: (i64, i64), s: (i64, i64)) -> Result<Polynomial> {
    require_h1(p)?;
    let sig = p.signature();
    let (c, s) = (rat(c.0, c.1), rat(s.0, s.1));
    let x = Polynomial::var(sig, 0);
    let y = Polynomial::var(sig, 1);
    let images = vec![
        &x.scale(&c) - &y.scale(&s),
        &x.scale(&s) + &y.scale(&c),
        Polynomial::var(sig, 2),
    ];
    p.substitute(&images)
}

/// Uniform random chart parameters `(θ, ψ)`.
pub fn random_chart_params<R: Rng>(n: usize, rng: &mut R) -> Vec<(f64, f64)> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    (0..n)
        .map(|_| {
            (
                rng.gen_range(0.0..2.0 * std::f64::consts::PI),
                rng.gen_range(-half_pi..half_pi),
            )
        })
        .collect()
}

/// Largest `|∂_r h(δ_r ω)|_{r=1} − m h(ω)|` over the given chart points,
/// with the radial derivative taken by a 9-point central difference.
pub fn euler_radial_defect(h: &Polynomial, m: u32, params: &[(f64, f64)]) -> Result<f64> {
    require_h1(h)?;
    const STENCIL: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let step = 0.1;
    let f = h.to_float();
    let at = |r: f64, w: &[f64; 3]| f.eval(&[r * w[0], r * w[1], r * r * w[2]]);
    let mut worst: f64 = 0.0;
    for &(theta, psi) in params {
        let w = chart(theta, psi);
        let mut d = 0.0;
        for (k, c) in STENCIL.iter().enumerate() {
            let off = (k + 1) as f64 * step;
            d += c * (at(1.0 + off, &w) - at(1.0 - off, &w));
        }
        d /= step;
        worst = worst.max((d - m as f64 * f.eval(&w)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::koranyi_norm;
    use crate::harmonic::harmonic_basis;
    use crate::group::GroupSpec;
    use crate::poly::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &Signature::heisenberg(1)).unwrap()
    }

    #[test]
    fn chart_lands_on_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (theta, psi) in random_chart_params(200, &mut rng) {
            let rho = koranyi_norm(1, &chart(theta, psi));
            assert!((rho - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn chart_jacobian_is_r_cubed() {
        // Volume element of (r, θ, ψ) ↦ (r√cosψ cosθ, r√cosψ sinθ, r² sinψ),
        // by central differences at random points.
        let map = |r: f64, th: f64, ps: f64| {
            let c = chart(th, ps);
            [r * c[0], r * c[1], r * r * c[2]]
        };
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (th, ps) in random_chart_params(50, &mut rng) {
            let ps = ps.clamp(-1.4, 1.4);
            let r = 0.7;
            let hstep = 1e-5;
            let col = |k: usize| {
                let mut a = [r, th, ps];
                let mut b = [r, th, ps];
                a[k] += hstep;
                b[k] -= hstep;
                let (fa, fb) = (map(a[0], a[1], a[2]), map(b[0], b[1], b[2]));
                [0, 1, 2].map(|i| (fa[i] - fb[i]) / (2.0 * hstep))
            };
            let (c0, c1, c2) = (col(0), col(1), col(2));
            let det = c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
                + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
            assert!((det.abs() - r.powi(3)).abs() < 1e-8, "{det}");
        }
    }

    #[test]
    fn inner_product_examples() {
        let rule = QuadratureRule::new(64, 48).unwrap();
        for method in [Method::Moments, Method::Quadrature] {
            let v = inner_product(&p("t"), &p("1"), method, Weight::None, &rule).unwrap();
            assert!(v.abs() < 1e-12);
            let v = inner_product(&p("x"), &p("x"), method, Weight::None, &rule).unwrap();
            assert!((v - 2.0 * PI).abs() < 1e-10);
            let v = inner_product(&p("x"), &p("2*x^3+3*y*t"), method, Weight::None, &rule).unwrap();
            assert!((v - 0.75 * PI * PI).abs() < 1e-10);
        }
        let exact = exact_inner_product(&p("x"), &p("2*x^3+3*y*t"), Weight::None).unwrap();
        assert_eq!(exact, PiPoly::monomial(rat(3, 4), 2));
        let h2 = parse_poly("x1", &Signature::heisenberg(2)).unwrap();
        assert!(exact_inner_product(&h2, &h2, Weight::None).is_err());
    }

    #[test]
    fn rotation_preserves_exact_inner_products() {
        let spec = GroupSpec::heisenberg(1);
        let basis: Vec<Polynomial> = (0..=4)
            .flat_map(|m| harmonic_basis(&spec, m).unwrap().elements)
            .collect();
        let rotated: Vec<Polynomial> = basis.iter().map(|b| rotate_h1(b, (3, 5), (4, 5)).unwrap()).collect();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                for w in [Weight::None, Weight::Horizontal] {
                    assert_eq!(
                        exact_inner_product(&basis[i], &basis[j], w).unwrap(),
                        exact_inner_product(&rotated[i], &rotated[j], w).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn euler_relation_on_traces() {
        let spec = GroupSpec::heisenberg(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = random_chart_params(100, &mut rng);
        for m in 0..=6 {
            for h in harmonic_basis(&spec, m).unwrap().elements {
                assert!(euler_radial_defect(&h, m, &params).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let v: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 500500.0);
    }
}
