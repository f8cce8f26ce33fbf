//! Group law, horizontal frames, sub-Laplacians and dilations.

mod field;
mod spec;

pub use field::VectorField;
pub use spec::{GroupSpec, SpecFile, VariableEntry};

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

/// A point of the group in exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub coords: Vec<Rational>,
}

impl GroupElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        GroupElement { coords }
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        GroupElement {
            coords: vec![Rational::from_integer(0.into()); spec.signature().len()],
        }
    }
}

/// `g·h` through the spec's polynomial law.
pub fn group_mul(spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    let law = spec
        .law()
        .ok_or_else(|| Error::GroupLawUnavailable(spec.name().to_string()))?;
    let n = spec.signature().len();
    if g.coords.len() != n || h.coords.len() != n {
        return Err(Error::InvalidArgument("element dimension mismatch".into()));
    }
    let point: Vec<Rational> = g.coords.iter().chain(&h.coords).cloned().collect();
    Ok(GroupElement {
        coords: law.iter().map(|c| c.eval_rational(&point)).collect(),
    })
}

/// Inverse on `H_k`: `(z, t)⁻¹ = (−z, −t)`.
pub fn heisenberg_inverse(spec: &GroupSpec, g: &GroupElement) -> Result<GroupElement> {
    spec.require_heisenberg()?;
    Ok(GroupElement {
        coords: g.coords.iter().map(|c| -c).collect(),
    })
}

/// `p ∘ L_g`, i.e. `x ↦ p(g·x)`, computed exactly.
pub fn left_translate(spec: &GroupSpec, p: &Polynomial, g: &GroupElement) -> Result<Polynomial> {
    if !p.same_signature(&Polynomial::zero(spec.signature())) {
        return Err(Error::SignatureMismatch);
    }
    let images = spec.law_images(&g.coords)?;
    p.substitute(&images)
}

/// Korányi gauge `ρ = (|z|⁴ + t²)^{1/4}` on `H_k` in floating point.
pub fn koranyi_norm(k: usize, point: &[f64]) -> f64 {
    let z2: f64 = point[..2 * k].iter().map(|v| v * v).sum();
    let t = point[2 * k];
    (z2 * z2 + t * t).sqrt().sqrt()
}

/// Floating-point group law on `H_k`.
pub fn heisenberg_mul_f64(k: usize, g: &[f64], h: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = g.iter().zip(h).map(|(a, b)| a + b).collect();
    let cross: f64 = (0..k).map(|j| h[j] * g[k + j] - g[j] * h[k + j]).sum();
    out[2 * k] += 2.0 * cross;
    out
}

/// Floating-point dilation `δ_r` on `H_k`.
pub fn heisenberg_dilate_f64(k: usize, r: f64, point: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = point.iter().map(|v| v * r).collect();
    out[2 * k] = point[2 * k] * r * r;
    out
}

/// Empirical constant `max ρ(g·h) / (ρ(g) + ρ(h))` over random pairs.
pub fn quasi_triangle_constant<R: Rng>(k: usize, samples: usize, rng: &mut R) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let g: Vec<f64> = (0..=2 * k).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let h: Vec<f64> = (0..=2 * k).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let denom = koranyi_norm(k, &g) + koranyi_norm(k, &h);
        if denom > 1e-12 {
            worst = worst.max(koranyi_norm(k, &heisenberg_mul_f64(k, &g, &h)) / denom);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, monomial_basis, rat};
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h1() -> GroupSpec {
        GroupSpec::heisenberg(1)
    }

    fn el(v: &[i64]) -> GroupElement {
        GroupElement::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn group_law_examples() {
        let g = h1();
        let e = GroupElement::identity(&g);
        assert_eq!(group_mul(&g, &e, &el(&[3, -2, 5])).unwrap(), el(&[3, -2, 5]));
        assert_eq!(group_mul(&g, &el(&[1, 0, 0]), &el(&[0, 1, 0])).unwrap(), el(&[1, 1, -2]));
    }

    #[test]
    fn inverse_and_complex_form() {
        let spec = GroupSpec::heisenberg(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = sample::random_element(&spec, &mut rng);
            let h = sample::random_element(&spec, &mut rng);
            let inv = heisenberg_inverse(&spec, &g).unwrap();
            assert_eq!(
                group_mul(&spec, &g, &inv).unwrap(),
                GroupElement::identity(&spec)
            );
            // t + t' + 2 Im(z · conj(z')) with z_j = x_j + i y_j.
            let prod = group_mul(&spec, &g, &h).unwrap();
            let c = &g.coords;
            let d = &h.coords;
            let im: Rational = (0..2)
                .map(|j| &c[2 + j] * &d[j] - &c[j] * &d[2 + j])
                .fold(int(0), |a, b| a + b);
            assert_eq!(prod.coords[4], &(&c[4] + &d[4]) + &(im * int(2)));
        }
    }

    #[test]
    fn field_examples() {
        let g = h1();
        let p = |s: &str| g.poly(s).unwrap();
        let x = g.x_field(0).unwrap();
        let y = g.y_field(0).unwrap();
        assert_eq!(x.apply(&p("t")).unwrap(), p("2*y"));
        assert_eq!(y.apply(&p("t")).unwrap(), p("-2*x"));
        assert_eq!(g.t_field().unwrap().apply(&p("t")).unwrap(), p("1"));
        assert_eq!(x.apply(&p("x^2")).unwrap(), p("2*x"));
    }

    #[test]
    fn commutator_table() {
        for k in 1..=3 {
            let g = GroupSpec::heisenberg(k);
            let t = g.t_field().unwrap();
            for j in 0..k {
                for l in 0..k {
                    let xy = g.x_field(j).unwrap().commutator(g.y_field(l).unwrap()).unwrap();
                    if j == l {
                        assert_eq!(xy, t.scale(&int(-4)));
                    } else {
                        assert!(xy.is_zero());
                    }
                    assert!(g.x_field(j).unwrap().commutator(g.x_field(l).unwrap()).unwrap().is_zero());
                    assert!(g.y_field(j).unwrap().commutator(g.y_field(l).unwrap()).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn commutator_acts_as_bracket() {
        let g = h1();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = g.x_field(0).unwrap();
        let y = g.y_field(0).unwrap();
        let br = x.commutator(y).unwrap();
        for _ in 0..10 {
            let p = sample::random_poly(g.signature(), 6, 5, &mut rng);
            let lhs = br.apply(&p).unwrap();
            let rhs = &x.apply(&y.apply(&p).unwrap()).unwrap() - &y.apply(&x.apply(&p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sublaplacian_examples() {
        let g = h1();
        let p = |s: &str| g.poly(s).unwrap();
        assert_eq!(g.sublaplacian(&p("x^2+y^2+4*t")).unwrap(), p("4"));
        assert!(g.sublaplacian(&p("t")).unwrap().is_zero());
        assert_eq!(g.sublaplacian(&p("x^2+y^2")).unwrap(), p("4"));
        assert!(g.sublaplacian(&p("2*x^3+3*y*t")).unwrap().is_zero());
    }

    #[test]
    fn sublaplacian_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 1..=2 {
            let g = GroupSpec::heisenberg(k);
            for _ in 0..15 {
                let p = sample::random_poly(g.signature(), 10, 6, &mut rng);
                assert_eq!(
                    g.sublaplacian(&p).unwrap(),
                    g.sublaplacian_decomposed(&p).unwrap()
                );
            }
        }
    }

    #[test]
    fn sublaplacian_commutes_with_rotation() {
        let g = h1();
        let omega = g.rotation(0).unwrap();
        for m in 0..=8 {
            for mono in monomial_basis(g.signature(), m) {
                let p = Polynomial::from_monomial(g.signature(), mono, int(1));
                let a = g.sublaplacian(&omega.apply(&p).unwrap()).unwrap();
                let b = omega.apply(&g.sublaplacian(&p).unwrap()).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn euler_and_dilation() {
        let g = h1();
        let p = |s: &str| g.poly(s).unwrap();
        let v = g.euler_field();
        assert_eq!(v.apply(&p("t*x")).unwrap(), p("3*t*x"));
        assert!(v.apply(&p("1")).unwrap().is_zero());
        let eta = p("x^2+y^2+4*t");
        assert_eq!(eta.dilate(&int(2)).unwrap(), eta.scale(&int(4)));
        assert_eq!(eta.dilate(&int(0)), Err(Error::ZeroDilation));
    }

    #[test]
    fn left_translation_of_t() {
        let g = h1();
        let (a, b, c) = (rat(2, 3), int(-5), rat(7, 2));
        let el = GroupElement::new(vec![a.clone(), b.clone(), c.clone()]);
        let got = left_translate(&g, &g.poly("t").unwrap(), &el).unwrap();
        // t + c + 2(b x − a y)
        let expect = &(&g.poly("t").unwrap() + &Polynomial::constant(g.signature(), c))
            + &(&g.poly("x").unwrap().scale(&(b * int(2))) - &g.poly("y").unwrap().scale(&(a * int(2))));
        assert_eq!(got, expect);
        let p = g.poly("x^2*t-y").unwrap();
        assert_eq!(left_translate(&g, &p, &GroupElement::identity(&g)).unwrap(), p);
    }

    #[test]
    fn frame_is_left_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=2 {
            let g = GroupSpec::heisenberg(k);
            for _ in 0..8 {
                let p = sample::random_poly(g.signature(), 6, 5, &mut rng);
                let el = sample::random_element(&g, &mut rng);
                for f in g.fields() {
                    let lhs = f.apply(&left_translate(&g, &p, &el).unwrap()).unwrap();
                    let rhs = left_translate(&g, &f.apply(&p).unwrap(), &el).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let g = GroupSpec::heisenberg(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for f in g.fields() {
            let p = sample::random_poly(g.signature(), 5, 4, &mut rng);
            let q = sample::random_poly(g.signature(), 5, 4, &mut rng);
            let lhs = f.apply(&(&p * &q)).unwrap();
            let rhs = &(&f.apply(&p).unwrap() * &q) + &(&p * &f.apply(&q).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn generic_spec_without_law() {
        let json = r#"{"name":"toy","variables":[{"name":"a","weight":1},{"name":"b","weight":2}],
                       "fields":[["1","a"]]}"#;
        let spec = GroupSpec::from_json(json).unwrap();
        assert_eq!(spec.homogeneous_dimension(), 3);
        let e = GroupElement::identity(&spec);
        assert!(matches!(group_mul(&spec, &e, &e), Err(Error::GroupLawUnavailable(_))));
        assert!(matches!(
            left_translate(&spec, &spec.poly("a").unwrap(), &e),
            Err(Error::GroupLawUnavailable(_))
        ));
        assert!(spec.t_field().is_err());
    }

    #[test]
    fn spec_file_roundtrip() {
        let g = GroupSpec::heisenberg(2);
        let file = g.to_file();
        let back = GroupSpec::from_file(&file).unwrap();
        assert_eq!(back.to_file(), file);
        assert_eq!(back.fields(), g.fields());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = sample::random_element(&g, &mut rng);
        let b = sample::random_element(&g, &mut rng);
        assert_eq!(group_mul(&back, &a, &b).unwrap(), group_mul(&g, &a, &b).unwrap());
    }

    #[test]
    fn spec_file_errors() {
        assert!(GroupSpec::from_json("{").is_err());
        let short = r#"{"name":"s","variables":[{"name":"a","weight":1}],"fields":[["1","0"]]}"#;
        assert!(matches!(GroupSpec::from_json(short), Err(Error::InvalidSpec(_))));
        let badvar = r#"{"name":"s","variables":[{"name":"a","weight":1}],"fields":[["b"]]}"#;
        assert!(matches!(GroupSpec::from_json(badvar), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn norm_homogeneity_and_quasi_triangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let lam: f64 = rng.gen_range(0.1..5.0);
            let lhs = koranyi_norm(1, &heisenberg_dilate_f64(1, lam, &p));
            assert!((lhs - lam * koranyi_norm(1, &p)).abs() < 1e-12 * (1.0 + lhs));
        }
        let c = quasi_triangle_constant(1, 2000, &mut rng);
        assert!(c.is_finite() && c > 0.5 && c < 10.0, "constant {c}");
    }
}
