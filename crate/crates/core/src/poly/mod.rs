//! Exact sparse polynomials over weighted variables.

mod monomial;
mod parse;
mod polynomial;
mod signature;

pub use monomial::{monomial_basis, Monomial};
pub use parse::{parse_poly, MAX_PARSE_DEGREE};
pub use polynomial::{FloatPoly, Polynomial};
pub use signature::Signature;

pub(crate) use polynomial::rational_to_f64;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    /// Dense reference: exponent-vector map multiplication without the
    /// sparse container.
    fn dense_mul(
        a: &[(Vec<u32>, i64)],
        b: &[(Vec<u32>, i64)],
    ) -> BTreeMap<Vec<u32>, i64> {
        let mut out = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn build(sig: &Arc<Signature>, terms: &[(Vec<u32>, i64)]) -> Polynomial {
        Polynomial::from_terms(
            sig,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(sig, e.clone()), int(*c))),
        )
    }

    fn terms_strategy() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..6), 0..6)
    }

    fn homogeneous_strategy() -> impl Strategy<Value = (u32, Vec<i64>)> {
        (0u32..7).prop_flat_map(|m| {
            let n = monomial_basis(&Signature::heisenberg(1), m).len();
            (Just(m), prop::collection::vec(-3i64..4, n))
        })
    }

    proptest! {
        #[test]
        fn product_matches_dense_reference(a in terms_strategy(), b in terms_strategy()) {
            let sig = Signature::heisenberg(1);
            let prod = &build(&sig, &a) * &build(&sig, &b);
            let expect = dense_mul(&a, &b);
            let got: BTreeMap<Vec<u32>, i64> = prod
                .terms()
                .map(|(m, c)| (m.exps().to_vec(), c.to_integer().try_into().unwrap()))
                .collect();
            prop_assert_eq!(got, expect);
        }

        #[test]
        fn degree_of_product_is_additive((ma, ca) in homogeneous_strategy(), (mb, cb) in homogeneous_strategy()) {
            let sig = Signature::heisenberg(1);
            let a = Polynomial::from_coefficients(&sig, &monomial_basis(&sig, ma), &ca.iter().map(|&c| int(c)).collect::<Vec<_>>());
            let b = Polynomial::from_coefficients(&sig, &monomial_basis(&sig, mb), &cb.iter().map(|&c| int(c)).collect::<Vec<_>>());
            prop_assume!(!a.is_zero() && !b.is_zero());
            let prod = &a * &b;
            prop_assert!(prod.is_homogeneous());
            prop_assert_eq!(prod.degree(), Some(ma + mb));
        }

        #[test]
        fn print_parse_roundtrip(a in terms_strategy(), d in 1i64..5) {
            let sig = Signature::heisenberg(1);
            let p = build(&sig, &a).scale(&rat(1, d));
            let text = p.to_string();
            let back = parse_poly(&text, &sig).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn components_sum_back(a in terms_strategy()) {
            let sig = Signature::heisenberg(1);
            let p = build(&sig, &a);
            let comps = p.homogeneous_components();
            let mut sum = Polynomial::zero(&sig);
            for (d, c) in &comps {
                prop_assert!(c.is_homogeneous());
                prop_assert_eq!(c.degree(), Some(*d));
                sum = &sum + c;
            }
            prop_assert_eq!(sum, p);
        }
    }

    #[test]
    fn ring_examples() {
        let sig = Signature::heisenberg(1);
        let p = |s: &str| parse_poly(s, &sig).unwrap();
        assert_eq!(&p("x^2+y^2") + &p("4*t"), p("x^2+y^2+4*t"));
        assert_eq!(&p("x^3-y*t") * &Polynomial::one(&sig), p("x^3-y*t"));
        assert_eq!(&p("x+t") * &p("x-t"), p("x^2-t^2"));
        let other = Signature::heisenberg(2);
        assert!(p("x").try_add(&Polynomial::one(&other)).is_err());
        assert!(p("x").try_mul(&Polynomial::one(&other)).is_err());
    }

    #[test]
    fn component_examples() {
        let sig = Signature::heisenberg(1);
        let p = |s: &str| parse_poly(s, &sig).unwrap();
        let comps = p("x+t").homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&1], p("x"));
        assert_eq!(comps[&2], p("t"));
        let eta = p("x^2+y^2+4*t").homogeneous_components();
        assert_eq!(eta.keys().copied().collect::<Vec<_>>(), vec![2]);
        assert!(p("0").homogeneous_components().is_empty());
    }

    /// Parity-restricted binomial sums for dim P_m(H_k).
    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn dim_p_formula(k: u64, m: u64) -> u64 {
        (0..=m)
            .filter(|j| (m - j).is_multiple_of(2))
            .map(|j| binomial(j + 2 * k - 1, 2 * k - 1))
            .sum()
    }

    #[test]
    fn basis_counts_match_binomial_sums() {
        for k in 1..=3 {
            let sig = Signature::heisenberg(k);
            for m in 0..=8 {
                assert_eq!(
                    monomial_basis(&sig, m).len() as u64,
                    dim_p_formula(k as u64, m as u64),
                    "k={k} m={m}"
                );
            }
        }
        let sig = Signature::heisenberg(1);
        for n in 0..=6u32 {
            let n64 = n as usize;
            assert_eq!(monomial_basis(&sig, 2 * n).len(), (n64 + 1).pow(2));
            assert_eq!(monomial_basis(&sig, 2 * n + 1).len(), (n64 + 1) * (n64 + 2));
        }
    }

    #[test]
    fn dilation_scales_homogeneous() {
        let sig = Signature::heisenberg(1);
        let eta = parse_poly("x^2+y^2+4*t", &sig).unwrap();
        assert_eq!(eta.dilate(&int(2)).unwrap(), eta.scale(&int(4)));
        assert!(eta.dilate(&int(0)).is_err());
        let mixed = parse_poly("x+t", &sig).unwrap();
        assert_eq!(mixed.dilate(&rat(1, 2)).unwrap(), parse_poly("1/2*x+1/4*t", &sig).unwrap());
    }

    #[test]
    fn primitive_normalizes() {
        let sig = Signature::heisenberg(1);
        let p = parse_poly("-2/3*x^2+4/9*y^2", &sig).unwrap();
        assert_eq!(p.primitive().to_string(), "3*x^2-2*y^2");
    }

    #[test]
    fn substitution_composes() {
        let sig = Signature::heisenberg(1);
        let p = parse_poly("x*y+t", &sig).unwrap();
        let images = vec![
            parse_poly("x+1", &sig).unwrap(),
            parse_poly("y", &sig).unwrap(),
            parse_poly("t-x*y", &sig).unwrap(),
        ];
        assert_eq!(p.substitute(&images).unwrap(), parse_poly("y+t", &sig).unwrap());
    }
}
