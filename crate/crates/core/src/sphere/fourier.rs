//! θ-Fourier support of polynomial traces on `S_ρ` (`H_1`).
//!
//! On the sphere `x + iy = √cosψ e^{iθ}`, so `x^a y^b t^c` expands into modes
//! `e^{inθ}` with `|n| ≤ a + b`, multiplied by a function of `ψ` that only
//! depends on `(a + b, c)`. Coefficients are therefore collected per
//! `(a + b, c, n)` before deciding which modes survive.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct GaussRational {
    re: Rational,
    im: Rational,
}

impl GaussRational {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Set of `n` with a nonzero `e^{inθ}` coefficient.
pub fn fourier_support(p: &Polynomial) -> BTreeSet<i64> {
    let mut acc: BTreeMap<(u32, u32, i64), GaussRational> = BTreeMap::new();
    for (mono, coeff) in p.terms() {
        let (a, b, c) = (mono.exp(0), mono.exp(1), mono.exp(2));
        // x^a y^b = (z + z̄)^a (z − z̄)^b (−i)^b / 2^{a+b}
        let scale = coeff / Rational::from_integer(BigInt::from(2u32).pow(a + b));
        for i in 0..=a {
            for j in 0..=b {
                let sign = if (b - j) % 2 == 0 { 1 } else { -1 };
                let n = 2 * (i + j) as i64 - (a + b) as i64;
                let real = Rational::from_integer(binomial(a, i) * binomial(b, j) * sign) * &scale;
                let slot = acc.entry((a + b, c, n)).or_default();
                match b % 4 {
                    0 => slot.re += real,
                    1 => slot.im -= real,
                    2 => slot.re -= real,
                    _ => slot.im += real,
                }
            }
        }
    }
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((_, _, n), _)| n)
        .collect()
}

/// Whether `∫ f g w dσ` vanishes by symmetry alone: the θ-modes of `f` and
/// `g` never cancel, or every monomial of `f g` is odd in some variable.
pub fn symmetry_forced_zero(f: &Polynomial, g: &Polynomial) -> bool {
    let sf = fourier_support(f);
    let sg = fourier_support(g);
    if sf.iter().all(|n| !sg.contains(&-n)) {
        return true;
    }
    (f * g)
        .terms()
        .all(|(m, _)| m.exps().iter().any(|e| e % 2 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Signature};

    fn support(s: &str) -> Vec<i64> {
        fourier_support(&parse_poly(s, &Signature::heisenberg(1)).unwrap())
            .into_iter()
            .collect()
    }

    #[test]
    fn supports() {
        assert_eq!(support("1"), [0]);
        assert_eq!(support("t"), [0]);
        assert_eq!(support("x"), [-1, 1]);
        assert_eq!(support("x^2-y^2"), [-2, 2]);
        assert_eq!(support("x*y"), [-2, 2]);
        assert_eq!(support("x^2+y^2"), [0]);
        assert_eq!(support("x^3-3*x*y^2"), [-3, 3]);
        assert_eq!(support("2*x^3+3*y*t"), [-3, -1, 1, 3]);
        assert!(support("0").is_empty());
    }

    #[test]
    fn forced_zeros() {
        let sig = Signature::heisenberg(1);
        let p = |s: &str| parse_poly(s, &sig).unwrap();
        assert!(symmetry_forced_zero(&p("x^2-y^2"), &p("t")));
        assert!(symmetry_forced_zero(&p("x"), &p("y")));
        assert!(!symmetry_forced_zero(&p("x"), &p("2*x^3+3*y*t")));
        assert!(!symmetry_forced_zero(&p("x"), &p("x")));
        assert!(symmetry_forced_zero(&p("t"), &p("1")));
    }
}
