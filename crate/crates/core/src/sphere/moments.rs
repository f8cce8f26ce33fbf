//! Closed-form sphere moments.
//!
//! In the chart `(θ, ψ) ↦ (√cosψ cosθ, √cosψ sinθ, sinψ)` the surface
//! measure is `dθ dψ`, so
//! `∫ x^a y^b t^c dσ = ∫cos^aθ sin^bθ dθ · ∫cos^{(a+b)/2}ψ sin^cψ dψ`.
//! Both factors are Beta values at half-integers, and every moment is a
//! rational multiple of `π` or `π²`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Weight;
use crate::poly::{rational_to_f64, Rational};

/// `π` to 200 decimals, for decimal printing only.
const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651328230664709384460955058223172535940812848111745028410270193852110555964462294895493038196";

/// Largest number of decimals [`PiPoly::to_decimal`] will print.
pub const MAX_PRECISION: usize = 150;

/// `Σ_e c_e π^e` with rational `c_e`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PiPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl PiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, e: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    fn add_term(&mut self, e: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&mut self, other: &PiPoly) {
        for (&e, c) in &other.coeffs {
            self.add_term(e, c.clone());
        }
    }

    pub fn scaled(&self, s: &Rational) -> PiPoly {
        let mut out = Self::zero();
        for (&e, c) in &self.coeffs {
            out.add_term(e, c * s);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: u32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&e, c)| rational_to_f64(c) * std::f64::consts::PI.powi(e as i32))
            .sum()
    }

    /// Fixed-point decimal string with `digits` places (at most
    /// [`MAX_PRECISION`]), rounded half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.min(MAX_PRECISION);
        let (int_part, frac) = PI_DIGITS.split_once('.').expect("decimal point");
        let pi = Rational::new(
            format!("{int_part}{frac}").parse::<BigInt>().expect("digits"),
            BigInt::from(10u32).pow(frac.len() as u32),
        );
        let mut value = Rational::zero();
        for (&e, c) in &self.coeffs {
            let mut term = c.clone();
            for _ in 0..e {
                term *= &pi;
            }
            value += term;
        }
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = value.abs() * Rational::from_integer(scale.clone());
        let rounded = (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
        let whole = &rounded / &scale;
        let rest = &rounded % &scale;
        let sign = if value.is_negative() && !rounded.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{whole}");
        }
        format!("{sign}{whole}.{:0>width$}", rest.to_string(), width = digits)
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            let pi = match e {
                0 => String::new(),
                1 => "pi".to_string(),
                _ => format!("pi^{e}"),
            };
            match (a.is_one(), pi.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&pi)?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{pi}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiPoly({self})")
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `Γ(n2/2)` for a positive integer `n2`, as `(c, h)` meaning `c · π^{h/2}`.
fn gamma_half(n2: u64) -> (Rational, u32) {
    assert!(n2 > 0, "Gamma pole");
    if n2.is_multiple_of(2) {
        (Rational::from_integer(factorial(n2 / 2 - 1)), 0)
    } else {
        // Γ(n + 1/2) = (2n)! / (4^n n!) · √π
        let n = (n2 - 1) / 2;
        let den = BigInt::from(4u32).pow(n as u32) * factorial(n);
        (Rational::new(factorial(2 * n), den), 1)
    }
}

/// `B(u2/2, v2/2)` as `(c, h)` meaning `c · π^{h/2}`.
fn beta_half(u2: u64, v2: u64) -> (Rational, i32) {
    let (a, ha) = gamma_half(u2);
    let (b, hb) = gamma_half(v2);
    let (c, hc) = gamma_half(u2 + v2);
    (a * b / c, ha as i32 + hb as i32 - hc as i32)
}

/// `∫_0^{2π} cos^a θ sin^b θ dθ`.
pub fn theta_integral(a: u32, b: u32) -> PiPoly {
    if a % 2 == 1 || b % 2 == 1 {
        return PiPoly::zero();
    }
    let (c, h) = beta_half(a as u64 + 1, b as u64 + 1);
    debug_assert_eq!(h, 2);
    PiPoly::monomial(c * Rational::from_integer(2.into()), 1)
}

/// `∫_{−π/2}^{π/2} cos^p ψ sin^c ψ dψ`.
pub fn psi_integral(p: u32, c: u32) -> PiPoly {
    if c % 2 == 1 {
        return PiPoly::zero();
    }
    let (v, h) = beta_half(p as u64 + 1, c as u64 + 1);
    debug_assert!(h == 0 || h == 2);
    PiPoly::monomial(v, (h / 2) as u32)
}

/// `∫_{S_ρ} x^a y^b t^c w dσ` with `w = 1` or `w = |z|² = cosψ`.
pub fn sphere_moment(a: u32, b: u32, c: u32, weight: Weight) -> PiPoly {
    let th = theta_integral(a, b);
    if th.is_zero() {
        return th;
    }
    let p = (a + b) / 2 + u32::from(weight == Weight::Horizontal);
    let ps = psi_integral(p, c);
    let mut out = PiPoly::zero();
    for (&e1, c1) in &th.coeffs {
        for (&e2, c2) in &ps.coeffs {
            out.add_term(e1 + e2, c1 * c2);
        }
    }
    out
}

pub fn moment_f64(a: u32, b: u32, c: u32, weight: Weight) -> f64 {
    sphere_moment(a, b, c, weight).to_f64()
}

/// `|B_ρ(0,1)|` from `2π ∫_0^1 2R √(1 − R⁴) dR`, by tanh-sinh quadrature.
pub fn ball_volume_tanh_sinh() -> f64 {
    // ∫_0^1 f(R) dR with R = (1 + tanh(π/2 sinh u)) / 2; 1 − R is formed
    // directly to keep the endpoint singularity resolved.
    let f = |r: f64, one_minus_r: f64| {
        let s = one_minus_r * (1.0 + r) * (1.0 + r * r);
        2.0 * r * s.max(0.0).sqrt()
    };
    let h: f64 = 1.0 / 64.0;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut terms = Vec::new();
    for k in -(6 * 64)..=(6 * 64) {
        let u = k as f64 * h;
        let s = half_pi * u.sinh();
        let cosh_s = s.cosh();
        let w = half_pi * u.cosh() / (cosh_s * cosh_s) / 2.0;
        if w < 1e-300 {
            continue;
        }
        // (1 ± tanh s)/2 = 1/(1 + e^{∓2s})
        let r = 1.0 / (1.0 + (-2.0 * s).exp());
        let one_minus_r = 1.0 / (1.0 + (2.0 * s).exp());
        terms.push(w * f(r, one_minus_r));
    }
    2.0 * std::f64::consts::PI * h * super::pairwise_sum(&terms)
}

/// Exact `π^e` multiple as `(numerator, denominator, e)` when the value is
/// a single term.
pub fn single_term(p: &PiPoly) -> Option<(i64, i64, u32)> {
    if p.coeffs.len() != 1 {
        return None;
    }
    let (&e, c) = p.coeffs.iter().next()?;
    Some((c.numer().to_i64()?, c.denom().to_i64()?, e))
}
