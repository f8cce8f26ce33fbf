use super::{chart, pairwise_sum, Weight};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_n'(x).
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n, p0 = P_{n−1}
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Tensor rule: periodic trapezoid in `θ`, Gauss–Legendre in `ψ`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub n_theta: usize,
    pub n_psi: usize,
    points: Vec<[f64; 3]>,
    weights: Vec<f64>,
    cos_psi: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(n_theta: usize, n_psi: usize) -> Result<Self> {
        if n_theta < 2 || n_psi < 2 {
            return Err(Error::InvalidArgument(format!(
                "quadrature sizes must be at least 2, got ({n_theta}, {n_psi})"
            )));
        }
        let (gx, gw) = gauss_legendre(n_psi);
        let half_pi = std::f64::consts::FRAC_PI_2;
        let dtheta = 2.0 * std::f64::consts::PI / n_theta as f64;
        let mut points = Vec::with_capacity(n_theta * n_psi);
        let mut weights = Vec::with_capacity(n_theta * n_psi);
        let mut cos_psi = Vec::with_capacity(n_theta * n_psi);
        for (x, w) in gx.iter().zip(&gw) {
            let psi = half_pi * x;
            for i in 0..n_theta {
                let theta = dtheta * i as f64;
                points.push(chart(theta, psi));
                weights.push(dtheta * half_pi * w);
                cos_psi.push(psi.cos());
            }
        }
        Ok(QuadratureRule {
            n_theta,
            n_psi,
            points,
            weights,
            cos_psi,
        })
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    /// Values of `p` at every node, in node order.
    pub fn values(&self, p: &Polynomial) -> Vec<f64> {
        let f = p.to_float();
        self.points.iter().map(|pt| f.eval(pt)).collect()
    }

    /// `∫ v w dσ` for node values `v`.
    pub fn integrate_values(&self, values: &[f64], weight: Weight) -> f64 {
        let terms: Vec<f64> = match weight {
            Weight::None => values.iter().zip(&self.weights).map(|(v, w)| v * w).collect(),
            Weight::Horizontal => values
                .iter()
                .zip(&self.weights)
                .zip(&self.cos_psi)
                .map(|((v, w), c)| v * w * c)
                .collect(),
        };
        pairwise_sum(&terms)
    }

    /// `∫ f g w dσ` for node values of `f` and `g`.
    pub fn integrate_product(&self, f: &[f64], g: &[f64], weight: Weight) -> f64 {
        let prod: Vec<f64> = f.iter().zip(g).map(|(a, b)| a * b).collect();
        self.integrate_values(&prod, weight)
    }

    pub fn integrate(&self, p: &Polynomial, weight: Weight) -> f64 {
        self.integrate_values(&self.values(p), weight)
    }
}
