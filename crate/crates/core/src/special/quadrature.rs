use nalgebra::DMatrix;

use super::laguerre_scaled_pair;
use crate::error::{Error, Result};

pub const MAX_QUADRATURE_POINTS: usize = 256;

/// Generalized Gauss-Laguerre rule for `∫_0^∞ z^alpha e^{-z} f(z) dz`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    ln_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights; the outermost ones underflow to zero for large rules.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn ln_weights(&self) -> &[f64] {
        &self.ln_weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| w * f(z))
            .sum()
    }
}

/// Builds the `m`-point rule.
///
/// Nodes start as eigenvalues of the symmetric Jacobi matrix and are then
/// polished by Newton steps on `L_m^alpha`. Weights come from
/// `w_i = Γ(m+alpha+1) z_i / (m! (m+alpha)^2 L_{m-1}^alpha(z_i)^2)`,
/// evaluated in log space.
pub fn gauss_laguerre(m: usize, alpha: f64) -> Result<QuadratureRule> {
    if m == 0 || m > MAX_QUADRATURE_POINTS {
        return Err(Error::Domain {
            what: "quadrature size",
            value: m as f64,
        });
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain {
            what: "quadrature alpha",
            value: alpha,
        });
    }

    let jacobi = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            2.0 * i as f64 + alpha + 1.0
        } else if i.abs_diff(j) == 1 {
            let k = i.max(j) as f64;
            (k * (k + alpha)).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    let degree = m as u32;
    let mf = m as f64;
    for z in nodes.iter_mut() {
        for _ in 0..8 {
            let (cur, prev, _) = laguerre_scaled_pair(degree, alpha, *z);
            // L / L' with L' = (m L_m - (m+alpha) L_{m-1}) / z; the scale cancels.
            let step = *z * cur / (mf * cur - (mf + alpha) * prev);
            *z -= step;
            if step.abs() <= 4.0 * f64::EPSILON * z.abs() {
                break;
            }
        }
    }

    if nodes.windows(2).any(|w| w[0] >= w[1]) || nodes[0] <= 0.0 {
        return Err(Error::Domain {
            what: "quadrature node ordering",
            value: mf,
        });
    }

    let ln_front = statrs::function::gamma::ln_gamma(mf + alpha + 1.0)
        - statrs::function::gamma::ln_gamma(mf + 1.0)
        - 2.0 * (mf + alpha).ln();
    let ln_weights: Vec<f64> = nodes
        .iter()
        .map(|&z| {
            let (_, prev, ln_scale) = laguerre_scaled_pair(degree, alpha, z);
            let ln_prev = if m == 1 { 0.0 } else { prev.abs().ln() + ln_scale };
            ln_front + z.ln() - 2.0 * ln_prev
        })
        .collect();
    let weights = ln_weights.iter().map(|lw| lw.exp()).collect();

    Ok(QuadratureRule {
        alpha,
        nodes,
        weights,
        ln_weights,
    })
}
