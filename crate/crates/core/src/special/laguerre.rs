use crate::error::{require_positive, Result};

const RESCALE_ABOVE: f64 = 1e100;

/// `L_n^alpha(z)` from the three-term recurrence
/// `(k+1) L_{k+1} = (2k + 1 + alpha - z) L_k - (k + alpha) L_{k-1}`.
pub fn laguerre(n: u32, alpha: f64, z: f64) -> f64 {
    let (cur, _, ln_scale) = laguerre_scaled_pair(n, alpha, z);
    if ln_scale == 0.0 {
        cur
    } else {
        cur * ln_scale.exp()
    }
}

/// Returns `(L_n, L_{n-1}, s)` with both values divided by `e^s`, so large
/// degrees at large `z` do not overflow. `L_{-1}` is taken as zero.
pub(crate) fn laguerre_scaled_pair(n: u32, alpha: f64, z: f64) -> (f64, f64, f64) {
    if n == 0 {
        return (1.0, 0.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - z;
    let mut ln_scale = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - z) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            prev /= RESCALE_ABOVE;
            ln_scale += RESCALE_ABOVE.ln();
        }
    }
    (cur, prev, ln_scale)
}

/// `d/dz L_n^alpha(z) = [n L_n^alpha(z) - (n + alpha) L_{n-1}^alpha(z)] / z`.
///
/// The identity is singular at `z = 0`, so only `z > 0` is accepted.
pub fn laguerre_derivative(n: u32, alpha: f64, z: f64) -> Result<f64> {
    let z = require_positive("laguerre_derivative z", z)?;
    if n == 0 {
        return Ok(0.0);
    }
    let (cur, prev, ln_scale) = laguerre_scaled_pair(n, alpha, z);
    let nf = n as f64;
    let d = (nf * cur - (nf + alpha) * prev) / z;
    Ok(if ln_scale == 0.0 { d } else { d * ln_scale.exp() })
}

/// Second derivative, from differentiating the first-derivative identity:
/// `[n L_n' - (n + alpha) L_{n-1}'] / z - L_n' / z`.
pub fn laguerre_second_derivative(n: u32, alpha: f64, z: f64) -> Result<f64> {
    let z = require_positive("laguerre_second_derivative z", z)?;
    if n <= 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let d_n = laguerre_derivative(n, alpha, z)?;
    let d_prev = laguerre_derivative(n - 1, alpha, z)?;
    Ok((nf * d_n - (nf + alpha) * d_prev) / z - d_n / z)
}
