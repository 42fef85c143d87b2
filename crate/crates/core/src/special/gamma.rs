use crate::error::{require_positive, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    let x = require_positive("log_gamma argument", x)?;
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `Γ(x)` for `x > 0`; overflows to infinity past `x ≈ 171.6`.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(f64::exp)
}
