use serde::Serialize;

use super::state::{BoundState, PartnerMode};
use super::CanonicalRadialOde;
use crate::error::{Error, Result};
use crate::model::{FieldConfig, QuantumNumbers};
use crate::special::{gauss_laguerre, log_gamma};

/// The closed-form normalization constant and its auxiliary `omega` values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationData {
    pub omega1p: f64,
    pub omega2p: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    /// `N`; may underflow for large `L`, see `ln_constant`.
    pub constant: f64,
    pub ln_constant: f64,
}

/// Closed-form `N` with factorials read as `Γ(x + 1)`:
///
/// ```text
/// N^{-2} (2 c2)^{1+2L} = Γ(n+2L+1)/n! (1 + w1^2) + Γ(n+2L)/(n-1)! w2^2 + Γ(n+2L+2)/(n+1)! w3^2
/// w1' = n - 1 - ell + L + mu b,   w2' = mu a / (2 c2) - 1/2
/// w1 = w1' + w2' (2n + 2L + 1),   w2 = (n + 2L)(1 + w2'),   w3 = w2' (n + 1)
/// ```
///
/// The `w2` term is dropped at `n = 0` (`1/Γ(0) = 0`). Both branches use the
/// same expression.
pub fn normalization_closed(state: &BoundState) -> Result<NormalizationData> {
    closed_from_parts(state.field(), state.quantum_numbers(), state.ode())
}

pub(crate) fn closed_from_parts(
    cfg: &FieldConfig,
    qn: QuantumNumbers,
    ode: &CanonicalRadialOde,
) -> Result<NormalizationData> {
    let n = qn.n as f64;
    let ell = qn.ell as f64;
    let l = ode.l;
    let two_l = 2.0 * l;

    let omega1p = n - 1.0 - ell + l + cfg.mu * cfg.b;
    let omega2p = cfg.mu * cfg.a / (2.0 * ode.c2) - 0.5;
    let omega1 = omega1p + omega2p * (2.0 * n + two_l + 1.0);
    let omega2 = (n + two_l) * (1.0 + omega2p);
    let omega3 = omega2p * (1.0 + n);

    let lead = ln_gamma_checked(n + two_l + 1.0)? - log_gamma(n + 1.0)?;
    let mut sum = 1.0 + omega1 * omega1;
    if qn.n > 0 {
        let ratio = ln_gamma_checked(n + two_l)? - log_gamma(n)? - lead;
        sum += omega2 * omega2 * ratio.exp();
    }
    let ratio = ln_gamma_checked(n + two_l + 2.0)? - log_gamma(n + 2.0)? - lead;
    sum += omega3 * omega3 * ratio.exp();

    let ln_constant = 0.5 * ((1.0 + two_l) * (2.0 * ode.c2).ln() - lead - sum.ln());
    Ok(NormalizationData {
        omega1p,
        omega2p,
        omega1,
        omega2,
        omega3,
        constant: ln_constant.exp(),
        ln_constant,
    })
}

fn ln_gamma_checked(x: f64) -> Result<f64> {
    if x > 0.0 {
        log_gamma(x)
    } else {
        Err(Error::Domain {
            what: "gamma argument in normalization",
            value: x,
        })
    }
}

/// `∫_0^∞ (upper^2 + partner^2) r^2 dr` for unit `N`, by an `m`-point
/// Gauss-Laguerre rule in `x = 2 c2 r` with weight `x^{2L} e^{-x}`.
///
/// The remaining integrand is a polynomial of degree at most `2n + 2`, so any
/// `m >= n + 2` is exact. `partner = None` drops the partner term.
pub fn normalization_integral(state: &BoundState, partner: Option<PartnerMode>, m: usize) -> Result<f64> {
    Ok(ln_unit_integral(state, partner, m)?.exp())
}

fn ln_unit_integral(state: &BoundState, partner: Option<PartnerMode>, m: usize) -> Result<f64> {
    let rule = gauss_laguerre(m, state.alpha())?;
    let sum = rule.integrate(|x| {
        let p = state.laguerre_at(x);
        let q = partner.map_or(0.0, |mode| state.partner_bracket(mode, x));
        p * p + q * q
    });
    let two_c2 = 2.0 * state.ode().c2;
    Ok(sum.ln() - (state.alpha() + 1.0) * two_c2.ln())
}

pub(crate) fn ln_numeric(state: &BoundState, mode: PartnerMode, m: Option<usize>) -> Result<f64> {
    let m = m.unwrap_or(state.quantum_numbers().n as usize + 3);
    Ok(-0.5 * ln_unit_integral(state, Some(mode), m)?)
}

/// `N` making `∫ (upper^2 + partner^2) r^2 dr = 1`, with `m = n + 3` points.
pub fn normalization_numeric(state: &BoundState, mode: PartnerMode) -> Result<f64> {
    Ok(ln_numeric(state, mode, None)?.exp())
}

pub fn normalization_numeric_with(state: &BoundState, mode: PartnerMode, m: usize) -> Result<f64> {
    Ok(ln_numeric(state, mode, Some(m))?.exp())
}
