use rayon::prelude::*;
use serde::Serialize;

use super::integrator::{integrate, Tolerance};
use crate::error::{Error, Result};
use crate::model::{Branch, Convention, FieldConfig, QuantumNumbers};
use crate::spectrum::{coefficients, energy_level, CanonicalRadialOde};

/// Start and end of the outward integration in units of `1 / c2`.
pub const RHO_START: f64 = 1e-3;
pub const RHO_END: f64 = 40.0;
const INTEGRATION_TOL: Tolerance = Tolerance { rtol: 1e-12, atol: 1e-300 };
const MAX_BISECTIONS: u32 = 200;
/// Bisection tolerance used by [`compare_spectrum`], relative to the energy.
pub const COMPARE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootingResult {
    pub energy: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub bisections: u32,
    pub node_count: u32,
}

/// Outcome of one outward integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trajectory {
    /// `y` at `r = 40 / c2`.
    pub end_value: f64,
    pub nodes: u32,
}

/// Frobenius series `rho^{L-1} sum_k a_k rho^k` and its derivative in the
/// scaled variable `rho = c2 r`, with `a_0 = 1` and
/// `k (2L + k) a_k = (c1 / c2) a_{k-1} + a_{k-2}`.
fn frobenius_start(ode: &CanonicalRadialOde, rho: f64) -> [f64; 2] {
    let c1s = ode.c1 / ode.c2;
    let l = ode.l;
    let (mut a_prev, mut a_cur) = (0.0, 1.0);
    let (mut sum, mut dsum) = (1.0, 0.0);
    let mut pow = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let a_next = (c1s * a_cur + a_prev) / (kf * (2.0 * l + kf));
        dsum += kf * a_next * pow;
        pow *= rho;
        let term = a_next * pow;
        sum += term;
        a_prev = a_cur;
        a_cur = a_next;
        if term.abs() <= 1e-18 * sum.abs() && k > 2 {
            break;
        }
    }
    let lead = rho.powf(l - 1.0);
    [lead * sum, lead * ((l - 1.0) * sum / rho + dsum)]
}

/// Integrates the canonical equation outward from `r = 1e-3 / c2` to `40 / c2`.
pub fn integrate_outward(ode: &CanonicalRadialOde) -> Result<Trajectory> {
    let c1s = ode.c1 / ode.c2;
    let c3sq = ode.c3sq;
    // y'' = -3 y'/rho + (c1/c2 / rho + 1 + c3sq / rho^2) y
    let rhs = |rho: f64, y: &[f64; 2]| {
        [y[1], -3.0 * y[1] / rho + (c1s / rho + 1.0 + c3sq / (rho * rho)) * y[0]]
    };
    let y0 = frobenius_start(ode, RHO_START);
    let mut nodes = 0u32;
    let mut last_sign = y0[0].signum();
    let (y, _) = integrate(rhs, RHO_START, y0, RHO_END, 1e-2 * RHO_START, INTEGRATION_TOL, |_, y| {
        let s = y[0].signum();
        if y[0] != 0.0 && s != last_sign {
            nodes += 1;
            last_sign = s;
        }
    })?;
    Ok(Trajectory { end_value: y[0], nodes })
}

/// Bisects the energy on the sign of `y(40 / c2)` until the bracket is
/// narrower than `tol * |energy|`.
pub fn shoot_eigenvalue<F>(family: F, n: u32, bracket: (f64, f64), tol: f64) -> Result<ShootingResult>
where
    F: Fn(f64) -> Result<CanonicalRadialOde>,
{
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Bracket { lo, hi });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "tol", value: tol });
    }
    let mut t_lo = integrate_outward(&family(lo)?)?;
    let mut t_hi = integrate_outward(&family(hi)?)?;
    if t_lo.end_value.signum() == t_hi.end_value.signum() {
        return Err(Error::Bracket { lo, hi });
    }

    let mut bisections = 0;
    while hi - lo > tol * (0.5 * (lo + hi)).abs() && bisections < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let t = integrate_outward(&family(mid)?)?;
        if t.end_value.signum() == t_lo.end_value.signum() {
            lo = mid;
            t_lo = t;
        } else {
            hi = mid;
            t_hi = t;
        }
        bisections += 1;
    }

    let node_count = t_lo.nodes.min(t_hi.nodes);
    if node_count != n {
        return Err(Error::WrongState { expected: n, found: node_count });
    }
    Ok(ShootingResult {
        energy: 0.5 * (lo + hi),
        bracket_lo: lo,
        bracket_hi: hi,
        bisections,
        node_count,
    })
}

/// One row of [`compare_spectrum`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub n: u32,
    pub ell: u32,
    pub epsilon_closed: Option<f64>,
    pub epsilon_shoot: Option<f64>,
    pub rel_diff: Option<f64>,
    pub shooting: Option<ShootingResult>,
    pub error_kind: Option<&'static str>,
    pub error: Option<String>,
}

impl SpectrumComparison {
    pub fn passes(&self, threshold: f64) -> bool {
        self.rel_diff.is_some_and(|d| d <= threshold)
    }
}

/// Bracket around a closed-form level: +-20%, but never wider than half the
/// level spacing `c2` on either side.
pub fn seed_bracket(epsilon: f64, c2: f64) -> (f64, f64) {
    let half = (0.2 * epsilon.abs()).min(0.5 * c2);
    let half = if half > 0.0 { half } else { 0.5 * c2 };
    (epsilon - half, epsilon + half)
}

fn compare_one(cfg: &FieldConfig, branch: Branch, conv: Convention, qn: QuantumNumbers) -> Result<(f64, ShootingResult)> {
    let closed = energy_level(cfg, qn, branch, conv)?;
    let ode = coefficients(cfg, qn, branch, closed, conv)?;
    let family = |eps: f64| coefficients(cfg, qn, branch, eps, conv);
    let shot = shoot_eigenvalue(family, qn.n, seed_bracket(closed, ode.c2), COMPARE_TOL)?;
    Ok((closed, shot))
}

/// Shoots every `(n, ell)` pair and compares with the closed-form level.
/// Rows come back in `(n, ell)` order; per-pair failures are recorded in the row.
pub fn compare_spectrum(
    cfg: &FieldConfig,
    branch: Branch,
    conv: Convention,
    n_max: u32,
    ell_max: u32,
) -> Result<Vec<SpectrumComparison>> {
    crate::spectrum::check_bounds(n_max, ell_max)?;
    let pairs: Vec<QuantumNumbers> = (0..=n_max)
        .flat_map(|n| (0..=ell_max).map(move |ell| QuantumNumbers::new(n, ell)))
        .collect();
    Ok(pairs
        .par_iter()
        .map(|&qn| {
            let mut row = SpectrumComparison {
                n: qn.n,
                ell: qn.ell,
                epsilon_closed: None,
                epsilon_shoot: None,
                rel_diff: None,
                shooting: None,
                error_kind: None,
                error: None,
            };
            match compare_one(cfg, branch, conv, qn) {
                Ok((closed, shot)) => {
                    row.epsilon_closed = Some(closed);
                    row.epsilon_shoot = Some(shot.energy);
                    row.rel_diff = Some((shot.energy - closed).abs() / closed.abs());
                    row.shooting = Some(shot);
                }
                Err(e) => {
                    row.epsilon_closed = energy_level(cfg, qn, branch, conv).ok();
                    row.error_kind = Some(e.kind());
                    row.error = Some(e.to_string());
                }
            }
            row
        })
        .collect())
}
