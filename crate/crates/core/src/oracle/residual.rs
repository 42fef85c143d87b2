use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{mass_profile, Branch};
use crate::spectrum::{BoundState, CanonicalRadialOde, PartnerMode, RadialJet};

/// Number of points in [`standard_grid`].
pub const STANDARD_GRID_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ResidualMode {
    #[serde(rename = "CanonicalODE")]
    CanonicalOde,
    FirstOrderSystem,
}

/// Pointwise residuals of one equation on a grid.
///
/// `residuals` are raw; `max_rel` and `rms_rel` divide each by the largest
/// magnitude among the equation's terms at that point (0/0 counts as 0).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_rel: f64,
    pub rms_rel: f64,
    pub mode: ResidualMode,
}

impl ResidualReport {
    fn from_terms<I>(grid: &[f64], mode: ResidualMode, rows: I) -> Self
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut residuals = Vec::with_capacity(grid.len());
        let mut max_rel = 0.0f64;
        let mut sum_sq = 0.0;
        for (res, scale) in rows {
            let rel = if scale > 0.0 { res.abs() / scale } else { 0.0 };
            max_rel = max_rel.max(rel);
            sum_sq += rel * rel;
            residuals.push(res);
        }
        let rms_rel = if residuals.is_empty() {
            0.0
        } else {
            (sum_sq / residuals.len() as f64).sqrt().min(max_rel)
        };
        Self {
            grid: grid.to_vec(),
            residuals,
            max_rel,
            rms_rel,
            mode,
        }
    }
}

/// A radial function with exact first and second derivatives.
pub trait RadialProfile {
    fn jet(&self, r: f64) -> Result<RadialJet>;
}

impl RadialProfile for BoundState {
    fn jet(&self, r: f64) -> Result<RadialJet> {
        self.upper_jet(r)
    }
}

impl<F: Fn(f64) -> RadialJet> RadialProfile for F {
    fn jet(&self, r: f64) -> Result<RadialJet> {
        Ok(self(r))
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if let Some(&bad) = grid.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(Error::Domain { what: "grid point", value: bad });
    }
    if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Domain { what: "grid ordering", value: w[1] });
    }
    Ok(())
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || n < 2 {
        return Err(Error::Domain { what: "log grid bounds", value: hi });
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}

/// 200 log-spaced points in `[0.05, 40 / c2]`.
pub fn standard_grid(ode: &CanonicalRadialOde) -> Result<Vec<f64>> {
    log_grid(0.05, 40.0 / ode.c2, STANDARD_GRID_POINTS)
}

/// Residual of the canonical radial equation for `profile`.
pub fn canonical_residual<P: RadialProfile + ?Sized>(
    ode: &CanonicalRadialOde,
    profile: &P,
    grid: &[f64],
) -> Result<ResidualReport> {
    check_grid(grid)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &r in grid {
        let j = profile.jet(r)?;
        let terms = ode.operator_terms(r, j.value, j.d1, j.d2);
        let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        rows.push((terms.iter().sum::<f64>(), scale));
    }
    Ok(ResidualReport::from_terms(grid, ResidualMode::CanonicalOde, rows))
}

/// Both first-order relations of a branch.
///
/// `partner_relation` is the relation that defines the partner (zero by
/// construction for [`PartnerMode::RelationDerived`]); `closure_relation` is
/// the other one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstOrderReport {
    pub partner_mode: PartnerMode,
    pub partner_relation: ResidualReport,
    pub closure_relation: ResidualReport,
}

/// Plus, with `(F, G) = (upper, partner)` and `M` from the mass profile:
///
/// ```text
/// F' + mu E F - ell F / r + (eps + M) G = 0
/// G' - mu E G + (ell + 2) G / r - (eps - M) F = 0
/// ```
///
/// Minus, with `(G, F) = (upper, partner)`:
///
/// ```text
/// G' - mu E G - ell G / r - (eps - M) F = 0
/// F' + mu E F - (ell + 2) F / r + (eps + M) G = 0
/// ```
pub fn first_order_residual(state: &BoundState, mode: PartnerMode, grid: &[f64]) -> Result<FirstOrderReport> {
    check_grid(grid)?;
    let cfg = state.field();
    let eps = state.energy();
    let ell = state.quantum_numbers().ell as f64;
    let branch = state.branch();

    let mut defining = Vec::with_capacity(grid.len());
    let mut closing = Vec::with_capacity(grid.len());
    for &r in grid {
        let up = state.upper_jet(r)?;
        let pa = state.partner_jet(r, mode)?;
        let mu_e = cfg.mu * cfg.electric_field(r)?;
        let m = mass_profile(branch, eps, r)?;
        let rows = match branch {
            Branch::Plus => [
                [up.d1, mu_e * up.value, -ell * up.value / r, (eps + m) * pa.value],
                [pa.d1, -mu_e * pa.value, (ell + 2.0) * pa.value / r, -(eps - m) * up.value],
            ],
            Branch::Minus => [
                [up.d1, -mu_e * up.value, -ell * up.value / r, -(eps - m) * pa.value],
                [pa.d1, mu_e * pa.value, -(ell + 2.0) * pa.value / r, (eps + m) * up.value],
            ],
        };
        let [d, c] = rows.map(|t| (t.iter().sum::<f64>(), t.iter().fold(0.0f64, |a, v| a.max(v.abs()))));
        defining.push(d);
        closing.push(c);
    }
    Ok(FirstOrderReport {
        partner_mode: mode,
        partner_relation: ResidualReport::from_terms(grid, ResidualMode::FirstOrderSystem, defining),
        closure_relation: ResidualReport::from_terms(grid, ResidualMode::FirstOrderSystem, closing),
    })
}
