//! Bound-state spectrum for the central field `E(r) = a + b/r`.
//!
//! Both branches reduce to the canonical radial equation
//!
//! ```text
//! y'' + (3/r) y' + r^{-2} (-c1 r - c2^2 r^2 - c3sq) y = 0,
//! ```
//!
//! whose regular, decaying solutions are
//! `y = N r^{L-1} e^{-c2 r} L_n^{2L}(2 c2 r)` with `L = sqrt(1 + c3sq)`, provided
//! the quantization relation `c1 = -2 c2 (n + L + 1/2)` holds. `c1` is affine
//! in the energy, so each `(n, ell)` gives exactly one level.

mod normalization;
mod scan;
mod state;

use serde::Serialize;

pub use normalization::{
    normalization_closed, normalization_integral, normalization_numeric,
    normalization_numeric_with, NormalizationData,
};
pub(crate) use scan::check_bounds;
pub use scan::{degeneracy_scan, DegeneracyReport, LevelEntry, ScanFailure, MAX_QUANTUM_NUMBER};
pub use state::{wavefunction_partner, wavefunction_upper, BoundState, PartnerMode, RadialJet};

use crate::error::{Error, Result};
use crate::model::{Branch, Convention, FieldConfig, QuantumNumbers};
use crate::nu::{self, HypergeometricTypeEquation, NuReduction, Polynomial};

/// Coefficients of the canonical radial equation for one branch and energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalRadialOde {
    pub c1: f64,
    pub c2: f64,
    pub c3sq: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub branch: Branch,
    pub convention: Convention,
}

impl CanonicalRadialOde {
    /// Validates `1 + c3sq > 0` and `c2 > 0`.
    pub fn new(c1: f64, c2: f64, c3sq: f64, branch: Branch, convention: Convention) -> Result<Self> {
        let l = angular_exponent_from(c3sq)?;
        if !(c2 > 0.0) {
            return Err(Error::NonNormalizable { c2 });
        }
        Ok(Self {
            c1,
            c2,
            c3sq,
            l,
            branch,
            convention,
        })
    }

    /// The radial equation multiplied by `r^2`, in hypergeometric form.
    pub fn hypergeometric_form(&self) -> HypergeometricTypeEquation {
        HypergeometricTypeEquation::new(
            Polynomial::linear(0.0, 1.0),
            Polynomial::constant(3.0),
            Polynomial::from_array([-self.c3sq, -self.c1, -self.c2 * self.c2]),
        )
        .expect("sigma = r is nonzero and tau~ is constant")
    }

    /// NU reduction on the root `k = -c1 - 2 c2 L`, the one giving
    /// `pi = -1 + L - c2 r`.
    pub fn nu_reduction(&self) -> Result<NuReduction> {
        let eq = self.hypergeometric_form();
        let ks = nu::candidate_ks(&eq)?;
        let target = -self.c1 - 2.0 * self.c2 * self.l;
        let k = ks
            .into_iter()
            .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
            .ok_or(Error::NoSquareCompletion)?;
        nu::reduce(&eq, k)
    }

    /// `c1 + 2 c2 (n + L + 1/2)`, zero for an eigenstate of degree `n`.
    pub fn quantization_residual(&self, n: u32) -> f64 {
        self.c1 + 2.0 * self.c2 * (n as f64 + self.l + 0.5)
    }

    /// The three terms `y''`, `3y'/r` and `r^{-2}(...)y` of the operator.
    pub fn operator_terms(&self, r: f64, y: f64, dy: f64, d2y: f64) -> [f64; 3] {
        let potential = (-self.c1 * r - self.c2 * self.c2 * r * r - self.c3sq) / (r * r);
        [d2y, 3.0 * dy / r, potential * y]
    }
}

/// Particle/antiparticle classification by the sign of the energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateKind {
    Particle,
    Antiparticle,
    Threshold,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Particle => "particle",
            StateKind::Antiparticle => "antiparticle",
            StateKind::Threshold => "threshold",
        }
    }
}

pub fn classify_state(epsilon: f64) -> StateKind {
    if epsilon > 0.0 {
        StateKind::Particle
    } else if epsilon < 0.0 {
        StateKind::Antiparticle
    } else {
        StateKind::Threshold
    }
}

fn angular_exponent_from(c3sq: f64) -> Result<f64> {
    let value = 1.0 + c3sq;
    if value > 0.0 && value.is_finite() {
        Ok(value.sqrt())
    } else {
        Err(Error::ComplexExponent { value })
    }
}

/// Constant term `c3sq` of the canonical equation.
///
/// Plus: `(1+ell)(ell+1-2 mu b) + (mu b)^2 = (ell+1-mu b)^2`, evaluated as the
/// square to avoid cancellation near `mu b = ell + 1`. The corrected minus form
/// is the mirror image `(ell+1+mu b)^2`; the literal minus form
/// `(1+ell)(2 mu b-ell-1) + (mu b)^2` is not a square and is used as is.
pub fn constant_term(cfg: &FieldConfig, ell: u32, branch: Branch, conv: Convention) -> f64 {
    let l1 = ell as f64 + 1.0;
    let mb = cfg.mu * cfg.b;
    match (branch, conv) {
        (Branch::Plus, _) => (l1 - mb) * (l1 - mb),
        (Branch::Minus, Convention::CorrectedMinus) => (l1 + mb) * (l1 + mb),
        (Branch::Minus, _) => l1 * (2.0 * mb - l1) + mb * mb,
    }
}

/// `L(ell) = sqrt(1 + c3sq)`; fails when the radicand is not positive.
pub fn angular_exponent(cfg: &FieldConfig, ell: u32, branch: Branch, conv: Convention) -> Result<f64> {
    angular_exponent_from(constant_term(cfg, ell, branch, conv))
}

/// `c1 = c1_0 + c1_slope * eps`.
fn c1_affine(cfg: &FieldConfig, ell: u32, branch: Branch) -> (f64, f64) {
    let mu_a = cfg.mu * cfg.a;
    let orbital = mu_a * (3.0 + 2.0 * ell as f64);
    let cross = 2.0 * cfg.mu * cfg.mu * cfg.a * cfg.b;
    match branch {
        Branch::Plus => (cross - orbital, 2.0),
        Branch::Minus => (orbital + cross, -2.0),
    }
}

fn decay_rate(cfg: &FieldConfig, conv: Convention) -> f64 {
    let mu_a = cfg.mu * cfg.a;
    match conv {
        Convention::PaperLiteral => mu_a,
        Convention::SignAware | Convention::CorrectedMinus => mu_a.abs(),
    }
}

/// Canonical-equation coefficients at energy `epsilon`.
pub fn coefficients(
    cfg: &FieldConfig,
    qn: QuantumNumbers,
    branch: Branch,
    epsilon: f64,
    conv: Convention,
) -> Result<CanonicalRadialOde> {
    let (c1_0, slope) = c1_affine(cfg, qn.ell, branch);
    let c3sq = constant_term(cfg, qn.ell, branch, conv);
    CanonicalRadialOde::new(c1_0 + slope * epsilon, decay_rate(cfg, conv), c3sq, branch, conv)
}

/// Energy of level `(n, ell)`.
///
/// `PaperLiteral` evaluates `-mu a [n - ell - 1 + L + mu b]` (plus) and
/// `mu a [n + ell + 2 + L + mu b]` (minus) as printed, needing only a real
/// `L`. The other conventions set the NU constant `lambda` equal to
/// `lambda_n`; since `lambda` is affine in the energy this is solved
/// directly from one reduction at zero energy.
pub fn energy_level(
    cfg: &FieldConfig,
    qn: QuantumNumbers,
    branch: Branch,
    conv: Convention,
) -> Result<f64> {
    let l = angular_exponent(cfg, qn.ell, branch, conv)?;
    let n = qn.n as f64;
    let ell = qn.ell as f64;
    let mu_a = cfg.mu * cfg.a;
    let mu_b = cfg.mu * cfg.b;

    if conv == Convention::PaperLiteral {
        return Ok(match branch {
            Branch::Plus => -mu_a * (n - ell - 1.0 + l + mu_b),
            Branch::Minus => mu_a * (n + ell + 2.0 + l + mu_b),
        });
    }

    let (c1_0, slope) = c1_affine(cfg, qn.ell, branch);
    let c2 = decay_rate(cfg, conv);
    if c2 == 0.0 {
        // no normalizable state, but the relation c1 = 0 still fixes a value
        return Ok(-c1_0 / slope);
    }
    let at_zero = coefficients(cfg, qn, branch, 0.0, conv)?;
    let red = at_zero.nu_reduction()?;
    let lambda_n = nu::lambda_n(&red, &at_zero.hypergeometric_form().sigma(), qn.n);
    // lambda(eps) = lambda(0) - slope * eps
    Ok((red.lambda - lambda_n) / slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(a: f64, b: f64, mu: f64) -> FieldConfig {
        FieldConfig::new(a, b, mu).unwrap()
    }

    #[test]
    fn plus_constant_term_is_a_square() {
        let c = cfg(1.0, 1.0, -0.001);
        let c3 = constant_term(&c, 0, Branch::Plus, Convention::SignAware);
        assert!((1.0 + c3 - 2.002001).abs() < 1e-14);
        let l = angular_exponent(&c, 0, Branch::Plus, Convention::SignAware).unwrap();
        assert!((l - 2.002001f64.sqrt()).abs() < 1e-15);
        assert!((l - 1.4149206).abs() < 1e-6);
        let zero_b = cfg(1.0, 0.0, 0.3);
        assert_eq!(constant_term(&zero_b, 0, Branch::Plus, Convention::SignAware), 1.0);
        let l = angular_exponent(&zero_b, 0, Branch::Plus, Convention::SignAware).unwrap();
        assert!((l - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn literal_minus_constant_term_goes_complex() {
        let c = cfg(1.0, 1.0, -0.001);
        let qn = QuantumNumbers::new(0, 0);
        let err = coefficients(&c, qn, Branch::Minus, 0.0, Convention::PaperLiteral).unwrap_err();
        match err {
            Error::ComplexExponent { value } => assert!((value - (-0.002 + 1e-6)).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        assert!(coefficients(&c, qn, Branch::Minus, 0.0, Convention::CorrectedMinus).is_ok());
    }

    #[test]
    fn paper_literal_rejects_negative_decay() {
        let c = cfg(1.0, 1.0, -0.001);
        let qn = QuantumNumbers::new(0, 0);
        assert!(matches!(
            coefficients(&c, qn, Branch::Plus, 0.0, Convention::PaperLiteral),
            Err(Error::NonNormalizable { .. })
        ));
        assert!(coefficients(&c, qn, Branch::Plus, 0.0, Convention::SignAware).is_ok());
    }

    #[test]
    fn energy_examples() {
        let qn = QuantumNumbers::new(0, 0);
        let e = energy_level(&cfg(1.0, 1.0, -0.001), qn, Branch::Plus, Convention::PaperLiteral)
            .unwrap();
        let want = 0.001 * (2.002001f64.sqrt() - 1.0 - 0.001);
        assert!((e - want).abs() < 1e-15 * want, "{e}");
        assert!((e / 4.139206e-4 - 1.0).abs() < 1e-6);
        assert_eq!(classify_state(e), StateKind::Particle);

        let c = cfg(1.0, 1.0, 0.001);
        let aware = energy_level(&c, qn, Branch::Plus, Convention::SignAware).unwrap();
        let literal = energy_level(&c, qn, Branch::Plus, Convention::PaperLiteral).unwrap();
        let want = -0.001 * (-1.0 + (1.0f64 + 0.999 * 0.999).sqrt() + 0.001);
        assert!((aware - want).abs() < 1e-12 * want.abs(), "{aware}");
        assert!((aware / -4.145066e-4 - 1.0).abs() < 1e-6);
        assert!((aware - literal).abs() <= 1e-12 * literal.abs());
    }

    #[test]
    fn zero_field_strength_gives_zero_energy() {
        let c = cfg(0.0, 1.0, 0.001);
        let cases = [
            (Branch::Plus, Convention::PaperLiteral),
            (Branch::Plus, Convention::SignAware),
            (Branch::Minus, Convention::CorrectedMinus),
        ];
        for (branch, conv) in cases {
            let qn = QuantumNumbers::new(1, 1);
            assert_eq!(energy_level(&c, qn, branch, conv).unwrap(), 0.0);
            assert!(matches!(
                coefficients(&c, qn, branch, 0.0, conv),
                Err(Error::NonNormalizable { .. })
            ));
        }
    }

    #[test]
    fn nu_route_matches_printed_formulas_when_mu_a_positive() {
        let c = cfg(1.3, -0.7, 0.02);
        // the literal minus exponent is real only for large mu b
        let cm = cfg(1.3, 250.0, 0.02);
        for n in 0..4 {
            for ell in 0..4 {
                let qn = QuantumNumbers::new(n, ell);
                let p = energy_level(&c, qn, Branch::Plus, Convention::SignAware).unwrap();
                let pl = energy_level(&c, qn, Branch::Plus, Convention::PaperLiteral).unwrap();
                assert!((p - pl).abs() <= 1e-12 * pl.abs());
                let m = energy_level(&cm, qn, Branch::Minus, Convention::SignAware).unwrap();
                let ml = energy_level(&cm, qn, Branch::Minus, Convention::PaperLiteral).unwrap();
                assert!((m - ml).abs() <= 1e-12 * ml.abs());
            }
        }
    }

    #[test]
    fn quantization_holds_at_the_level() {
        let c = cfg(1.0, 1.0, -0.001);
        for branch in [Branch::Plus, Branch::Minus] {
            let conv = Convention::default_for(branch);
            for n in 0..3 {
                let qn = QuantumNumbers::new(n, 1);
                let e = energy_level(&c, qn, branch, conv).unwrap();
                let ode = coefficients(&c, qn, branch, e, conv).unwrap();
                let scale = 2.0 * ode.c2 * (n as f64 + ode.l + 0.5);
                assert!(ode.quantization_residual(n).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn classification() {
        assert_eq!(classify_state(4.139e-4), StateKind::Particle);
        assert_eq!(classify_state(-3.41e-3), StateKind::Antiparticle);
        assert_eq!(classify_state(0.0), StateKind::Threshold);
    }
}
