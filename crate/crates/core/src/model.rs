//! Physical configuration: the central field `E(r) = a + b/r`, quantum
//! numbers, solution branches and the energy-dependent mass profiles.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{require_positive, Error, Result};

/// Field strengths and the anomalous magnetic moment, in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldConfig {
    pub a: f64,
    pub b: f64,
    pub mu: f64,
}

impl FieldConfig {
    pub fn new(a: f64, b: f64, mu: f64) -> Result<Self> {
        for (what, v) in [("a", a), ("b", b), ("mu", mu)] {
            if !v.is_finite() {
                return Err(Error::Domain { what, value: v });
            }
        }
        Ok(Self { a, b, mu })
    }

    /// `E(r) = a + b/r`.
    pub fn electric_field(&self, r: f64) -> Result<f64> {
        let r = require_positive("r", r)?;
        Ok(self.a + self.b / r)
    }
}

/// Laguerre degree `n` and orbital quantum number `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub ell: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, ell: u32) -> Self {
        Self { n, ell }
    }
}

/// The two radial solution families. `Plus` carries the closed form in the
/// upper spinor component `F`, `Minus` in the lower component `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "plus" => Ok(Branch::Plus),
            "minus" => Ok(Branch::Minus),
            other => Err(format!("unknown branch `{other}` (expected plus|minus)")),
        }
    }
}

/// How sign ambiguities of the printed closed forms are resolved.
///
/// * `PaperLiteral` evaluates the printed energy formulas verbatim and takes
///   the decay rate as `mu a` (which must then be positive for a bound state).
/// * `SignAware` uses `c2 = |mu a|` and solves the quantization relation.
/// * `CorrectedMinus` is `SignAware` plus the repaired constant term of the
///   minus branch, `1 + c3sq = 1 + (ell + 1 + mu b)^2`. On the plus branch it
///   coincides with `SignAware`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    PaperLiteral,
    #[default]
    SignAware,
    CorrectedMinus,
}

impl Convention {
    /// `SignAware` for the plus branch, `CorrectedMinus` for the minus branch.
    pub fn default_for(branch: Branch) -> Self {
        match branch {
            Branch::Plus => Convention::SignAware,
            Branch::Minus => Convention::CorrectedMinus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::PaperLiteral => "paper-literal",
            Convention::SignAware => "sign-aware",
            Convention::CorrectedMinus => "corrected-minus",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "paper-literal" => Ok(Convention::PaperLiteral),
            "sign-aware" => Ok(Convention::SignAware),
            "corrected-minus" => Ok(Convention::CorrectedMinus),
            other => Err(format!(
                "unknown convention `{other}` (expected paper-literal|sign-aware|corrected-minus)"
            )),
        }
    }
}

/// Energy-dependent mass solving `dM/dr = (eps + M)^2` (plus) or
/// `dM/dr = (eps - M)^2` (minus).
///
/// The general solutions are `M = -1/(r + c) - eps` and `M = -1/(r + c) + eps`;
/// `c` is the integration constant, zero unless set explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProfile {
    pub branch: Branch,
    pub epsilon: f64,
    pub integration_constant: f64,
}

impl MassProfile {
    pub fn new(branch: Branch, epsilon: f64) -> Self {
        Self {
            branch,
            epsilon,
            integration_constant: 0.0,
        }
    }

    pub fn with_integration_constant(mut self, c: f64) -> Self {
        self.integration_constant = c;
        self
    }

    pub fn at(&self, r: f64) -> Result<f64> {
        let r = require_positive("r", r)?;
        let shifted = require_positive("r + c", r + self.integration_constant)?;
        let core = -1.0 / shifted;
        Ok(match self.branch {
            Branch::Plus => core - self.epsilon,
            Branch::Minus => core + self.epsilon,
        })
    }

    /// Right-hand side of the defining mass equation at `r`.
    pub fn ode_rhs(&self, r: f64) -> Result<f64> {
        let m = self.at(r)?;
        let s = match self.branch {
            Branch::Plus => self.epsilon + m,
            Branch::Minus => self.epsilon - m,
        };
        Ok(s * s)
    }
}

pub fn electric_field(cfg: &FieldConfig, r: f64) -> Result<f64> {
    cfg.electric_field(r)
}

/// Mass profile with zero integration constant.
pub fn mass_profile(branch: Branch, epsilon: f64, r: f64) -> Result<f64> {
    MassProfile::new(branch, epsilon).at(r)
}

/// `|central difference of M at r - (eps +- M(r))^2|`, which is `O(h^2)`.
pub fn mass_ode_check(branch: Branch, epsilon: f64, r: f64, h: f64) -> Result<f64> {
    let h = require_positive("h", h)?;
    if r <= h {
        return Err(Error::Domain { what: "r - h", value: r - h });
    }
    let profile = MassProfile::new(branch, epsilon);
    let slope = (profile.at(r + h)? - profile.at(r - h)?) / (2.0 * h);
    Ok((slope - profile.ode_rhs(r)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_values() {
        let cfg = FieldConfig::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(cfg.electric_field(1.0).unwrap(), 2.0);
        let zero = FieldConfig::new(0.0, 0.0, 0.3).unwrap();
        assert_eq!(zero.electric_field(7.5).unwrap(), 0.0);
        let cfg = FieldConfig::new(1.0, 2.0, 0.0).unwrap();
        assert_eq!(cfg.electric_field(4.0).unwrap(), 1.5);
    }

    #[test]
    fn field_rejects_nonpositive_radius() {
        let cfg = FieldConfig::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(cfg.electric_field(0.0), Err(Error::Domain { .. })));
        assert!(matches!(cfg.electric_field(-1.0), Err(Error::Domain { .. })));
        assert!(FieldConfig::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn field_times_r_identity() {
        let cfg = FieldConfig::new(0.37, -2.5, 1.0).unwrap();
        for r in [0.1, 1.0, 3.0, 17.0] {
            let lhs = cfg.electric_field(r).unwrap() * r - cfg.b;
            assert!((lhs - cfg.a * r).abs() <= 1e-14 * (cfg.a * r).abs().max(1.0));
        }
    }

    #[test]
    fn mass_profile_values() {
        assert_eq!(mass_profile(Branch::Plus, 0.0, 1.0).unwrap(), -1.0);
        assert_eq!(mass_profile(Branch::Plus, 0.5, 2.0).unwrap(), -1.0);
        assert_eq!(mass_profile(Branch::Minus, 0.5, 2.0).unwrap(), 0.0);
        assert!(mass_profile(Branch::Minus, 0.5, 0.0).is_err());
    }

    #[test]
    fn mass_equation_finite_difference() {
        assert!(mass_ode_check(Branch::Plus, 0.0, 1.0, 1e-4).unwrap() <= 1e-7);
        assert!(mass_ode_check(Branch::Minus, 1.0, 2.0, 1e-4).unwrap() <= 1e-7);
        assert!(mass_ode_check(Branch::Plus, 0.3, 0.5, 1e-5).unwrap() <= 1e-6);
        assert!(mass_ode_check(Branch::Plus, 0.3, 0.5, 0.6).is_err());
    }

    #[test]
    fn mass_check_converges_at_second_order() {
        let e1 = mass_ode_check(Branch::Plus, 0.2, 0.7, 1e-2).unwrap();
        let e2 = mass_ode_check(Branch::Plus, 0.2, 0.7, 5e-3).unwrap();
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn shifted_profile_still_solves_mass_equation() {
        let p = MassProfile::new(Branch::Minus, 0.4).with_integration_constant(0.25);
        let r = 1.3;
        let h = 1e-4;
        let slope = (p.at(r + h).unwrap() - p.at(r - h).unwrap()) / (2.0 * h);
        assert!((slope - p.ode_rhs(r).unwrap()).abs() < 1e-7);
    }
}
