use serde::Serialize;

use super::normalization::{self, NormalizationData};
use super::{coefficients, energy_level, CanonicalRadialOde};
use crate::error::{require_positive, Result};
use crate::model::{Branch, Convention, FieldConfig, QuantumNumbers};
use crate::special::{laguerre, laguerre_derivative, laguerre_second_derivative};

/// How the partner component is built from the closed-form one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartnerMode {
    /// From the first-order relation that defines it: plus `G = r[F' + mu E F - ell F/r]`,
    /// minus `F = r[G' - mu E G - ell G/r]`.
    #[default]
    RelationDerived,
    /// `N r^{L-1} e^{-c2 r} {(L - 1 - c2 r) L_n + r d/dr L_n}` as printed.
    PaperLiteral,
}

impl PartnerMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PartnerMode::RelationDerived => "relation-derived",
            PartnerMode::PaperLiteral => "paper-literal",
        }
    }
}

impl std::str::FromStr for PartnerMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "relation-derived" => Ok(PartnerMode::RelationDerived),
            "paper-literal" => Ok(PartnerMode::PaperLiteral),
            other => Err(format!(
                "unknown partner mode `{other}` (expected relation-derived|paper-literal)"
            )),
        }
    }
}

/// Value with first and second radial derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RadialJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// One normalizable bound state.
///
/// The closed-form component (`F` on the plus branch, `G` on the minus
/// branch) is called the upper component; the other one is the partner.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundState {
    branch: Branch,
    qn: QuantumNumbers,
    energy: f64,
    cfg: FieldConfig,
    ode: CanonicalRadialOde,
    norm: NormalizationData,
    ln_norm: f64,
}

impl BoundState {
    /// Builds the state and normalizes it numerically with the
    /// relation-derived partner.
    pub fn new(
        cfg: &FieldConfig,
        qn: QuantumNumbers,
        branch: Branch,
        conv: Convention,
    ) -> Result<Self> {
        let energy = energy_level(cfg, qn, branch, conv)?;
        let ode = coefficients(cfg, qn, branch, energy, conv)?;
        let norm = normalization::closed_from_parts(cfg, qn, &ode)?;
        let mut state = Self {
            branch,
            qn,
            energy,
            cfg: *cfg,
            ode,
            norm,
            ln_norm: 0.0,
        };
        let n_numeric = normalization::ln_numeric(&state, PartnerMode::RelationDerived, None)?;
        state.ln_norm = n_numeric;
        Ok(state)
    }

    /// Same state with the normalization constant replaced.
    pub fn with_normalization(mut self, constant: f64) -> Result<Self> {
        self.ln_norm = require_positive("normalization constant", constant)?.ln();
        Ok(self)
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        self.qn
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn field(&self) -> &FieldConfig {
        &self.cfg
    }

    pub fn ode(&self) -> &CanonicalRadialOde {
        &self.ode
    }

    /// Closed-form normalization data.
    pub fn closed_normalization(&self) -> &NormalizationData {
        &self.norm
    }

    /// Normalization constant in use by the wavefunction evaluators.
    pub fn normalization(&self) -> f64 {
        self.ln_norm.exp()
    }

    pub fn ln_normalization(&self) -> f64 {
        self.ln_norm
    }

    pub(crate) fn alpha(&self) -> f64 {
        2.0 * self.ode.l
    }

    pub(crate) fn laguerre_at(&self, x: f64) -> f64 {
        laguerre(self.qn.n, self.alpha(), x)
    }

    pub(crate) fn laguerre_d1(&self, x: f64) -> f64 {
        laguerre_derivative(self.qn.n, self.alpha(), x).expect("x > 0")
    }

    /// `(k0, k1)` in the partner bracket `k0 P + k1 x P + x P'`, where the
    /// partner is `N r^{L-1} e^{-c2 r}` times that bracket and `x = 2 c2 r`.
    pub(crate) fn partner_coefficients(&self, mode: PartnerMode) -> (f64, f64) {
        let l = self.ode.l;
        match mode {
            PartnerMode::PaperLiteral => (l - 1.0, -0.5),
            PartnerMode::RelationDerived => {
                let kappa = self.cfg.mu * self.cfg.a / (2.0 * self.ode.c2);
                let mu_b = self.cfg.mu * self.cfg.b;
                let ell = self.qn.ell as f64;
                match self.branch {
                    Branch::Plus => (l - 1.0 + mu_b - ell, kappa - 0.5),
                    Branch::Minus => (l - 1.0 - mu_b - ell, -kappa - 0.5),
                }
            }
        }
    }

    /// Partner bracket at `x` (no prefactor).
    pub(crate) fn partner_bracket(&self, mode: PartnerMode, x: f64) -> f64 {
        let (k0, k1) = self.partner_coefficients(mode);
        let p = self.laguerre_at(x);
        (k0 + k1 * x) * p + x * self.laguerre_d1(x)
    }

    fn ln_prefactor(&self, r: f64) -> f64 {
        self.ln_norm + (self.ode.l - 1.0) * r.ln() - self.ode.c2 * r
    }

    pub fn upper(&self, r: f64) -> Result<f64> {
        let r = require_positive("r", r)?;
        let x = 2.0 * self.ode.c2 * r;
        Ok(self.ln_prefactor(r).exp() * self.laguerre_at(x))
    }

    /// Upper component with exact first and second derivatives.
    pub fn upper_jet(&self, r: f64) -> Result<RadialJet> {
        let r = require_positive("r", r)?;
        let c2 = self.ode.c2;
        let x = 2.0 * c2 * r;
        let n = self.qn.n;
        let alpha = self.alpha();
        let pre = self.ln_prefactor(r).exp();
        let p = laguerre(n, alpha, x);
        let p1 = laguerre_derivative(n, alpha, x)?;
        let p2 = laguerre_second_derivative(n, alpha, x)?;
        // s = d/dr ln(prefactor)
        let s = (self.ode.l - 1.0) / r - c2;
        let ds = -(self.ode.l - 1.0) / (r * r);
        Ok(RadialJet {
            value: pre * p,
            d1: pre * (s * p + 2.0 * c2 * p1),
            d2: pre * ((s * s + ds) * p + 4.0 * c2 * s * p1 + 4.0 * c2 * c2 * p2),
        })
    }

    pub fn partner(&self, r: f64, mode: PartnerMode) -> Result<f64> {
        let r = require_positive("r", r)?;
        let x = 2.0 * self.ode.c2 * r;
        Ok(self.ln_prefactor(r).exp() * self.partner_bracket(mode, x))
    }

    /// Partner component with its exact first derivative (`d2` is left zero).
    pub fn partner_jet(&self, r: f64, mode: PartnerMode) -> Result<RadialJet> {
        let r = require_positive("r", r)?;
        let c2 = self.ode.c2;
        let x = 2.0 * c2 * r;
        let n = self.qn.n;
        let alpha = self.alpha();
        let (k0, k1) = self.partner_coefficients(mode);
        let p = laguerre(n, alpha, x);
        let p1 = laguerre_derivative(n, alpha, x)?;
        let p2 = laguerre_second_derivative(n, alpha, x)?;
        let bracket = (k0 + k1 * x) * p + x * p1;
        let bracket_dx = k0 * p1 + k1 * (p + x * p1) + p1 + x * p2;
        let pre = self.ln_prefactor(r).exp();
        let s = (self.ode.l - 1.0) / r - c2;
        Ok(RadialJet {
            value: pre * bracket,
            d1: pre * (s * bracket + 2.0 * c2 * bracket_dx),
            d2: 0.0,
        })
    }
}

/// `N r^{L-1} e^{-c2 r} L_n^{2L}(2 c2 r)`: `F` on the plus branch, `G` on the minus branch.
pub fn wavefunction_upper(state: &BoundState, r: f64) -> Result<f64> {
    state.upper(r)
}

pub fn wavefunction_partner(state: &BoundState, r: f64, mode: PartnerMode) -> Result<f64> {
    state.partner(r, mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(mu: f64, n: u32, ell: u32, branch: Branch) -> BoundState {
        let cfg = FieldConfig::new(1.0, 1.0, mu).unwrap();
        BoundState::new(&cfg, QuantumNumbers::new(n, ell), branch, Convention::default_for(branch))
            .unwrap()
    }

    #[test]
    fn ground_state_has_no_laguerre_factor() {
        let s = state(0.001, 0, 0, Branch::Plus);
        let ode = s.ode();
        for &r in &[10.0f64, 500.0, 3000.0] {
            let want = s.normalization() * r.powf(ode.l - 1.0) * (-ode.c2 * r).exp();
            assert!((s.upper(r).unwrap() / want - 1.0).abs() < 1e-13);
        }
        assert!(s.upper(1e-12).unwrap().abs() < 1e-3 * s.upper(1.0).unwrap().abs());
        assert!(s.upper(0.0).is_err());
    }

    #[test]
    fn first_excited_node_location() {
        let s = state(0.001, 1, 0, Branch::Plus);
        let ode = s.ode();
        let node = (1.0 + 2.0 * ode.l) / (2.0 * ode.c2);
        assert!(s.upper(node * (1.0 - 1e-6)).unwrap() * s.upper(node * (1.0 + 1e-6)).unwrap() < 0.0);
        assert!(s.upper(node).unwrap().abs() < 1e-9 * s.upper(0.5 * node).unwrap().abs());
    }

    #[test]
    fn relation_partner_for_nodeless_state() {
        let s = state(0.001, 0, 0, Branch::Plus);
        let cfg = s.field();
        let ode = s.ode();
        for &r in &[1.0, 250.0, 4000.0] {
            let f = s.upper(r).unwrap();
            let want = ((ode.l - 1.0 + cfg.mu * cfg.b) + (cfg.mu * cfg.a - ode.c2) * r) * f;
            let got = s.partner(r, PartnerMode::RelationDerived).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.abs());
        }
    }

    #[test]
    fn literal_partner_for_nodeless_state() {
        let s = state(0.001, 0, 0, Branch::Plus);
        let ode = s.ode();
        let r = 2.0;
        let want = s.upper(r).unwrap() * (ode.l - 1.0 - ode.c2 * r);
        let got = s.partner(r, PartnerMode::PaperLiteral).unwrap();
        assert!((got - want).abs() <= 1e-13 * want.abs());

        // the two partners differ by (mu E r - ell) F
        let gap = s.partner(1.0, PartnerMode::RelationDerived).unwrap()
            - s.partner(1.0, PartnerMode::PaperLiteral).unwrap();
        let cfg = s.field();
        let expected = (cfg.mu * (cfg.a + cfg.b) - 0.0) * s.upper(1.0).unwrap();
        assert!(gap != 0.0);
        assert!((gap - expected).abs() <= 1e-10 * expected.abs());
    }

    #[test]
    fn jets_match_finite_differences() {
        for branch in [Branch::Plus, Branch::Minus] {
            let s = state(0.001, 2, 1, branch);
            for &r in &[40.0, 900.0, 5200.0] {
                let h = 1e-4 * r;
                let j = s.upper_jet(r).unwrap();
                let up = s.upper(r + h).unwrap();
                let dn = s.upper(r - h).unwrap();
                let fd1 = (up - dn) / (2.0 * h);
                let fd2 = (up - 2.0 * j.value + dn) / (h * h);
                let scale = j.value.abs() / r + j.d1.abs();
                assert!((fd1 - j.d1).abs() <= 1e-6 * scale, "{branch} r={r}");
                assert!((fd2 - j.d2).abs() <= 1e-4 * (scale / r + j.d2.abs()), "{branch} r={r}");
                for mode in [PartnerMode::RelationDerived, PartnerMode::PaperLiteral] {
                    let pj = s.partner_jet(r, mode).unwrap();
                    let fd = (s.partner(r + h, mode).unwrap() - s.partner(r - h, mode).unwrap())
                        / (2.0 * h);
                    let scale = pj.value.abs() / r + pj.d1.abs();
                    assert!((fd - pj.d1).abs() <= 1e-6 * scale);
                }
            }
        }
    }

    #[test]
    fn upper_node_count_equals_n() {
        for branch in [Branch::Plus, Branch::Minus] {
            for n in 0..5 {
                let s = state(0.001, n, 1, branch);
                let ode = s.ode();
                let r_end = (4.0 * n as f64 + 4.0 * ode.l + 8.0) / ode.c2;
                let steps = 4000;
                let mut changes = 0;
                let mut prev = s.upper(r_end / steps as f64).unwrap();
                for i in 2..=steps {
                    let v = s.upper(r_end * i as f64 / steps as f64).unwrap();
                    if v.signum() != prev.signum() {
                        changes += 1;
                    }
                    prev = v;
                }
                assert_eq!(changes, n, "{branch} n={n}");
            }
        }
    }
}
