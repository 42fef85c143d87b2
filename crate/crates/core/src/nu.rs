//! Nikiforov-Uvarov reduction of hypergeometric-type equations
//!
//! ```text
//! sigma^2 y'' + sigma tau~ y' + sigma~ y = 0,   deg sigma, sigma~ <= 2, deg tau~ <= 1.
//! ```
//!
//! Writing `y = h g` with `h'/h = pi/sigma` turns the equation into
//! `sigma g'' + tau g' + lambda g = 0`, where
//!
//! ```text
//! pi  = (sigma' - tau~)/2 ± sqrt([(sigma' - tau~)/2]^2 - sigma~ + k sigma)
//! tau = tau~ + 2 pi,    lambda = k + pi'.
//! ```
//!
//! `k` is fixed by requiring the radicand to be a perfect square, the root
//! sign by `tau' < 0`, and polynomial solutions of degree `n` exist when
//! `lambda = lambda_n = -n tau' - n(n-1) sigma''/2`.

use serde::Serialize;

use crate::error::{Error, Result};

const CERTIFICATE_TOL: f64 = 1e-12;

/// Real polynomial of degree at most two, coefficients in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Polynomial {
    coeffs: [f64; 3],
}

impl Polynomial {
    /// Fails if more than three coefficients are given or the extra ones are
    /// nonzero.
    pub fn new(coeffs: &[f64]) -> Result<Self> {
        if coeffs.iter().skip(3).any(|&c| c != 0.0) {
            return Err(Error::Unsupported("polynomial degree above two"));
        }
        let mut c = [0.0; 3];
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            if !src.is_finite() {
                return Err(Error::Domain {
                    what: "polynomial coefficient",
                    value: src,
                });
            }
            *dst = src;
        }
        Ok(Self { coeffs: c })
    }

    pub const fn from_array(coeffs: [f64; 3]) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_array([c, 0.0, 0.0])
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        Self::from_array([c0, c1, 0.0])
    }

    pub fn coeffs(&self) -> [f64; 3] {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let [c0, c1, c2] = self.coeffs;
        c0 + x * (c1 + x * c2)
    }

    pub fn derivative(&self) -> Self {
        let [_, c1, c2] = self.coeffs;
        Self::from_array([c1, 2.0 * c2, 0.0])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(other.coeffs) {
            *a += b;
        }
        Self { coeffs: c }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_array(self.coeffs.map(|c| c * s))
    }

    /// Product of two polynomials whose degrees sum to at most two.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = [0.0; 5];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(&out)
    }

    /// `max |a_i - b_i| / max(max |a_i|, max |b_i|)`; zero when both vanish.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let scale = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .fold(0.0_f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        self.coeffs
            .iter()
            .zip(other.coeffs)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
            / scale
    }
}

/// `sigma^2 y'' + sigma tau~ y' + sigma~ y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypergeometricTypeEquation {
    sigma: Polynomial,
    tau_tilde: Polynomial,
    sigma_tilde: Polynomial,
}

impl HypergeometricTypeEquation {
    pub fn new(sigma: Polynomial, tau_tilde: Polynomial, sigma_tilde: Polynomial) -> Result<Self> {
        if sigma.is_zero() {
            return Err(Error::Unsupported("sigma must not vanish identically"));
        }
        if tau_tilde.degree().unwrap_or(0) > 1 {
            return Err(Error::Unsupported("tau~ must have degree at most one"));
        }
        Ok(Self {
            sigma,
            tau_tilde,
            sigma_tilde,
        })
    }

    pub fn sigma(&self) -> Polynomial {
        self.sigma
    }

    pub fn tau_tilde(&self) -> Polynomial {
        self.tau_tilde
    }

    pub fn sigma_tilde(&self) -> Polynomial {
        self.sigma_tilde
    }

    /// `(sigma' - tau~) / 2`.
    fn half_shift(&self) -> Polynomial {
        self.sigma
            .derivative()
            .add(&self.tau_tilde.scale(-1.0))
            .scale(0.5)
    }

    /// `[(sigma' - tau~)/2]^2 - sigma~ + k sigma`, the radicand of `pi`.
    pub fn radicand(&self, k: f64) -> Polynomial {
        let d = self.half_shift();
        // d has degree <= 1 so the square fits
        let d2 = d.mul(&d).expect("square of a linear polynomial");
        d2.add(&self.sigma_tilde.scale(-1.0)).add(&self.sigma.scale(k))
    }
}

/// Which sign in front of the square root produced `pi`. The root itself is
/// normalized to a positive leading coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootSign {
    PlusRoot,
    MinusRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NuReduction {
    pub k: f64,
    pub pi: Polynomial,
    pub tau: Polynomial,
    pub lambda: f64,
    pub sign_choice: RootSign,
}

impl NuReduction {
    pub fn tau_slope(&self) -> f64 {
        self.tau.coeff(1)
    }
}

/// `rho(r) = r^power e^{rate r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightSpec {
    pub power: f64,
    pub rate: f64,
}

impl WeightSpec {
    pub fn eval(&self, r: f64) -> f64 {
        r.powf(self.power) * (self.rate * r).exp()
    }
}

/// All real `k` for which the radicand is a perfect square, ascending.
///
/// The radicand `A r^2 + B r + C` is linear in `k` coefficientwise, so its
/// discriminant `B^2 - 4AC` is a quadratic in `k`. Roots with `A < 0` give an
/// imaginary square root and are dropped.
pub fn candidate_ks(eq: &HypergeometricTypeEquation) -> Result<Vec<f64>> {
    let base = eq.radicand(0.0).coeffs();
    let [s0, s1, s2] = eq.sigma().coeffs();
    let [c0, b0, a0] = base;

    let qa = s1 * s1 - 4.0 * s2 * s0;
    let qb = 2.0 * b0 * s1 - 4.0 * (a0 * s0 + s2 * c0);
    let qc = b0 * b0 - 4.0 * a0 * c0;

    let scale = qa.abs().max(qb.abs()).max(qc.abs());
    if scale == 0.0 {
        return Err(Error::NoSquareCompletion);
    }

    let mut roots = Vec::with_capacity(2);
    if qa.abs() <= 1e-15 * scale {
        if qb != 0.0 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        let tiny = 1e-14 * (qb * qb).max((4.0 * qa * qc).abs());
        if disc < -tiny {
            return Err(Error::NoSquareCompletion);
        }
        let sq = disc.max(0.0).sqrt();
        if sq == 0.0 {
            roots.push(-qb / (2.0 * qa));
        } else {
            // avoid cancellation in the smaller-magnitude root
            let sign = if qb >= 0.0 { 1.0 } else { -1.0 };
            let q = -0.5 * (qb + sign * sq);
            roots.push(q / qa);
            roots.push(qc / q);
        }
    }

    roots.retain(|&k| {
        let [c, b, a] = eq.radicand(k).coeffs();
        let lead = a.abs().max(b.abs()).max(c.abs());
        if a > 1e-14 * lead {
            true
        } else {
            // degree-zero radicand must be a nonnegative constant
            b.abs() <= 1e-12 * lead.max(1.0) && c >= -1e-12 * lead.max(1.0)
        }
    });
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * x.abs().max(y.abs()).max(1.0));
    if roots.is_empty() {
        Err(Error::NoSquareCompletion)
    } else {
        Ok(roots)
    }
}

/// Square root of a perfect-square polynomial of degree at most two, with
/// nonnegative leading coefficient.
fn polynomial_sqrt(q: &Polynomial) -> Polynomial {
    let [c, b, a] = q.coeffs();
    if a > 0.0 {
        let ra = a.sqrt();
        Polynomial::linear(b / (2.0 * ra), ra)
    } else {
        Polynomial::constant(c.max(0.0).sqrt())
    }
}

/// Performs the reduction for a given `k`, selecting the root sign by `tau' < 0`.
pub fn reduce(eq: &HypergeometricTypeEquation, k: f64) -> Result<NuReduction> {
    let radicand = eq.radicand(k);
    let root = polynomial_sqrt(&radicand);
    let squared = root.mul(&root)?;
    if squared.relative_distance(&radicand) > CERTIFICATE_TOL {
        return Err(Error::NotPerfectSquare { k });
    }

    let d = eq.half_shift();
    let build = |sign: RootSign| {
        let signed = match sign {
            RootSign::PlusRoot => root,
            RootSign::MinusRoot => root.scale(-1.0),
        };
        let pi = d.add(&signed);
        let tau = eq.tau_tilde().add(&pi.scale(2.0));
        NuReduction {
            k,
            pi,
            tau,
            lambda: k + pi.coeff(1),
            sign_choice: sign,
        }
    };
    let plus = build(RootSign::PlusRoot);
    let minus = build(RootSign::MinusRoot);
    match (plus.tau_slope() < 0.0, minus.tau_slope() < 0.0) {
        (true, false) => Ok(plus),
        (false, true) => Ok(minus),
        (true, true) => Err(Error::AmbiguousBranch(Box::new([plus, minus]))),
        (false, false) => Err(Error::NoAdmissibleBranch),
    }
}

/// `lambda_n = -n tau' - n (n - 1) sigma'' / 2`.
pub fn lambda_n(red: &NuReduction, sigma: &Polynomial, n: u32) -> f64 {
    let nf = n as f64;
    let sigma_pp = 2.0 * sigma.coeff(2);
    -nf * red.tau_slope() - 0.5 * nf * (nf - 1.0) * sigma_pp
}

/// Weight function solving `(sigma rho)' = tau rho`, for `sigma(r) = r` only.
pub fn weight_spec(red: &NuReduction, sigma: &Polynomial) -> Result<WeightSpec> {
    if sigma.coeffs() != [0.0, 1.0, 0.0] {
        return Err(Error::Unsupported("weight function only for sigma(r) = r"));
    }
    Ok(WeightSpec {
        power: red.tau.coeff(0) - 1.0,
        rate: red.tau.coeff(1),
    })
}

/// Degree-`n` Rodrigues polynomial `rho^{-1} d^n/dz^n [z^n rho] / n!` for
/// `sigma(z) = z`, expanded with the Leibniz rule:
///
/// ```text
/// sum_j binom(n, j) (n+p)(n+p-1)...(n+p-j+1) (q z)^{n-j} / n!
/// ```
///
/// With this constant it equals `L_n^p(-q z)`.
pub fn rodrigues_polynomial(spec: &WeightSpec, n: u32, z: f64) -> Result<f64> {
    if !(spec.rate < 0.0) {
        return Err(Error::Unsupported("Rodrigues family needs a decaying weight"));
    }
    let p = spec.power;
    let q = spec.rate;
    let nf = n as f64;

    let mut total = 0.0;
    let mut binom = 1.0; // binom(n, j) / n!, starting at 1/n!
    for i in 1..=n {
        binom /= i as f64;
    }
    let mut falling = 1.0; // (n+p)_j
    for j in 0..=n {
        let power = (n - j) as i32;
        total += binom * falling * (q * z).powi(power);
        let jf = j as f64;
        falling *= nf + p - jf;
        binom *= (nf - jf) / (jf + 1.0);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::laguerre;

    fn radial_family(a1sq: f64, a2: f64, a3sq: f64) -> HypergeometricTypeEquation {
        HypergeometricTypeEquation::new(
            Polynomial::linear(0.0, 1.0),
            Polynomial::constant(3.0),
            Polynomial::new(&[-a3sq, -a1sq, -a2 * a2]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn polynomial_basics() {
        let p = Polynomial::new(&[1.0, -2.0, 3.0]).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(2.0), 1.0 - 4.0 + 12.0);
        assert_eq!(p.derivative().coeffs(), [-2.0, 6.0, 0.0]);
        assert_eq!(Polynomial::default().degree(), None);
        assert!(Polynomial::new(&[1.0, 0.0, 0.0, 2.0]).is_err());
        assert!(Polynomial::new(&[1.0, 0.0, 0.0, 0.0]).is_ok());
        let l = Polynomial::linear(1.0, 1.0);
        assert_eq!(l.mul(&l).unwrap().coeffs(), [1.0, 2.0, 1.0]);
        assert!(p.mul(&l).is_err());
    }

    #[test]
    fn radial_family_candidates() {
        let eq = radial_family(1.0, 1.0, 1.0);
        let ks = candidate_ks(&eq).unwrap();
        let s2 = 2f64.sqrt();
        assert_eq!(ks.len(), 2);
        assert!((ks[0] - (-1.0 - 2.0 * s2)).abs() < 1e-14);
        assert!((ks[1] - (-1.0 + 2.0 * s2)).abs() < 1e-14);

        // discriminant in k expanded by hand: (k + A1^2)^2 - 4 A2^2 (1 + A3^2)
        for &k in &ks {
            let disc = (k + 1.0).powi(2) - 4.0 * 2.0;
            assert!(disc.abs() < 1e-13);
        }
    }

    #[test]
    fn trivial_square() {
        let eq = HypergeometricTypeEquation::new(
            Polynomial::linear(0.0, 1.0),
            Polynomial::constant(1.0),
            Polynomial::default(),
        )
        .unwrap();
        assert_eq!(candidate_ks(&eq).unwrap(), vec![0.0]);
        assert!(eq.radicand(0.0).is_zero());
    }

    #[test]
    fn radial_family_reduction() {
        let eq = radial_family(1.0, 1.0, 1.0);
        let k = candidate_ks(&eq).unwrap()[0];
        let red = reduce(&eq, k).unwrap();
        let s2 = 2f64.sqrt();
        assert!(red.pi.relative_distance(&Polynomial::linear(-1.0 + s2, -1.0)) < 1e-14);
        assert!(red.tau.relative_distance(&Polynomial::linear(1.0 + 2.0 * s2, -2.0)) < 1e-14);
        assert!((red.lambda - (-1.0 - 2.0 * s2 - 1.0)).abs() < 1e-14);
        assert!((red.lambda - (-1.0 - (1.0 + 2.0 * s2))).abs() < 1e-14);
        assert_eq!(red.sign_choice, RootSign::MinusRoot);
    }

    #[test]
    fn constant_tau_has_no_branch() {
        let eq = HypergeometricTypeEquation::new(
            Polynomial::linear(0.0, 1.0),
            Polynomial::constant(3.0),
            Polynomial::default(),
        )
        .unwrap();
        assert!(matches!(reduce(&eq, 0.0), Err(Error::NoAdmissibleBranch)));
    }

    #[test]
    fn non_candidate_k_rejected() {
        let eq = radial_family(1.0, 1.0, 1.0);
        assert!(matches!(reduce(&eq, 0.3), Err(Error::NotPerfectSquare { .. })));
    }

    #[test]
    fn lambda_n_values() {
        let eq = radial_family(1.0, 1.0, 1.0);
        let red = reduce(&eq, candidate_ks(&eq).unwrap()[0]).unwrap();
        assert!((lambda_n(&red, &eq.sigma(), 3) - 6.0).abs() < 1e-14);
        assert_eq!(lambda_n(&red, &eq.sigma(), 0), 0.0);

        let fake = NuReduction {
            k: 0.0,
            pi: Polynomial::default(),
            tau: Polynomial::linear(0.0, -2.0),
            lambda: 0.0,
            sign_choice: RootSign::PlusRoot,
        };
        let sigma = Polynomial::new(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(lambda_n(&fake, &sigma, 2), 2.0);
    }

    fn with_tau(c0: f64, c1: f64) -> NuReduction {
        NuReduction {
            k: 0.0,
            pi: Polynomial::default(),
            tau: Polynomial::linear(c0, c1),
            lambda: 0.0,
            sign_choice: RootSign::PlusRoot,
        }
    }

    #[test]
    fn weights() {
        let sigma = Polynomial::linear(0.0, 1.0);
        let s2 = 2f64.sqrt();
        let w = weight_spec(&with_tau(1.0 + 2.0 * s2, -2.0), &sigma).unwrap();
        assert!((w.power - 2.0 * s2).abs() < 1e-15 && w.rate == -2.0);
        let w = weight_spec(&with_tau(3.0, -2.0), &sigma).unwrap();
        assert_eq!((w.power, w.rate), (2.0, -2.0));
        let w = weight_spec(&with_tau(1.0, -1.0), &sigma).unwrap();
        assert_eq!((w.power, w.rate), (0.0, -1.0));
        let quad = Polynomial::new(&[0.0, 0.0, 1.0]).unwrap();
        assert!(weight_spec(&with_tau(1.0, -1.0), &quad).is_err());
    }

    #[test]
    fn weight_solves_pearson_equation() {
        // (r rho)' = tau rho, checked by central differences
        let red = with_tau(3.0, -2.0);
        let w = weight_spec(&red, &Polynomial::linear(0.0, 1.0)).unwrap();
        for &r in &[0.3, 1.0, 2.5] {
            let h = 1e-5;
            let lhs = ((r + h) * w.eval(r + h) - (r - h) * w.eval(r - h)) / (2.0 * h);
            let rhs = red.tau.eval(r) * w.eval(r);
            assert!((lhs - rhs).abs() < 1e-8 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn rodrigues_values() {
        let w = WeightSpec { power: 0.0, rate: -1.0 };
        assert_eq!(rodrigues_polynomial(&w, 0, 3.3).unwrap(), 1.0);
        assert!((rodrigues_polynomial(&w, 1, 2.0).unwrap() + 1.0).abs() < 1e-15);
        let w = WeightSpec { power: 1.0, rate: -1.0 };
        assert!((rodrigues_polynomial(&w, 2, 1.0).unwrap() - 0.5).abs() < 1e-15);
        let grow = WeightSpec { power: 1.0, rate: 0.5 };
        assert!(rodrigues_polynomial(&grow, 2, 1.0).is_err());
    }

    #[test]
    fn rodrigues_matches_recurrence() {
        for n in 0..=8 {
            for pi in 0..=12 {
                let p = pi as f64 * 0.5;
                let w = WeightSpec { power: p, rate: -2.0 };
                for zi in 1..=80 {
                    let z = zi as f64 * 0.25;
                    let got = rodrigues_polynomial(&w, n, z).unwrap();
                    let want = laguerre(n, p, 2.0 * z);
                    // both sides are alternating sums bounded by L_n^p(-2z)
                    let size = laguerre(n, p, -2.0 * z);
                    assert!(
                        (got - want).abs() <= 1e-12 * size,
                        "n={n} p={p} z={z}: {got} vs {want}"
                    );
                }
            }
        }
    }
}
