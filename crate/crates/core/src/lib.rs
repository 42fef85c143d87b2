//! Bound states of a neutral spin-1/2 particle with an anomalous magnetic
//! moment in the central electric field `E(r) = a + b/r`, with a position-
//! and energy-dependent mass.
//!
//! The closed-form spectrum and wavefunctions live in [`spectrum`]; the
//! [`oracle`] module checks them by residuals, shooting and quadrature.
//!
//! ```
//! use dirac_pauli::{BoundState, Branch, Convention, FieldConfig, QuantumNumbers};
//!
//! let cfg = FieldConfig::new(1.0, 1.0, 0.001).unwrap();
//! let s = BoundState::new(&cfg, QuantumNumbers::new(0, 0), Branch::Plus, Convention::SignAware).unwrap();
//! assert!((s.energy() + 4.145066e-4).abs() < 1e-9);
//! ```

pub mod error;
pub mod model;
pub mod nu;
pub mod oracle;
pub mod special;
pub mod spectrum;

pub use error::{Error, Result};
pub use model::{
    electric_field, mass_ode_check, mass_profile, Branch, Convention, FieldConfig, MassProfile, QuantumNumbers,
};
pub use spectrum::{
    angular_exponent, classify_state, coefficients, constant_term, degeneracy_scan, energy_level,
    normalization_closed, normalization_numeric, wavefunction_partner, wavefunction_upper, BoundState,
    CanonicalRadialOde, PartnerMode, StateKind,
};
