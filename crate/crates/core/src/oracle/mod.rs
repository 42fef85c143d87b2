//! Numerical checks that do not rely on the closed forms they test.

pub mod integrator;
mod residual;
mod shooting;

pub use residual::{
    canonical_residual, first_order_residual, log_grid, standard_grid, FirstOrderReport, RadialProfile,
    ResidualMode, ResidualReport, STANDARD_GRID_POINTS,
};
pub use shooting::{
    compare_spectrum, integrate_outward, seed_bracket, shoot_eigenvalue, ShootingResult, SpectrumComparison,
    Trajectory, COMPARE_TOL, RHO_END, RHO_START,
};
