//! Special-function kernel: log-gamma, generalized Laguerre polynomials with
//! real upper parameter, and generalized Gauss-Laguerre quadrature.

mod gamma;
mod laguerre;
mod quadrature;

pub use gamma::{gamma, log_gamma};
pub use laguerre::{laguerre, laguerre_derivative, laguerre_second_derivative};
pub use quadrature::{gauss_laguerre, QuadratureRule, MAX_QUADRATURE_POINTS};

pub(crate) use laguerre::laguerre_scaled_pair;
