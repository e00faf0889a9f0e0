//! Special functions: Barnes G, the complete elliptic integral of the first
//! kind, Jacobi theta functions and the elliptic modular lambda function.

mod barnes;
mod elliptic;
mod theta;

pub use barnes::{barnes_g, barnes_g_pair, ln_barnes_g, ln_barnes_g_pair, EULER_GAMMA};
pub use elliptic::{complete_elliptic_k, tau0_from_modulus, EllipticModulus};
pub use theta::{
    ln_theta, modular_lambda, modular_lambda_complement, theta, ModularPoint, ThetaKind,
};

/// Default relative tolerance for series and product truncation.
pub const DEFAULT_TOL: f64 = 1e-14;

/// Hard cap on the number of terms any series or product may use.
pub const MAX_TERMS: usize = 1_000_000;
