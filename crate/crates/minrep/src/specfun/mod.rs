//! Special functions: Gamma, tilde-normalized Bessel, Laguerre, Gegenbauer
//! and the Hermite reductions. Pure evaluations, no caching, safe for
//! concurrent use.

mod bessel;
mod gamma;
mod poly;

pub use bessel::{
    bessel_i, bessel_i_tilde, bessel_i_tilde_scaled, bessel_j, bessel_j_tilde,
    bessel_j_tilde_scaled, SpecFunConfig,
};
pub use gamma::{gamma, ln_gamma};
pub use poly::{
    gegenbauer, gegenbauer_tilde, gegenbauer_tilde_at_one, hermite_via_laguerre, laguerre,
    laguerre_coeffs, PolynomialCoeffs,
};
