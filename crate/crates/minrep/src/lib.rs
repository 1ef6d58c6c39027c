//! Numerics for the holomorphic contraction semigroup attached to the
//! differential operator |x|(Delta/4 - 1) on L^2(R^m, dx/|x|), its
//! Bessel-type integral kernels, the Hankel-type unitary inversion, and the
//! Lorentz-group machinery (parabolic action, Bruhat factorization) that
//! assembles the full conformal group action on the light cone.
//!
//! Everything is desk-scale and deterministic: series, recurrences and
//! Gaussian quadrature, no external solvers. The `verify` module re-checks
//! the analytic identities the kernels satisfy and backs the `minrep verify`
//! CLI subcommand.

pub mod error;
pub mod group;
pub mod inversion;
pub mod kernel;
pub mod quadrature;
pub mod radial;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
