//! Exact action of the sl2 triple and the spectral-generating operator on
//! sector quasi-polynomials. All coefficient manipulation is exact: the
//! integer slot factors are combined before touching the floating
//! coefficients, so the analytic cancellations at the lowest power hold to
//! the last bit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::radial::{ModelParams, RadialQuasiPolynomial};

/// The three sl2 generators as radial operators on the degree-l sector,
/// plus the semigroup generator D:
///   e~ = 2 i r
///   h~ = 2 r d/dr + (m-1)
///   f~ = (i/2) (r d^2/dr^2 + (m-1) d/dr - l(l+m-2)/r)
///   D  = (1/4) (r d^2/dr^2 + (m-1) d/dr - l(l+m-2)/r) - r
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Generator {
    ETilde,
    HTilde,
    FTilde,
    D,
}

/// Applies a generator exactly on the quasi-polynomial coefficients.
///
/// Errors with `Representation` if the second-order part would create a
/// power below r^-1 with a nonzero (integer-exact) slot factor.
pub fn apply_sl2_operator(
    gen: Sl2Generator,
    l: usize,
    f: &RadialQuasiPolynomial,
    params: ModelParams,
) -> Result<RadialQuasiPolynomial> {
    if f.is_zero() {
        return Ok(RadialQuasiPolynomial::zero());
    }
    let m = params.m() as i64;
    let l = l as i64;
    let lo_in = f.min_degree() as i64;
    let angular = l * (l + m - 2);

    // output powers span [lo_in - 1, lo_in + len]
    let lo_out = lo_in - 1;
    let len_out = f.coeffs().len() + 2;
    let mut out = vec![Complex64::new(0.0, 0.0); len_out];
    let ihalf = Complex64::new(0.0, 0.5);
    let two_i = Complex64::new(0.0, 2.0);

    for (j, &c) in f.coeffs().iter().enumerate() {
        let k = lo_in + j as i64;
        // integer slot factor of the combined second-order part at r^{k-1}
        let down = k * (k - 1) + (m - 1) * k - angular;
        match gen {
            Sl2Generator::ETilde => {
                out[j + 2] += two_i * c;
            }
            Sl2Generator::HTilde => {
                out[j + 1] += (2 * k + m - 1) as f64 * c;
                out[j + 2] += -4.0 * c;
            }
            Sl2Generator::FTilde => {
                if down != 0 {
                    if k - 1 < -1 {
                        return Err(Error::Representation(format!(
                            "sector operator needs r^{} on the l = {l} sector",
                            k - 1
                        )));
                    }
                    out[j] += ihalf * down as f64 * c;
                }
                out[j + 1] += ihalf * (-4 * k - 2 * (m - 1)) as f64 * c;
                out[j + 2] += ihalf * 4.0 * c;
            }
            Sl2Generator::D => {
                if down != 0 {
                    if k - 1 < -1 {
                        return Err(Error::Representation(format!(
                            "sector operator needs r^{} on the l = {l} sector",
                            k - 1
                        )));
                    }
                    out[j] += 0.25 * down as f64 * c;
                }
                // the r^{k+1} parts of r f''/4 and -r f cancel exactly
                out[j + 1] += -(k as f64 + (m as f64 - 1.0) / 2.0) * c;
            }
        }
    }

    RadialQuasiPolynomial::new(lo_out as i32, out)
}
