//! Tilde-normalized Bessel functions.
//!
//! `J~_nu(z) = (z/2)^-nu J_nu(z)` and `I~_nu(z) = (z/2)^-nu I_nu(z)` are
//! entire functions of `z`, which is what makes them usable inside the
//! semigroup kernels where the argument crosses zero.
//!
//! The kernels only ever consume the scaled combination
//! `I~_nu(z) e^{-|Re z|}`, which stays bounded by `1/Gamma(nu+1)` for all
//! `z`. The internal engine therefore produces the scaled value directly:
//! a power series where it is accurate, and a backward (Miller) recurrence
//! anchored on exact half-integer seeds or a low-order asymptotic expansion
//! once the series would lose too many digits to cancellation or overflow.

use num_complex::Complex64;

use super::gamma::gamma;
use crate::error::{Error, Result};

/// Truncation control for series evaluation.
#[derive(Debug, Clone)]
pub struct SpecFunConfig {
    /// Relative tolerance for series truncation.
    pub series_tol: f64,
    /// Cap on series length.
    pub max_terms: usize,
}

impl SpecFunConfig {
    pub fn new(series_tol: f64, max_terms: usize) -> Result<Self> {
        if !(series_tol > 0.0 && series_tol < 1e-6) {
            return Err(Error::InvalidArgument(format!(
                "series_tol must lie in (0, 1e-6), got {series_tol}"
            )));
        }
        if max_terms < 64 {
            return Err(Error::InvalidArgument(format!(
                "max_terms must be at least 64, got {max_terms}"
            )));
        }
        Ok(Self { series_tol, max_terms })
    }
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self { series_tol: 5e-16, max_terms: 4000 }
    }
}

// Absolute floor for series truncation; terms below this can never matter.
const TERM_FLOOR: f64 = 1e-300;

// The plain series is used while cancellation costs at most ~5 digits
// (the loss is roughly e^{|z| - |Re z|}); past that the recurrence paths
// take over.
const SERIES_RADIUS: f64 = 11.0;
const SERIES_CANCEL: f64 = 5.0;
const SERIES_OVERFLOW: f64 = 550.0;

// Above this radius (and once the argument dominates the order) the
// Hankel-type expansion of the seeds is at full machine precision and the
// order can be walked up directly.
const FLAT_RADIUS: f64 = 40.0;

/// I~_nu(z), from the defining series. Entire in z; errors only if the
/// series fails to settle within `max_terms`.
pub fn bessel_i_tilde(nu: f64, z: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    let scaled = bessel_i_tilde_scaled(nu, z, cfg)?;
    let ex = z.re.abs();
    if ex > 705.0 {
        return Err(Error::Overflow { context: format!("I~_{nu}({z}) ~ e^{ex}") });
    }
    Ok(scaled * ex.exp())
}

/// J~_nu(z) = I~_nu(iz).
pub fn bessel_j_tilde(nu: f64, z: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    let scaled = bessel_i_tilde_scaled(nu, Complex64::new(-z.im, z.re), cfg)?;
    let ex = z.im.abs();
    if ex > 705.0 {
        return Err(Error::Overflow { context: format!("J~_{nu}({z}) ~ e^{ex}") });
    }
    Ok(scaled * ex.exp())
}

/// I~_nu(z) * e^{-|Re z|}; bounded by 1/Gamma(nu+1) for every z.
pub fn bessel_i_tilde_scaled(nu: f64, z: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    if !(nu >= -0.5) {
        return Err(Error::InvalidArgument(format!("Bessel order must be >= -1/2, got {nu}")));
    }
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite Bessel argument {z}")));
    }
    // I~ is even, and I~(conj z) = conj I~(z) for real order: normalize to
    // the first quadrant.
    let mut w = if z.re < 0.0 { -z } else { z };
    let conjugate = w.im < 0.0;
    if conjugate {
        w = w.conj();
    }

    let rho = w.norm();
    let x = w.re;

    let value = if rho <= SERIES_RADIUS
        || (rho - x <= SERIES_CANCEL && rho <= SERIES_OVERFLOW)
    {
        series(nu, w, cfg)? * (-x).exp()
    } else {
        large_argument(nu, w, cfg)?
    };

    Ok(if conjugate { value.conj() } else { value })
}

/// J~_nu(z) * e^{-|Im z|}.
pub fn bessel_j_tilde_scaled(nu: f64, z: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    bessel_i_tilde_scaled(nu, Complex64::new(-z.im, z.re), cfg)
}

/// J_nu(x) for real non-negative x.
pub fn bessel_j(nu: f64, x: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let jt = bessel_j_tilde(nu, Complex64::new(x, 0.0), cfg)?;
    Ok((x / 2.0).powf(nu) * jt.re)
}

/// I_nu(x) for real non-negative x.
pub fn bessel_i(nu: f64, x: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let it = bessel_i_tilde(nu, Complex64::new(x, 0.0), cfg)?;
    Ok((x / 2.0).powf(nu) * it.re)
}

/// Defining series, unscaled. Terms are generated by the ratio
/// t_{m+1}/t_m = (z^2/4) / ((m+1)(nu+m+1)) so only the leading
/// 1/Gamma(nu+1) needs the Gamma function.
fn series(nu: f64, w: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    let q = w * w * 0.25;
    let mut term = Complex64::new(1.0 / gamma(nu + 1.0), 0.0);
    let mut sum = term;
    for m in 1..=cfg.max_terms {
        term *= q / (m as f64 * (nu + m as f64));
        sum += term;
        if term.norm() <= (cfg.series_tol * sum.norm()).max(TERM_FLOOR) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesDivergence { partial: sum, terms: cfg.max_terms })
}

/// Scaled evaluation for large |z|, first quadrant.
///
/// All orders reachable from nu by integer steps share a fractional part
/// mu0 in [-1/2, 1/2). When the argument dominates the order the value is
/// walked up from two seeds at the bottom of the chain; otherwise a
/// backward Miller recurrence runs in I-form, normalized against the
/// exact I_{-1/2} (half-odd chains), the identity e^w = I_0 + 2 sum I_k
/// (integer chains), or a low-order expansion seed (fractional chains).
fn large_argument(nu: f64, w: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    let k = (nu + 0.5).floor();
    let mu0 = nu - k;
    let steps = k as usize;
    let rho = w.norm();

    if rho >= FLAT_RADIUS.max(2.0 * nu * nu) && steps > 0 {
        // argument-dominated regime: ascend from the two lowest orders
        let q = w * w * 0.25;
        let mut prev = seed_scaled(mu0, w)?;
        let mut cur = seed_scaled(mu0 + 1.0, w)?;
        let mut mu = mu0 + 1.0;
        for _ in 1..steps {
            let next = (prev - mu * cur) / q;
            prev = cur;
            cur = next;
            mu += 1.0;
        }
        return Ok(cur);
    }

    if steps == 0 && mu0 != 0.0 {
        return seed_scaled(mu0, w);
    }

    // Backward Miller recurrence with adaptive chain length.
    let x = w.re;
    let anchor = if mu0 == -0.5 {
        // I_{-1/2}(w) e^{-x}, exact
        let pref = (2.0 / (std::f64::consts::PI * w)).sqrt();
        Some(pref * ((w - x).exp() + (-w - x).exp()) * 0.5)
    } else if mu0 == 0.0 {
        None // e^w normalization instead
    } else {
        let s = seed_scaled(mu0, w)?; // I~ form
        Some(s * (mu0 * (w / 2.0).ln()).exp())
    };

    // Successive passes with longer chains must agree; the absolute floor
    // covers values sitting next to a zero of the oscillatory case, where
    // the scaled magnitude itself is O(1/Gamma(nu+1)).
    let tol_abs = 4e-15 / gamma(nu + 1.0).min(1e300);
    let mut pad = 24usize;
    let mut last: Option<Complex64> = None;
    while pad <= 8192 {
        let i_scaled = miller_pass(mu0, steps, pad, w, anchor);
        // back to I~ normalization
        let value = (-nu * (w / 2.0).ln()).exp() * i_scaled;
        if let Some(prev) = last {
            if (value - prev).norm() <= (4e-13 * value.norm()).max(tol_abs) {
                return Ok(value);
            }
        }
        last = Some(value);
        pad += pad / 2 + 16;
    }
    Err(Error::SeriesDivergence { partial: last.unwrap_or_default(), terms: cfg.max_terms })
}

/// One backward pass of the recurrence I_{mu-1} = I_{mu+1} + (2 mu / w) I_mu,
/// returning the scaled value I_nu(w) e^{-Re w}.
///
/// `anchor` is the true scaled I at the bottom order mu0; `None` selects
/// the e^w normalization, which only makes sense on integer chains.
fn miller_pass(
    mu0: f64,
    steps: usize,
    pad: usize,
    w: Complex64,
    anchor: Option<Complex64>,
) -> Complex64 {
    let rho = w.norm();
    let turn = (0.8 * rho) as usize;
    let top = steps.max(turn) + pad;
    let two_over_w = 2.0 / w;

    let mut next = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1e-30, 0.0);
    let mut saved = Complex64::new(0.0, 0.0);
    let mut norm_sum = Complex64::new(0.0, 0.0);
    let mut mu = mu0 + top as f64;
    for idx in (0..top).rev() {
        let prev = next + mu * two_over_w * cur;
        next = cur;
        cur = prev;
        mu -= 1.0;
        if idx == steps {
            saved = cur;
        }
        if anchor.is_none() && idx > 0 {
            norm_sum += cur; // sum of I_k for k = 1..top-1
        }
        if cur.norm() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            saved *= 1e-250;
            norm_sum *= 1e-250;
        }
    }
    match anchor {
        Some(a) => safe_div(saved, cur) * a,
        None => {
            // e^w = I_0 + 2 sum_{k>=1} I_k, so the scaled value is
            // I_nu e^{-x} = v_nu e^{w - x} / (v_0 + 2 sum v_k).
            let denom = cur + 2.0 * norm_sum;
            safe_div(saved, denom) * (w - w.re).exp()
        }
    }
}

/// Division that survives denominators whose squared norm would underflow.
fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    let s = b.norm();
    (a / s) / (b / s)
}

/// Scaled I~_mu(w) e^{-Re w} at a low order, first quadrant, |w| large.
fn seed_scaled(mu: f64, w: Complex64) -> Result<Complex64> {
    let x = w.re;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    // e^{w - x} and e^{-w - x} both have non-positive real exponent
    let ep = (w - x).exp(); // e^{i Im w}
    let em = (-w - x).exp();
    if mu == -0.5 {
        // I~_{-1/2}(z) = cosh(z)/sqrt(pi)
        return Ok((ep + em) * 0.5 / sqrt_pi);
    }
    if mu == 0.5 {
        // I~_{1/2}(z) = 2 sinh(z) / (sqrt(pi) z)
        return Ok((ep - em) / (sqrt_pi * w));
    }
    // Hankel-type expansion, upper-sign branch (valid for arg w in [0, pi/2])
    let mut s1 = Complex64::new(1.0, 0.0);
    let mut s2 = Complex64::new(1.0, 0.0);
    let mut a = 1.0;
    let mut term_scale = Complex64::new(1.0, 0.0);
    let mut min_mag = f64::INFINITY;
    for kk in 0..40 {
        let kf = kk as f64;
        a *= (4.0 * mu * mu - (2.0 * kf + 1.0) * (2.0 * kf + 1.0)) / (8.0 * (kf + 1.0));
        term_scale /= w;
        let term = a * term_scale;
        let mag = term.norm();
        if mag >= min_mag {
            break; // asymptotic tail started growing
        }
        min_mag = mag;
        if kk % 2 == 0 {
            s1 -= term;
            s2 += term;
        } else {
            s1 += term;
            s2 += term;
        }
        if mag < 1e-17 {
            break;
        }
    }
    let phase = Complex64::from_polar(1.0, std::f64::consts::PI * (mu + 0.5));
    let root = (2.0 * std::f64::consts::PI * w).sqrt();
    let i_scaled = (ep * s1 + phase * em * s2) / root;
    if mu == 0.0 {
        Ok(i_scaled)
    } else {
        // (w/2)^{-mu}, principal branch; w stays off the cut
        Ok((-mu * (w / 2.0).ln()).exp() * i_scaled)
    }
}
