//! Laguerre, Gegenbauer and Hermite evaluation.
//!
//! Values come from the three-term recurrences in the degree index, which
//! are stable upward on the natural domains. The explicit hypergeometric /
//! Rodrigues sums only appear in tests, as independent oracles.

use crate::error::{Error, Result};
use crate::specfun::gamma::gamma;

/// Coefficients of a real polynomial, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoeffs {
    coeffs: Vec<f64>,
}

impl PolynomialCoeffs {
    /// Trims trailing zeros so the leading coefficient is nonzero unless
    /// the polynomial is identically zero.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// L_n^alpha(x) by the upward recurrence
/// (n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficient form of L_n^alpha: c_k = (-1)^k binom(n+alpha, n-k) / k!.
pub fn laguerre_coeffs(n: usize, alpha: f64) -> PolynomialCoeffs {
    // binom(n+alpha, n-k) = Gamma(n+alpha+1) / (Gamma(k+alpha+1) (n-k)!)
    // built incrementally from the k = n term downward.
    let mut coeffs = vec![0.0; n + 1];
    // k = n: (-1)^n / n!
    let mut binom = 1.0; // binom(n+alpha, 0)
    let mut kfact = (1..=n).map(|i| i as f64).product::<f64>();
    let mut sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut k = n;
    loop {
        coeffs[k] = sign * binom / kfact;
        if k == 0 {
            break;
        }
        // step k -> k-1: binom(n+alpha, n-k+1) = binom(n+alpha, n-k) * (alpha+k) / (n-k+1)
        binom *= (alpha + k as f64) / ((n - k + 1) as f64);
        kfact /= k as f64;
        sign = -sign;
        k -= 1;
    }
    PolynomialCoeffs::new(coeffs)
}

/// Raw Gegenbauer polynomial C_l^nu(x), upward recurrence
/// l C_l = 2(l+nu-1) x C_{l-1} - (l+2nu-2) C_{l-2}.
pub fn gegenbauer(l: usize, nu: f64, x: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * nu * x;
    for k in 2..=l {
        let kf = k as f64;
        let next = (2.0 * (kf + nu - 1.0) * x * cur - (kf + 2.0 * nu - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized Gegenbauer polynomial C~_l^nu = Gamma(nu) C_l^nu, with the
/// nu = 0 limit C~_l^0(cos t) = 2 cos(l t)/l for l >= 1.
///
/// The pair nu = 0, l = 0 has no meaningful normalization and is rejected.
pub fn gegenbauer_tilde(l: usize, nu: f64, x: f64) -> Result<f64> {
    if nu < 0.0 {
        return Err(Error::InvalidArgument(format!("Gegenbauer index must be >= 0, got {nu}")));
    }
    if nu == 0.0 {
        if l == 0 {
            return Err(Error::Domain(
                "normalized Gegenbauer is undefined for nu = 0, l = 0".into(),
            ));
        }
        // 2 cos(l theta)/l = 2 T_l(x)/l via the Chebyshev recurrence
        let mut prev = 1.0;
        let mut cur = x;
        for _ in 2..=l {
            let next = 2.0 * x * cur - prev;
            prev = cur;
            cur = next;
        }
        return Ok(2.0 * cur / l as f64);
    }
    Ok(gamma(nu) * gegenbauer(l, nu, x))
}

/// C~_l^nu(1) = sqrt(pi) Gamma(2 nu + l) / (2^{2 nu - 1} l! Gamma(nu + 1/2)).
pub fn gegenbauer_tilde_at_one(l: usize, nu: f64) -> f64 {
    let lfact = (1..=l).map(|i| i as f64).product::<f64>();
    std::f64::consts::PI.sqrt() * gamma(2.0 * nu + l as f64)
        / (2f64.powf(2.0 * nu - 1.0) * lfact * gamma(nu + 0.5))
}

/// Hermite polynomial through its Laguerre reduction:
/// H_{2m}(x) = (-1)^m 2^{2m} m! L_m^{-1/2}(x^2),
/// H_{2m+1}(x) = (-1)^m 2^{2m+1} m! x L_m^{1/2}(x^2).
pub fn hermite_via_laguerre(n: usize, x: f64) -> f64 {
    let m = n / 2;
    let mfact = (1..=m).map(|i| i as f64).product::<f64>();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    if n % 2 == 0 {
        sign * 4f64.powi(m as i32) * mfact * laguerre(m, -0.5, x * x)
    } else {
        sign * 2.0 * 4f64.powi(m as i32) * mfact * x * laguerre(m, 0.5, x * x)
    }
}
