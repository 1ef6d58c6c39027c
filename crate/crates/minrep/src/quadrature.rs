//! Gaussian quadrature for the three measures the kernels live on:
//! `x^alpha e^-x dx` on (0, inf), the Gegenbauer weight `(1-x^2)^(lam-1/2)`
//! on (-1, 1), and plain Legendre as its `lam = 1/2` special case.
//!
//! Nodes and weights come from the symmetric tridiagonal eigenproblem on
//! the recurrence coefficients (Golub-Welsch), solved in-crate by an
//! implicit QL iteration that tracks only the first eigenvector component.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    GaussLaguerreGeneralized,
    GaussJacobi,
    GaussLegendre,
}

/// An immutable quadrature rule: strictly increasing nodes with positive
/// weights. `param` keeps the weight-function parameter the rule was built
/// with (alpha for Laguerre, lam for Jacobi).
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: RuleKind,
    param: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Plain weighted sum against the rule's weight function.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn integrate_real(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Rule exact for `int_0^inf p(x) x^alpha e^-x dx` up to degree 2n-1.
///
/// Nodes whose weights underflow f64 entirely (far tail of very large
/// rules) are dropped; they cannot contribute to any admissible integrand.
pub fn gauss_laguerre_rule(n_points: usize, alpha: f64) -> Result<QuadratureRule> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("quadrature rule needs at least one point".into()));
    }
    if alpha <= -1.0 {
        return Err(Error::InvalidArgument(format!("Laguerre exponent must be > -1, got {alpha}")));
    }
    let n = n_points;
    let mut diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let mut off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + alpha)).sqrt()).collect();
    let mu0 = gamma(alpha + 1.0);
    let (mut nodes, mut weights) = golub_welsch(&mut diag, &mut off, mu0)?;
    while let Some(&w) = weights.last() {
        if w > 0.0 {
            break;
        }
        weights.pop();
        nodes.pop();
    }
    validate_rule(&nodes, &weights)?;
    if nodes[0] <= 0.0 {
        return Err(Error::EigenFailure);
    }
    Ok(QuadratureRule { nodes, weights, kind: RuleKind::GaussLaguerreGeneralized, param: alpha })
}

/// Rule exact for `int_-1^1 p(x) (1-x^2)^(lam-1/2) dx` up to degree 2n-1.
/// `lam` is the Gegenbauer index of the weight, so `lam = 1/2` is Legendre.
pub fn gauss_jacobi_rule(n_points: usize, lam: f64) -> Result<QuadratureRule> {
    if lam <= -0.5 {
        return Err(Error::InvalidArgument(format!("Jacobi index must be > -1/2, got {lam}")));
    }
    let g = lam - 0.5;
    let mut rule = gauss_jacobi_general(n_points, g, g)?;
    rule.param = lam;
    Ok(rule)
}

/// Legendre rule on (-1, 1).
pub fn gauss_legendre_rule(n_points: usize) -> Result<QuadratureRule> {
    let mut rule = gauss_jacobi_general(n_points, 0.0, 0.0)?;
    rule.kind = RuleKind::GaussLegendre;
    rule.param = 0.5;
    Ok(rule)
}

/// General Jacobi rule for the weight `(1-x)^a (1+x)^b` on (-1, 1).
pub fn gauss_jacobi_general(n_points: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("quadrature rule needs at least one point".into()));
    }
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::InvalidArgument(format!(
            "Jacobi exponents must be > -1, got ({a}, {b})"
        )));
    }
    let n = n_points;
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        let d = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + a + b) * (2.0 * kf + a + b + 2.0))
        };
        diag.push(d);
    }
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let kf = k as f64;
        let beta = if k == 1 {
            4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0).powi(2) * (a + b + 3.0))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
                / ((2.0 * kf + a + b).powi(2) * (2.0 * kf + a + b + 1.0) * (2.0 * kf + a + b - 1.0))
        };
        off.push(beta.sqrt());
    }
    let mu0 = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
    let (nodes, weights) = golub_welsch(&mut diag, &mut off, mu0)?;
    validate_rule(&nodes, &weights)?;
    if nodes[0] <= -1.0 || *nodes.last().unwrap() >= 1.0 {
        return Err(Error::EigenFailure);
    }
    Ok(QuadratureRule { nodes, weights, kind: RuleKind::GaussJacobi, param: a + 0.5 })
}

fn validate_rule(nodes: &[f64], weights: &[f64]) -> Result<()> {
    if nodes.is_empty() || nodes.len() != weights.len() {
        return Err(Error::EigenFailure);
    }
    for i in 1..nodes.len() {
        if nodes[i] <= nodes[i - 1] {
            return Err(Error::EigenFailure);
        }
    }
    if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
        return Err(Error::EigenFailure);
    }
    Ok(())
}

/// Substituted nodes and weights for radial integrals
/// `int_0^inf f(r) r^(m-2) dr ~ sum u_i f(r_i)` with `m - 2 = alpha` taken
/// from the rule, valid for f with an `e^-(damping r)` envelope.
///
/// The weights carry the factor `e^(x_i)` analytically (through logs), so
/// they stay finite where the raw weights underflow.
pub fn radial_weights(rule: &QuadratureRule, damping: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if rule.kind() != RuleKind::GaussLaguerreGeneralized {
        return Err(Error::InvalidArgument(
            "radial integration needs a generalized Gauss-Laguerre rule".into(),
        ));
    }
    if !(damping > 0.0) {
        return Err(Error::InvalidArgument(format!("damping must be positive, got {damping}")));
    }
    let lam_ln = damping.ln();
    let alpha = rule.param();
    let mut nodes = Vec::with_capacity(rule.len());
    let mut weights = Vec::with_capacity(rule.len());
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        nodes.push(x / damping);
        weights.push((w.ln() + x - (alpha + 1.0) * lam_ln).exp());
    }
    Ok((nodes, weights))
}

/// `int_0^inf f(r) r^(m-2) dr` by substitution into the generalized
/// Gauss-Laguerre rule with `alpha = m - 2`, for `f(r) e^(damping r)`
/// polynomially bounded.
pub fn integrate_radial(
    f: impl Fn(f64) -> Complex64,
    m: usize,
    damping: f64,
    n_points: usize,
) -> Result<Complex64> {
    let rule = gauss_laguerre_rule(n_points, m as f64 - 2.0)?;
    let (nodes, weights) = radial_weights(&rule, damping)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&r, &u) in nodes.iter().zip(&weights) {
        let v = f(r);
        if !v.is_finite() {
            return Err(Error::BadNode { node: r });
        }
        acc += u * v;
    }
    Ok(acc)
}

/// Implicit QL iteration on a symmetric tridiagonal matrix, accumulating
/// only the first row of the eigenvector matrix. Returns sorted
/// (eigenvalues, mu0 * first_component^2).
fn golub_welsch(diag: &mut [f64], off: &mut [f64], mu0: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let d = diag;
    // e[i] couples i and i+1; sentinel at the end
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailure);
            }
            // Wilkinson-type shift
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut broke_early = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    broke_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if broke_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let nodes: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let weights: Vec<f64> = order.iter().map(|&i| mu0 * z[i] * z[i]).collect();
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gegenbauer_tilde, laguerre};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn laguerre_single_point() {
        // first root of L_1^alpha is alpha + 1, total mass Gamma(alpha+1)
        for &alpha in &[0.0, 1.0, 2.5] {
            let r = gauss_laguerre_rule(1, alpha).unwrap();
            assert!((r.nodes()[0] - (alpha + 1.0)).abs() < 1e-12);
            assert!((r.weights()[0] - gamma(alpha + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn laguerre_cubic_moment() {
        let r = gauss_laguerre_rule(8, 0.0).unwrap();
        let got = r.integrate_real(|x| x * x * x);
        assert!((got - 6.0).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn laguerre_high_moments() {
        // rule(40, 2) must reproduce Gamma(3 + k) for k <= 77
        let r = gauss_laguerre_rule(40, 2.0).unwrap();
        for k in 0..=77 {
            let got = r.integrate_real(|x| x.powi(k));
            let want = gamma(2.0 + k as f64 + 1.0);
            assert!(
                ((got - want) / want).abs() < 1e-10,
                "k={k}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn jacobi_masses() {
        // lam = 1: weight sqrt(1-x^2), mass pi/2
        let r = gauss_jacobi_rule(6, 1.0).unwrap();
        assert!((r.integrate_real(|_| 1.0) - PI / 2.0).abs() < 1e-13);
        // lam = 1/2: Legendre, mass 2
        let r = gauss_jacobi_rule(6, 0.5).unwrap();
        assert!((r.integrate_real(|_| 1.0) - 2.0).abs() < 1e-13);
        // one-point rule sits at the origin by symmetry
        let r = gauss_jacobi_rule(1, 1.0).unwrap();
        assert!(r.nodes()[0].abs() < 1e-14);
        assert!((r.weights()[0] - PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn jacobi_reproduces_gegenbauer_norm() {
        // int C~_l^nu(x)^2 (1-x^2)^(nu-1/2) dx = 2^(1-2nu) pi G(2nu+l) / (l! (l+nu))
        let nu = 1.0;
        let l = 4usize;
        let r = gauss_jacobi_rule(20, nu).unwrap();
        let got = r.integrate_real(|x| {
            let c = gegenbauer_tilde(l, nu, x).unwrap();
            c * c
        });
        let lfact = 24.0;
        let want = 2f64.powf(1.0 - 2.0 * nu) * PI * gamma(2.0 * nu + l as f64) / (lfact * (l as f64 + nu));
        assert!(((got - want) / want).abs() < 1e-13, "got {got}, want {want}");
    }

    #[test]
    fn legendre_matches_symmetric_jacobi() {
        let a = gauss_legendre_rule(12).unwrap();
        let b = gauss_jacobi_rule(12, 0.5).unwrap();
        for i in 0..12 {
            assert!((a.nodes()[i] - b.nodes()[i]).abs() < 1e-14);
            assert!((a.weights()[i] - b.weights()[i]).abs() < 1e-14);
        }
        assert_eq!(a.kind(), RuleKind::GaussLegendre);
    }

    #[test]
    fn asymmetric_jacobi_cross_checked_by_legendre() {
        // int x^2 (1-x)^0.7 (1+x)^1.3 dx, once by the 3-point general rule
        // (exact: degree 2 <= 2*3-1) and once by brute Legendre on the full
        // integrand
        let rule = gauss_jacobi_general(3, 0.7, 1.3).unwrap();
        let got = rule.integrate_real(|x| x * x);
        let brute = gauss_legendre_rule(400)
            .unwrap()
            .integrate_real(|x| x * x * (1.0 - x).powf(0.7) * (1.0 + x).powf(1.3));
        assert!((got - brute).abs() < 1e-6, "got {got}, brute {brute}");
    }

    #[test]
    fn radial_exponential_is_exact() {
        // f = e^{-4r}, m = 3: int e^{-4r} r dr = 1/16 for any point count
        for n in [1, 4, 40] {
            let got = integrate_radial(
                |r| Complex64::new((-4.0 * r).exp(), 0.0),
                3,
                4.0,
                n,
            )
            .unwrap();
            assert!((got.re - 1.0 / 16.0).abs() < 1e-14, "n={n}: {got}");
            assert!(got.im == 0.0);
        }
    }

    #[test]
    fn radial_orthogonality_of_laguerre_profiles() {
        // f_{2,1} f_{3,1} under r^{m-2} dr vanishes for m = 3; the squared
        // norm of f_{2,1} is Gamma(m-1+a+l)/(4^{m-1+2l} Gamma(a-l+1))
        let f21 = |r: f64| laguerre(1, 3.0, 4.0 * r) * r * (-2.0 * r).exp();
        let f31 = |r: f64| laguerre(2, 3.0, 4.0 * r) * r * (-2.0 * r).exp();
        let cross = integrate_radial(|r| Complex64::new(f21(r) * f31(r), 0.0), 3, 4.0, 24).unwrap();
        assert!(cross.norm() < 1e-10, "cross = {cross}");
        let norm = integrate_radial(|r| Complex64::new(f21(r) * f21(r), 0.0), 3, 4.0, 24).unwrap();
        let want = gamma(5.0) / (4f64.powi(4) * gamma(2.0));
        assert!(((norm.re - want) / want).abs() < 1e-12, "norm = {norm}, want {want}");
    }

    #[test]
    fn scaled_weights_survive_large_rules() {
        // n = 400 raw weights underflow near the tail; the substituted
        // weights must stay finite and still integrate e^{-2r} r^2 exactly
        let rule = gauss_laguerre_rule(400, 2.0).unwrap();
        let (nodes, weights) = radial_weights(&rule, 2.0).unwrap();
        assert!(weights.iter().all(|w| w.is_finite()));
        let got: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&r, &u)| u * (-2.0 * r).exp())
            .sum();
        // int_0^inf e^{-2r} r^2 dr = 2/8 = 1/4
        assert!((got - 0.25).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn doubling_reaches_plateau() {
        // smooth exponentially damped integrand: doubling the point count
        // changes the result by < 1e-10 relative
        let f = |r: f64| Complex64::new((r + 0.3).sin() * (-3.0 * r).exp(), 0.0);
        let a = integrate_radial(f, 3, 3.0, 100).unwrap();
        let b = integrate_radial(f, 3, 3.0, 200).unwrap();
        assert!((a - b).norm() / b.norm() < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn laguerre_polynomial_exactness(coeffs in proptest::collection::vec(-3.0..3.0f64, 8), alpha in 0.0..3.0f64) {
            // degree-7 polynomial integrated by a 4-point rule (exact to degree 7)
            let rule = gauss_laguerre_rule(4, alpha).unwrap();
            let got = rule.integrate_real(|x| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c));
            let want: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c * gamma(alpha + k as f64 + 1.0))
                .sum();
            prop_assert!((got - want).abs() <= 1e-11 * want.abs().max(1.0));
        }

        #[test]
        fn jacobi_polynomial_exactness(coeffs in proptest::collection::vec(-3.0..3.0f64, 8), lam in 0.0..2.5f64) {
            let rule = gauss_jacobi_rule(4, lam).unwrap();
            let g = lam - 0.5;
            let got = rule.integrate_real(|x| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c));
            // moments: odd vanish, even are B(j+1/2, g+1)
            let want: f64 = coeffs
                .iter()
                .enumerate()
                .filter(|(k, _)| k % 2 == 0)
                .map(|(k, &c)| {
                    let j = (k / 2) as f64;
                    c * gamma(j + 0.5) * gamma(g + 1.0) / gamma(j + g + 1.5)
                })
                .sum();
            prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }
}
