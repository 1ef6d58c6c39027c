//! The unitary inversion operator: boundary values of the semigroup
//! kernels on the unitary axis, the Hankel-type radial transforms T_l, the
//! classical Hankel transform on L^2((0, inf), dx), and the cone kernel
//! with its support condition.
//!
//! All phases are assembled from integer parity, never from floating
//! trigonometry of pi multiples.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{psi, ConePoint, SpatialPoint};
use crate::quadrature::{self, QuadratureRule};
use crate::radial::{ModelParams, RadialQuasiPolynomial};
use crate::specfun::{bessel_j_tilde, SpecFunConfig};

/// e^{-(m-1) pi i / 2} from the parity of m - 1.
pub fn inversion_phase(m: usize) -> Complex64 {
    match (m - 1) % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// A kernel value together with the phase convention it carries, so
/// callers can separate the real Bessel part from the dimensional phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionKernelEval {
    pub value: Complex64,
    /// The factor e^{-(m-1) pi i/2} split off the value.
    pub phase_convention: Complex64,
}

/// The inversion kernel
/// K(x, x') = 2 J~_{(m-3)/2}(psi(x, x')) e^{-(m-1) pi i/2} / pi^{(m-1)/2},
/// the boundary value of the semigroup kernel on the unitary axis.
pub fn inversion_kernel(
    x: &SpatialPoint,
    xp: &SpatialPoint,
    params: ModelParams,
    cfg: &SpecFunConfig,
) -> Result<InversionKernelEval> {
    if x.dim() != params.m() || xp.dim() != params.m() {
        return Err(Error::InvalidArgument("point dimension does not match the model".into()));
    }
    let m = params.m() as f64;
    let phase = inversion_phase(params.m());
    let jt = bessel_j_tilde(params.nu(), Complex64::new(psi(x, xp), 0.0), cfg)?;
    let value = 2.0 * jt * phase / std::f64::consts::PI.powf((m - 1.0) / 2.0);
    Ok(InversionKernelEval { value, phase_convention: phase })
}

/// Radial inversion kernel on the degree-l sector:
/// K_l(r, r') = 2^{m-1+2l} (-1)^l e^{-(m-1) pi i/2} (r r')^l
///              J~_{m-2+2l}(4 sqrt(r r')).
pub fn radial_inversion_kernel(
    r: f64,
    rp: f64,
    l: usize,
    params: ModelParams,
    cfg: &SpecFunConfig,
) -> Result<Complex64> {
    let order = params.sector_order(l);
    let jt = bessel_j_tilde(order, Complex64::new(4.0 * (r * rp).sqrt(), 0.0), cfg)?;
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    Ok(2f64.powi((params.m() - 1 + 2 * l) as i32)
        * sign
        * inversion_phase(params.m())
        * (r * rp).powi(l as i32)
        * jt)
}

/// (T_l f)(r) = int_0^inf K_l(r, r') f(r') r'^{m-2} dr' on the caller's
/// grid. Quasi-polynomial input certifies the e^{-2r} decay that makes the
/// oscillatory integral absolutely convergent.
pub fn apply_inversion_radial(
    f: &RadialQuasiPolynomial,
    l: usize,
    params: ModelParams,
    quad: &QuadratureRule,
    out_grid: &[f64],
    cfg: &SpecFunConfig,
) -> Result<Vec<Complex64>> {
    let expected_alpha = params.m() as f64 - 2.0;
    if (quad.param() - expected_alpha).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "quadrature rule exponent {} does not match m - 2 = {expected_alpha}",
            quad.param()
        )));
    }
    let (nodes, weights) = quadrature::radial_weights(quad, 2.0)?;
    let samples: Vec<Complex64> = nodes.iter().map(|&rp| f.eval(rp)).collect();
    let mut out = Vec::with_capacity(out_grid.len());
    for &r in out_grid {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&rp, &u), &fv) in nodes.iter().zip(&weights).zip(&samples) {
            if u == 0.0 {
                continue;
            }
            acc += u * radial_inversion_kernel(r, rp, l, params, cfg)? * fv;
        }
        if !acc.is_finite() {
            return Err(Error::BadNode { node: r });
        }
        out.push(acc);
    }
    Ok(out)
}

/// Decay certificate for sampled profiles fed to the oscillatory Hankel
/// integral.
#[derive(Debug, Clone, Copy)]
pub enum Decay {
    /// |h(y)| <= C e^{-rate y}
    Exponential { rate: f64 },
    /// |h(y)| <= C e^{-rate y^2}
    Gaussian { rate: f64 },
}

/// The classical Hankel transform
/// (T_nu h)(x) = int_0^inf J_nu(x y) h(y) sqrt(x y) dy
/// on the caller's grid; unitary on L^2((0, inf), dx) of order two.
///
/// The integrand carries an intrinsic y^{nu+1/2} factor, which routes into
/// the quadrature weight so only an entire function is ever approximated:
/// a Gaussian certificate needs a Gauss-Laguerre rule with exponent nu
/// (integration in u = y^2), an exponential one a rule with exponent
/// nu + 1/2 (integration in y).
pub fn hankel_transform(
    h: &dyn Fn(f64) -> Complex64,
    decay: Decay,
    nu: u32,
    quad: &QuadratureRule,
    out_grid: &[f64],
    cfg: &SpecFunConfig,
) -> Result<Vec<Complex64>> {
    let gaussian = matches!(decay, Decay::Gaussian { .. });
    // effective samples: h(y) / y^{nu + 1/2}, smooth for the natural class
    let (weights, ys): (Vec<f64>, Vec<f64>) = match decay {
        Decay::Gaussian { rate } => {
            if !(rate > 0.0) {
                return Err(Error::Domain("Gaussian decay certificate needs a positive rate".into()));
            }
            if (quad.param() - nu as f64).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "Gaussian-decay Hankel integration at order {nu} needs a Gauss-Laguerre rule \
                     with exponent {nu}"
                )));
            }
            // u = y^2; the substitution rate deliberately undershoots the
            // true decay so the mapped integrand keeps a net envelope
            let (nodes, weights) = quadrature::radial_weights(quad, 0.7 * rate)?;
            let ys = nodes.iter().map(|&u| u.sqrt()).collect();
            (weights, ys)
        }
        Decay::Exponential { rate } => {
            if !(rate > 0.0) {
                return Err(Error::Domain(
                    "exponential decay certificate needs a positive rate".into(),
                ));
            }
            if (quad.param() - nu as f64 - 0.5).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "exponential-decay Hankel integration at order {nu} needs a Gauss-Laguerre \
                     rule with exponent {}",
                    nu as f64 + 0.5
                )));
            }
            let (nodes, weights) = quadrature::radial_weights(quad, 0.7 * rate)?;
            (weights, nodes)
        }
    };
    // Gaussian path integrates in u with the y^{2 nu + 1} structure folded
    // into the weight, so the sample is h(y)/y^{nu+1/2}; the exponential
    // path keeps h itself and folds y^{nu+1/2} into the weight directly.
    let samples: Vec<Complex64> = ys
        .iter()
        .map(|&y| if gaussian { h(y) * y.powf(-(nu as f64) - 0.5) } else { h(y) })
        .collect();
    for (&y, v) in ys.iter().zip(&samples) {
        if !v.is_finite() {
            return Err(Error::BadNode { node: y });
        }
    }
    let mut out = Vec::with_capacity(out_grid.len());
    for &x in out_grid {
        let pref = (x / 2.0).powi(nu as i32) * x.sqrt() * if gaussian { 0.5 } else { 1.0 };
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, (&w, &hv)) in weights.iter().zip(&samples).enumerate() {
            if w == 0.0 {
                continue;
            }
            let jt = bessel_j_tilde(nu as f64, Complex64::new(x * ys[i], 0.0), cfg)?;
            acc += w * jt * hv;
        }
        acc *= pref;
        if !acc.is_finite() {
            return Err(Error::BadNode { node: x });
        }
        out.push(acc);
    }
    Ok(out)
}

/// The cone inversion kernel with its support condition: the kernel value
/// when the Euclidean pairing is non-negative (same sheet), exactly zero
/// when it is negative (opposite sheets).
pub fn cone_inversion_kernel(
    zeta: &ConePoint,
    zetap: &ConePoint,
    params: ModelParams,
    cfg: &SpecFunConfig,
) -> Result<Complex64> {
    if zeta.coords().len() != params.m() + 1 || zetap.coords().len() != params.m() + 1 {
        return Err(Error::InvalidArgument("cone point dimension does not match the model".into()));
    }
    let s = zeta.dot(zetap);
    if s < 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let m = params.m() as f64;
    let jt = bessel_j_tilde(params.nu(), Complex64::new(2.0 * (2.0 * s).sqrt(), 0.0), cfg)?;
    Ok(2.0 * jt * inversion_phase(params.m()) / std::f64::consts::PI.powf((m - 1.0) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_laguerre_rule;
    use crate::radial::{fal_norm_sq, make_fal, ComplexTime};
    use crate::specfun::gamma;
    use crate::specfun::bessel_j;
    use std::f64::consts::PI;

    fn cfg() -> SpecFunConfig {
        SpecFunConfig::default()
    }

    fn params(m: usize) -> ModelParams {
        ModelParams::new(m).unwrap()
    }

    fn pt(coords: &[f64]) -> SpatialPoint {
        SpatialPoint::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn phases_follow_parity() {
        assert_eq!(inversion_phase(3), Complex64::new(-1.0, 0.0));
        assert_eq!(inversion_phase(4), Complex64::new(0.0, 1.0));
        assert_eq!(inversion_phase(5), Complex64::new(1.0, 0.0));
        assert_eq!(inversion_phase(2), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn kernel_is_boundary_value_of_semigroup_kernel() {
        for m in [3usize, 4] {
            let p = params(m);
            let x = pt(&vec![1.0; m]);
            let mut ypc = vec![0.3; m];
            ypc[0] = -0.7;
            let y = SpatialPoint::new(ypc).unwrap();
            let limit = crate::kernel::full_kernel(
                &x,
                &y,
                &ComplexTime::from_parts(1e-6, PI).unwrap(),
                p,
                &cfg(),
            )
            .unwrap();
            let got = inversion_kernel(&x, &y, p, &cfg()).unwrap().value;
            assert!((got - limit).norm() < 1e-5 * got.norm().max(1e-3), "m={m}: {got} vs {limit}");
        }
    }

    #[test]
    fn antipodal_pair_value() {
        // psi = 0: K = 2 phase / (pi^{(m-1)/2} Gamma((m-1)/2))
        let p = params(3);
        let x = pt(&[1.0, 0.0, 0.0]);
        let y = pt(&[-2.0, 0.0, 0.0]);
        assert!(psi(&x, &y).abs() < 1e-12);
        let got = inversion_kernel(&x, &y, p, &cfg()).unwrap();
        let want = 2.0 * inversion_phase(3) / (PI * gamma(1.0));
        assert!((got.value - want).norm() < 1e-13);
        assert_eq!(got.phase_convention, Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn kernel_vanishes_at_first_bessel_zero() {
        // m = 3: K = -(2/pi) J_0(psi); find the first zero of J_0 by
        // bisection (independent oracle) and place psi on it
        let c = cfg();
        let mut lo = 2.0;
        let mut hi = 3.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if bessel_j(0.0, lo, &c).unwrap() * bessel_j(0.0, mid, &c).unwrap() <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - 2.404825557695773).abs() < 1e-10);
        // psi(x, x') = 4 sqrt(r r') for aligned points
        let rr = (root / 4.0) * (root / 4.0);
        let x = pt(&[rr.sqrt(), 0.0, 0.0]);
        let y = pt(&[rr.sqrt(), 0.0, 0.0]);
        let got = inversion_kernel(&x, &y, params(3), &cfg()).unwrap().value;
        assert!(got.norm() < 1e-6, "|K| = {} at the root", got.norm());
    }

    #[test]
    fn radial_inversion_matches_semigroup_boundary() {
        // K_l(r, r') equals the semigroup kernel at t = pi i
        let t = ComplexTime::inversion_point();
        for m in [3usize, 4, 5] {
            let p = params(m);
            for l in 0..3usize {
                for (r, rp) in [(0.5, 1.5), (2.0, 0.3)] {
                    let a = radial_inversion_kernel(r, rp, l, p, &cfg()).unwrap();
                    let b = crate::radial::radial_kernel(r, rp, &t, l, p, &cfg()).unwrap();
                    assert!((a - b).norm() < 1e-11 * a.norm().max(1e-20), "m={m} l={l}");
                }
            }
        }
    }

    #[test]
    fn eigenprofiles_pick_up_the_parity_phase() {
        // T_l f_{a,l} = (-1)^a e^{-(m-1) pi i/2} f_{a,l}
        let p = params(3);
        let quad = gauss_laguerre_rule(400, 1.0).unwrap();
        let grid = crate::radial::geometric_grid(0.1, 6.0, 24);
        for (a, l) in [(0usize, 0usize), (1, 0), (2, 1), (3, 1)] {
            let f = make_fal(a, l, p).unwrap();
            let out = apply_inversion_radial(&f, l, p, &quad, &grid, &cfg()).unwrap();
            let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
            let ev = sign * inversion_phase(3);
            let mut num = 0.0;
            let mut den = 0.0;
            for (&r, &o) in grid.iter().zip(&out) {
                num += (o - ev * f.eval(r)).norm_sqr();
                den += (ev * f.eval(r)).norm_sqr();
            }
            assert!((num / den).sqrt() < 1e-7, "a={a} l={l}: {}", (num / den).sqrt());
        }
    }

    #[test]
    fn inversion_squares_to_signed_identity() {
        // T_l^2 = (-1)^{m+1} id on the eigenprofile span
        for m in [3usize, 4, 5] {
            let p = params(m);
            let l = 1usize;
            let quad = gauss_laguerre_rule(400, m as f64 - 2.0).unwrap();
            let f = make_fal(l, l, p).unwrap().add(&make_fal(l + 2, l, p).unwrap());
            // evaluate the first pass on the second pass's own nodes
            let (nodes, weights) = quadrature::radial_weights(&quad, 2.0).unwrap();
            let stage1 = apply_inversion_radial(&f, l, p, &quad, &nodes, &cfg()).unwrap();
            let grid = crate::radial::geometric_grid(0.2, 5.0, 16);
            let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let mut worst: f64 = 0.0;
            for &r in &grid {
                let mut acc = Complex64::new(0.0, 0.0);
                for ((&rp, &u), &v) in nodes.iter().zip(&weights).zip(&stage1) {
                    if u == 0.0 {
                        continue;
                    }
                    acc += u * radial_inversion_kernel(r, rp, l, p, &cfg()).unwrap() * v;
                }
                let want = sign * f.eval(r);
                worst = worst.max((acc - want).norm() / want.norm().max(1e-8));
            }
            assert!(worst < 1e-6, "m={m}: worst {worst}");
        }
    }

    #[test]
    fn plancherel_on_radial_profiles() {
        let p = params(3);
        let l = 1usize;
        let quad = gauss_laguerre_rule(400, 1.0).unwrap();
        let f = make_fal(l, l, p).unwrap().add(&make_fal(l + 2, l, p).unwrap());
        // norm of f is known exactly; norm of T_l f by quadrature at its nodes
        let norm_f = (fal_norm_sq(l, l, p) + fal_norm_sq(l + 2, l, p)).sqrt();
        let (nodes, weights) = quadrature::radial_weights(&quad, 4.0).unwrap();
        let tf = apply_inversion_radial(&f, l, p, &quad, &nodes, &cfg()).unwrap();
        let norm_tf = nodes
            .iter()
            .zip(&weights)
            .zip(&tf)
            .map(|((_, &u), v)| u * v.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(
            ((norm_tf - norm_f) / norm_f).abs() < 1e-5,
            "norms {norm_tf} vs {norm_f}"
        );
    }

    #[test]
    fn hankel_fixed_point_and_inversion() {
        let c = cfg();
        let grid = crate::radial::geometric_grid(0.1, 5.0, 40);
        for nu in [1u32, 2, 3] {
            let quad = gauss_laguerre_rule(200, nu as f64).unwrap();
            let h = move |y: f64| Complex64::new(y.powi(nu as i32) * y.sqrt() * (-y * y / 2.0).exp(), 0.0);
            // fixed point: T h = h
            let out = hankel_transform(&h, Decay::Gaussian { rate: 0.5 }, nu, &quad, &grid, &c).unwrap();
            let mut num = 0.0;
            let mut den = 0.0;
            for (&x, o) in grid.iter().zip(&out) {
                num += (o - h(x)).norm_sqr();
                den += h(x).norm_sqr();
            }
            assert!((num / den).sqrt() < 1e-8, "nu={nu} fixed point: {}", (num / den).sqrt());
        }
        // inversion on a non-eigen profile: T(T h) = h. The first stage
        // must stay accurate out to the second stage's farthest node, so
        // its rule is sized to resolve the x*y oscillation there.
        let nu = 2u32;
        let quad2 = gauss_laguerre_rule(200, nu as f64).unwrap();
        let quad1 = gauss_laguerre_rule(800, nu as f64).unwrap();
        let h = |y: f64| Complex64::new(y.powf(2.5) * (1.0 + 0.3 * y * y) * (-y * y / 2.0).exp(), 0.0);
        let (unodes, _) = quadrature::radial_weights(&quad2, 0.7 * 0.5).unwrap();
        let ys: Vec<f64> = unodes.iter().map(|&u| u.sqrt()).collect();
        let stage1 = hankel_transform(&h, Decay::Gaussian { rate: 0.5 }, nu, &quad1, &ys, &c).unwrap();
        let stage1_fn = {
            let ys = ys.clone();
            let vals = stage1.clone();
            move |y: f64| {
                let idx = ys
                    .iter()
                    .position(|&n| (n - y).abs() <= 1e-12 * n.max(1.0))
                    .expect("resampled off the prepared nodes");
                vals[idx]
            }
        };
        let twice = hankel_transform(&stage1_fn, Decay::Gaussian { rate: 0.5 }, nu, &quad2, &grid, &c).unwrap();
        let mut num = 0.0;
        let mut den = 0.0;
        for (&x, o) in grid.iter().zip(&twice) {
            num += (o - h(x)).norm_sqr();
            den += h(x).norm_sqr();
        }
        assert!((num / den).sqrt() < 1e-6, "inversion defect {}", (num / den).sqrt());
    }

    #[test]
    fn hankel_norm_preservation() {
        let c = cfg();
        let nu = 1u32;
        // transform rule sized so outputs are reliable across the norm
        // rule's node range (x up to ~18 here)
        let quad = gauss_laguerre_rule(700, nu as f64).unwrap();
        let h = |y: f64| Complex64::new(y.powf(1.5) * (2.0 - y * y) * (-y * y / 2.0).exp(), 0.0);
        // L^2((0,inf), dx) norms via u = x^2 quadrature on a neutral rule
        let norm_rule = gauss_laguerre_rule(80, -0.5).unwrap();
        let (unodes, uweights) = quadrature::radial_weights(&norm_rule, 1.0).unwrap();
        let xs: Vec<f64> = unodes.iter().map(|&u| u.sqrt()).collect();
        let norm_h: f64 = unodes
            .iter()
            .zip(&uweights)
            .map(|(&u, &w)| 0.5 * w * h(u.sqrt()).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let th = hankel_transform(&h, Decay::Gaussian { rate: 0.5 }, nu, &quad, &xs, &c).unwrap();
        let norm_th: f64 = unodes
            .iter()
            .zip(&uweights)
            .zip(&th)
            .map(|((_, &w), v)| 0.5 * w * v.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(((norm_th - norm_h) / norm_h).abs() < 1e-6, "{norm_th} vs {norm_h}");
    }

    #[test]
    fn hankel_conjugates_to_radial_inversion() {
        // T_nu = e^{-(l+(m-1)/2) pi i} Phi T_l Phi^{-1} with nu = m-2+2l.
        // For even m the exponent is half-integral and the consistent
        // branch is the conjugate one, fixed here by parity.
        for (m, l, a) in [(3usize, 1usize, 2usize), (5, 0, 1), (4, 0, 2)] {
            let p = params(m);
            let nu = (m - 2 + 2 * l) as u32;
            let c = cfg();
            let f = make_fal(a, l, p).unwrap();
            let phi_f = {
                let f = f.clone();
                move |x: f64| (x / 2.0).powf((2.0 * m as f64 - 3.0) / 2.0) * f.eval(x * x / 4.0)
            };
            let grid_r = crate::radial::geometric_grid(0.1, 4.0, 20);
            let grid_x: Vec<f64> = grid_r.iter().map(|&r| 2.0 * r.sqrt()).collect();

            let quad_x = gauss_laguerre_rule(300, nu as f64).unwrap();
            let lhs =
                hankel_transform(&phi_f, Decay::Gaussian { rate: 0.5 }, nu, &quad_x, &grid_x, &c)
                    .unwrap();

            let quad_r = gauss_laguerre_rule(400, m as f64 - 2.0).unwrap();
            let t_l = apply_inversion_radial(&f, l, p, &quad_r, &grid_r, &c).unwrap();
            let half = l as f64 + (m as f64 - 1.0) / 2.0;
            let phase = if m % 2 == 1 {
                // integer exponent: a real sign
                Complex64::new(if (half as i64) % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
            } else {
                // half-integral exponent: conjugate branch e^{+ half pi i}
                match ((2.0 * half) as i64).rem_euclid(4) {
                    1 => Complex64::new(0.0, 1.0),
                    3 => Complex64::new(0.0, -1.0),
                    _ => unreachable!(),
                }
            };
            let mut worst: f64 = 0.0;
            for i in 0..grid_r.len() {
                let rhs = phase * (grid_x[i] / 2.0).powf((2.0 * m as f64 - 3.0) / 2.0) * t_l[i];
                worst = worst.max((lhs[i] - rhs).norm() / rhs.norm().max(1e-10));
            }
            assert!(worst < 1e-6, "m={m} l={l}: conjugation worst {worst}");
        }
    }

    #[test]
    fn hankel_exponential_path_matches_laplace_form() {
        // T_nu(y^{nu+1/2} e^{-p y})(x)
        //   = sqrt(x) 2p (2x)^nu Gamma(nu+3/2) / (sqrt(pi) (p^2+x^2)^{nu+3/2})
        let c = cfg();
        let nu = 2u32;
        let p = 2.0f64;
        let quad = gauss_laguerre_rule(700, nu as f64 + 0.5).unwrap();
        let h = move |y: f64| Complex64::new(y.powf(nu as f64 + 0.5) * (-p * y).exp(), 0.0);
        let grid = [0.5f64, 1.5, 3.0];
        let got =
            hankel_transform(&h, Decay::Exponential { rate: p }, nu, &quad, &grid, &c).unwrap();
        for (&x, g) in grid.iter().zip(&got) {
            let want = x.sqrt() * 2.0 * p * (2.0 * x).powi(nu as i32) * gamma(nu as f64 + 1.5)
                / (PI.sqrt() * (p * p + x * x).powf(nu as f64 + 1.5));
            assert!(
                (g.re - want).abs() < 1e-9 * want.abs(),
                "x={x}: {} vs {want}",
                g.re
            );
            assert!(g.im.abs() < 1e-14);
        }
        // an uncertified (non-positive) rate is rejected
        assert!(matches!(
            hankel_transform(&h, Decay::Exponential { rate: 0.0 }, nu, &quad, &grid, &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cone_kernel_support_condition() {
        let p = params(3);
        let c = cfg();
        let fwd = ConePoint::new(vec![1.0, 0.5, 0.2, (1.29f64).sqrt()]).unwrap();
        let bwd = ConePoint::new(vec![-0.9, 0.1, 0.3, -(0.91f64).sqrt()]).unwrap();
        let fwd2 = ConePoint::new(vec![0.2, -1.0, 0.4, (1.2f64).sqrt()]).unwrap();
        // opposite sheets with negative pairing: exactly zero
        assert!(fwd.dot(&bwd) < 0.0);
        let k = cone_inversion_kernel(&fwd, &bwd, p, &c).unwrap();
        assert_eq!(k, Complex64::new(0.0, 0.0));
        // same sheet: matches the projected kernel
        let k = cone_inversion_kernel(&fwd, &fwd2, p, &c).unwrap();
        let via_projection =
            inversion_kernel(&fwd.project(), &fwd2.project(), p, &c).unwrap().value;
        assert!((k - via_projection).norm() < 1e-13 * k.norm());
        // backward pair: nonzero as well
        let bwd2 = ConePoint::new(vec![0.3, 0.4, 0.0, -0.5]).unwrap();
        let k = cone_inversion_kernel(&bwd, &bwd2, p, &c).unwrap();
        assert!(k.norm() > 0.0);
    }

    #[test]
    fn cone_support_is_sheet_diagonal() {
        // random signed pairs: kernel is zero exactly on mixed sheets
        let p = params(3);
        let c = cfg();
        let mut state = 11u64;
        let mut rand = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..100 {
            let (a, b, e) = (rand() * 2.0, rand() * 2.0, rand() * 2.0);
            let na = (a * a + b * b + e * e).sqrt();
            let (cx, d, g) = (rand() * 2.0, rand() * 2.0, rand() * 2.0);
            let nb = (cx * cx + d * d + g * g).sqrt();
            if na < 1e-3 || nb < 1e-3 {
                continue;
            }
            let sa = if rand() > 0.0 { 1.0 } else { -1.0 };
            let za = ConePoint::new(vec![a, b, e, sa * na]).unwrap();
            let sb = if rand() > 0.0 { 1.0 } else { -1.0 };
            let zb = ConePoint::new(vec![cx, d, g, sb * nb]).unwrap();
            let k = cone_inversion_kernel(&za, &zb, p, &c).unwrap();
            if za.sheet() == zb.sheet() {
                // pairing >= 0 on the same sheet (Cauchy-Schwarz)
                assert!(za.dot(&zb) >= -1e-12);
            } else if za.dot(&zb) < 0.0 {
                assert_eq!(k, Complex64::new(0.0, 0.0));
            }
        }
    }
}
