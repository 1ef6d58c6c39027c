//! The full m-dimensional kernel, its light-cone realization, and the
//! angular machinery that ties it to the radial sector kernels: zonal
//! operator spectra, the sphere-integral reduction, and the expansion of
//! the kernel over Gegenbauer polynomials.
//!
//! Every sphere integral in scope is zonal, so integration reduces to the
//! 1-D theta integral with weight sin^{m-2}(theta); no full sphere cubature
//! exists here.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{QuadratureRule, RuleKind};
use crate::radial::{radial_kernel, ComplexTime, ModelParams};
use crate::specfun::{
    bessel_i_tilde_scaled, gamma, gegenbauer_tilde, ln_gamma, SpecFunConfig,
};

/// A point of R^m in Cartesian coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialPoint {
    coords: Vec<f64>,
}

impl SpatialPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("spatial point must be finite and non-empty".into()));
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn radius(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Unit direction; None at the origin.
    pub fn direction(&self) -> Option<Vec<f64>> {
        let r = self.radius();
        if r == 0.0 {
            None
        } else {
            Some(self.coords.iter().map(|c| c / r).collect())
        }
    }

    pub fn dot(&self, other: &SpatialPoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }
}

/// Which sheet of the light cone a point lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSheet {
    Forward,
    Backward,
}

/// A point of the light cone {Q(zeta) = 0} in R^{m+1}, where
/// Q(zeta) = zeta_1^2 + ... + zeta_m^2 - zeta_{m+1}^2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePoint {
    coords: Vec<f64>,
}

pub const CONE_TOLERANCE: f64 = 1e-9;

impl ConePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::InvalidArgument("cone points live in R^{m+1} with m >= 2".into()));
        }
        let norm_sq: f64 = coords.iter().map(|c| c * c).sum();
        let last = coords[coords.len() - 1];
        let spatial_sq = norm_sq - last * last;
        let q = spatial_sq - last * last;
        if q.abs() > CONE_TOLERANCE * norm_sq || last == 0.0 {
            return Err(Error::Domain(format!(
                "point is off the cone: Q = {q}, |zeta|^2 = {norm_sq}"
            )));
        }
        Ok(Self { coords })
    }

    /// Lifts x in R^m \ {0} to the forward cone as (x, |x|).
    pub fn lift(x: &SpatialPoint) -> Result<Self> {
        let r = x.radius();
        if r == 0.0 {
            return Err(Error::Domain("the origin does not lift to the cone".into()));
        }
        let mut coords = x.coords().to_vec();
        coords.push(r);
        Ok(Self { coords })
    }

    pub fn sheet(&self) -> ConeSheet {
        if self.coords[self.coords.len() - 1] > 0.0 {
            ConeSheet::Forward
        } else {
            ConeSheet::Backward
        }
    }

    /// Projection to R^m (drops the last coordinate).
    pub fn project(&self) -> SpatialPoint {
        SpatialPoint::new(self.coords[..self.coords.len() - 1].to_vec()).expect("cone point coords")
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Euclidean norm in R^{m+1}.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Euclidean inner product in R^{m+1}.
    pub fn dot(&self, other: &ConePoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }
}

/// A continuous profile on [-1, 1]: the angular part of a zonal kernel.
pub struct ZonalProfile<'a> {
    pub h: &'a dyn Fn(f64) -> Complex64,
}

/// psi(x, x') = 2 sqrt(2(|x||x'| + <x, x'>)) = 4 sqrt(|x||x'|) cos(theta/2).
pub fn psi(x: &SpatialPoint, xp: &SpatialPoint) -> f64 {
    let inner = x.radius() * xp.radius() + x.dot(xp);
    2.0 * (2.0 * inner.max(0.0)).sqrt()
}

/// The full kernel
/// K(x, x'; t) = 2 e^{-2(|x|+|x'|) coth(t/2)}
///               I~_{(m-3)/2}(psi(x,x') / sinh(t/2))
///               / (pi^{(m-1)/2} sinh^{m-1}(t/2)).
pub fn full_kernel(
    x: &SpatialPoint,
    xp: &SpatialPoint,
    t: &ComplexTime,
    params: ModelParams,
    cfg: &SpecFunConfig,
) -> Result<Complex64> {
    let m = params.m() as f64;
    if x.dim() != params.m() || xp.dim() != params.m() {
        return Err(Error::InvalidArgument(format!(
            "points live in R^{}, model has m = {}",
            x.dim(),
            params.m()
        )));
    }
    let tc = t.get();
    let sh = (tc / 2.0).sinh();
    let coth = (tc / 2.0).cosh() / sh;
    let z = psi(x, xp) / sh;
    let scaled = bessel_i_tilde_scaled(params.nu(), z, cfg)?;
    let exponent = -2.0 * (x.radius() + xp.radius()) * coth
        + z.re.abs()
        + std::f64::consts::LN_2
        - (m - 1.0) / 2.0 * std::f64::consts::PI.ln()
        - (m - 1.0) * sh.ln();
    Ok(exponent.exp() * scaled)
}

/// The same kernel written directly on the cone:
/// K~(zeta, zeta'; t) = 2 e^{-sqrt2 (|zeta|+|zeta'|) coth(t/2)}
///                      I~_{(m-3)/2}(2 sqrt(2 <zeta,zeta'>) / sinh(t/2))
///                      / (pi^{(m-1)/2} sinh^{m-1}(t/2)).
/// Equals `full_kernel` of the projected points.
pub fn cone_kernel(
    zeta: &ConePoint,
    zetap: &ConePoint,
    t: &ComplexTime,
    params: ModelParams,
    cfg: &SpecFunConfig,
) -> Result<Complex64> {
    if zeta.coords().len() != params.m() + 1 || zetap.coords().len() != params.m() + 1 {
        return Err(Error::InvalidArgument("cone point dimension does not match the model".into()));
    }
    if zeta.sheet() != ConeSheet::Forward || zetap.sheet() != ConeSheet::Forward {
        return Err(Error::Domain("the semigroup kernel lives on the forward cone".into()));
    }
    let m = params.m() as f64;
    let tc = t.get();
    let sh = (tc / 2.0).sinh();
    let coth = (tc / 2.0).cosh() / sh;
    let inner = zeta.dot(zetap).max(0.0);
    let z = 2.0 * (2.0 * inner).sqrt() / sh;
    let scaled = bessel_i_tilde_scaled(params.nu(), z, cfg)?;
    let exponent = -std::f64::consts::SQRT_2 * (zeta.norm() + zetap.norm()) * coth
        + z.re.abs()
        + std::f64::consts::LN_2
        - (m - 1.0) / 2.0 * std::f64::consts::PI.ln()
        - (m - 1.0) * sh.ln();
    Ok(exponent.exp() * scaled)
}

fn check_angular_dimension(params: ModelParams) -> Result<()> {
    if params.m() < 3 {
        return Err(Error::UnsupportedDimension(
            "angular operations need m >= 3 (the m = 2 zonal normalization is excluded)".into(),
        ));
    }
    Ok(())
}

fn check_sphere_rule(quad: &QuadratureRule, params: ModelParams) -> Result<()> {
    let want = (params.m() as f64 - 2.0) / 2.0;
    if quad.kind() == RuleKind::GaussLaguerreGeneralized || (quad.param() - want).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "zonal integration in dimension m = {} needs a Gauss-Jacobi rule with index {want}",
            params.m()
        )));
    }
    Ok(())
}

/// Spectrum of the zonal integral operator with profile h on the sphere
/// harmonics of degree l:
/// c_l(h) = (2^{m-2} pi^{(m-2)/2} l! / Gamma(m-2+l))
///          int_0^pi h(cos th) C~_l^{(m-2)/2}(cos th) sin^{m-2} th dth.
pub fn clm_spectrum(
    h: &ZonalProfile,
    l: usize,
    params: ModelParams,
    quad_sphere: &QuadratureRule,
) -> Result<Complex64> {
    check_angular_dimension(params)?;
    check_sphere_rule(quad_sphere, params)?;
    let m = params.m() as f64;
    let nu = (m - 2.0) / 2.0;
    let lfact = gamma(l as f64 + 1.0);
    let factor = 2f64.powf(m - 2.0) * std::f64::consts::PI.powf((m - 2.0) / 2.0) * lfact
        / gamma(m - 2.0 + l as f64);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&s, &w) in quad_sphere.nodes().iter().zip(quad_sphere.weights()) {
        acc += w * (h.h)(s) * gegenbauer_tilde(l, nu, s)?;
    }
    Ok(factor * acc)
}

/// Reduces the full kernel to the degree-l radial kernel by the zonal
/// sphere integral:
/// (1/2) int K(r omega, r' omega'; t) C~_l(<omega,omega'>) domega'
///   = K_l(r, r'; t) C~_l(<omega, omega>),
/// returned as the scalar that must equal `radial_kernel(r, r', t, l)`.
pub fn angular_reduce(
    r: f64,
    rp: f64,
    t: &ComplexTime,
    l: usize,
    params: ModelParams,
    quad_sphere: &QuadratureRule,
    cfg: &SpecFunConfig,
) -> Result<Complex64> {
    check_angular_dimension(params)?;
    let m = params.m();
    // zonal profile s -> K(r e1, r'(s e1 + sqrt(1-s^2) e2); t)
    let h = |s: f64| -> Complex64 {
        let mut xc = vec![0.0; m];
        xc[0] = r;
        let mut xpc = vec![0.0; m];
        let s = s.clamp(-1.0, 1.0);
        xpc[0] = rp * s;
        xpc[1] = rp * (1.0 - s * s).sqrt();
        let x = SpatialPoint::new(xc).expect("finite");
        let xp = SpatialPoint::new(xpc).expect("finite");
        full_kernel(&x, &xp, t, params, cfg).expect("kernel in domain")
    };
    let c = clm_spectrum(&ZonalProfile { h: &h }, l, params, quad_sphere)?;
    Ok(c / 2.0)
}

/// Partial sum of the kernel expansion over angular degrees:
/// pi^{-m/2} sum_{l=0}^{L} ((m-2)/2 + l) K_l(|x|, |x'|; t) C~_l^{(m-2)/2}(cos theta).
pub fn expansion_partial_sum(
    x: &SpatialPoint,
    xp: &SpatialPoint,
    t: &ComplexTime,
    l_max: usize,
    params: ModelParams,
    cfg: &SpecFunConfig,
) -> Result<Complex64> {
    check_angular_dimension(params)?;
    let m = params.m() as f64;
    let nu = (m - 2.0) / 2.0;
    let (r, rp) = (x.radius(), xp.radius());
    let u = if r == 0.0 || rp == 0.0 {
        1.0 // only the l = 0 term survives, which is angle free
    } else {
        (x.dot(xp) / (r * rp)).clamp(-1.0, 1.0)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..=l_max {
        let kl = radial_kernel(r, rp, t, l, params, cfg)?;
        acc += (nu + l as f64) * kl * gegenbauer_tilde(l, nu, u)?;
    }
    Ok(acc * std::f64::consts::PI.powf(-m / 2.0))
}

/// Gegenbauer expansion coefficients of a continuous profile on [-1, 1]
/// against the weight (1-x^2)^{nu-1/2}:
/// alpha_l = l! (l+nu) / (2^{1-2nu} pi Gamma(2nu+l)) *
///           int f(x) C~_l^nu(x) (1-x^2)^{nu-1/2} dx.
pub fn zonal_expand(
    f: &dyn Fn(f64) -> Complex64,
    nu: f64,
    l_max: usize,
    quad: &QuadratureRule,
) -> Result<Vec<Complex64>> {
    if !(nu > 0.0) {
        return Err(Error::InvalidArgument(format!("expansion index must be > 0, got {nu}")));
    }
    if quad.kind() == RuleKind::GaussLaguerreGeneralized || (quad.param() - nu).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "zonal expansion at index {nu} needs a matching Gauss-Jacobi rule"
        )));
    }
    let samples: Vec<(f64, f64, Complex64)> = quad
        .nodes()
        .iter()
        .zip(quad.weights())
        .map(|(&s, &w)| (s, w, f(s)))
        .collect();
    let mut coeffs = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        // log form: Gamma(2nu+l) overflows for large l while the ratio stays tame
        let ln_norm = ln_gamma(l as f64 + 1.0) - (1.0 - 2.0 * nu) * std::f64::consts::LN_2
            - std::f64::consts::PI.ln()
            - ln_gamma(2.0 * nu + l as f64);
        let norm = (l as f64 + nu) * ln_norm.exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for &(s, w, fv) in &samples {
            acc += w * fv * gegenbauer_tilde(l, nu, s)?;
        }
        coeffs.push(norm * acc);
    }
    Ok(coeffs)
}

/// Evaluates a coefficient sequence from `zonal_expand` back at x.
pub fn zonal_eval(coeffs: &[Complex64], nu: f64, x: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (l, &c) in coeffs.iter().enumerate() {
        acc += c * gegenbauer_tilde(l, nu, x)?;
    }
    Ok(acc)
}
