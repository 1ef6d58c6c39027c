//! The radial sector: exact quasi-polynomial eigenprofiles, the radial
//! semigroup kernel and its operator, the kernel upper bound, Weber's
//! product identity, and the Gaussian-kernel contraction family obtained
//! from it by a change of variables.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureRule};
use crate::specfun::{
    bessel_i, bessel_i_tilde_scaled, bessel_j, gamma, laguerre_coeffs, SpecFunConfig,
};

/// Spatial dimension m >= 2 with its derived spectral constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelParams {
    m: usize,
}

impl ModelParams {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {m}")));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// (m-1)/2: the spectral offset; the operator norm of the semigroup at
    /// time t is e^{-half_shift * Re t}.
    pub fn half_shift(&self) -> f64 {
        (self.m as f64 - 1.0) / 2.0
    }

    /// (m-3)/2: the Bessel order of the full m-dimensional kernel.
    pub fn nu(&self) -> f64 {
        (self.m as f64 - 3.0) / 2.0
    }

    /// Bessel order of the radial kernel on the angular-degree-l sector.
    pub fn sector_order(&self, l: usize) -> f64 {
        (self.m - 2 + 2 * l) as f64
    }
}

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const OMEGA_EDGE_TOL: f64 = 1e-12;

/// A point of the time domain { Re t >= 0 } \ 2 pi i Z on which the
/// semigroup kernels are defined and pole free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTime {
    t: Complex64,
}

impl ComplexTime {
    pub fn new(t: Complex64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("non-finite time parameter {t}")));
        }
        if t.re < 0.0 {
            return Err(Error::Domain(format!("Re t must be >= 0, got {t}")));
        }
        let k = (t.im / TWO_PI).round();
        let lattice_dist = t.re.hypot(t.im - TWO_PI * k);
        if lattice_dist < OMEGA_EDGE_TOL {
            return Err(Error::Domain(format!("t = {t} lies on the excluded lattice 2 pi i Z")));
        }
        Ok(Self { t })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    /// t = pi i, the boundary point whose kernel is the inversion kernel.
    pub fn inversion_point() -> Self {
        Self { t: Complex64::new(0.0, std::f64::consts::PI) }
    }

    pub fn get(&self) -> Complex64 {
        self.t
    }

    pub fn is_unitary_axis(&self) -> bool {
        self.t.re == 0.0
    }

    /// alpha(t) = Re coth(t/2) = sinh x / (cosh x - cos y) for t = x + i y.
    pub fn alpha(&self) -> f64 {
        let (x, y) = (self.t.re, self.t.im);
        x.sinh() / (x.cosh() - y.cos())
    }

    /// beta(t) = cos(y/2) / cosh(x/2).
    pub fn beta(&self) -> f64 {
        let (x, y) = (self.t.re, self.t.im);
        (y / 2.0).cos() / (x / 2.0).cosh()
    }

    pub fn try_add(&self, other: &ComplexTime) -> Result<ComplexTime> {
        ComplexTime::new(self.t + other.t)
    }
}

/// A finite sum sum_j c_j r^(min_degree + j) e^{-2r}: the exact closure
/// class of the eigenprofiles under the sector differential operators.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialQuasiPolynomial {
    min_degree: i32,
    coeffs: Vec<Complex64>,
}

impl RadialQuasiPolynomial {
    pub fn new(min_degree: i32, coeffs: Vec<Complex64>) -> Result<Self> {
        if min_degree < -1 {
            return Err(Error::Representation(format!(
                "powers below r^-1 are not representable (min_degree = {min_degree})"
            )));
        }
        Ok(Self { min_degree, coeffs }.trimmed())
    }

    pub fn zero() -> Self {
        Self { min_degree: 0, coeffs: vec![] }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.norm() == 0.0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_degree += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.min_degree = 0;
        }
        self
    }

    /// Drops leading/trailing coefficients that are negligible against the
    /// largest one; used after operator applications whose analytic
    /// cancellations only hold to rounding.
    pub fn trim_negligible(mut self, rel_tol: f64) -> Self {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
        if scale > 0.0 {
            let tol = rel_tol * scale;
            for c in &mut self.coeffs {
                if c.norm() < tol {
                    *c = Complex64::new(0.0, 0.0);
                }
            }
        }
        self.trimmed()
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at r > 0 (the e^{-2r} factor included).
    pub fn eval(&self, r: f64) -> Complex64 {
        let poly = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * r + c);
        poly * r.powi(self.min_degree) * (-2.0 * r).exp()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
        .trimmed()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = (self.min_degree + self.coeffs.len() as i32)
            .max(other.min_degree + other.coeffs.len() as i32);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo) as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_degree - lo) as usize + j] += c;
        }
        for (j, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.min_degree - lo) as usize + j] += c;
        }
        Self { min_degree: lo, coeffs }.trimmed()
    }

    /// Multiplication by r.
    pub fn mul_r(&self) -> Self {
        Self { min_degree: self.min_degree + 1, coeffs: self.coeffs.clone() }
    }

    /// Division by r; fails if it would create a power below r^-1.
    pub fn div_r(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Self::new(self.min_degree - 1, self.coeffs.clone())
    }

    /// Exact derivative: d/dr [r^k e^{-2r}] = (k r^{k-1} - 2 r^k) e^{-2r}.
    pub fn d_dr(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lo = self.min_degree - 1;
        if lo < -1 && self.min_degree != 0 {
            return Err(Error::Representation("derivative fell below r^-1".into()));
        }
        let n = self.coeffs.len();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = self.min_degree + j as i32;
            coeffs[j] += c * k as f64; // r^{k-1} slot (index j relative to lo)
            coeffs[j + 1] -= 2.0 * c; // r^k slot
        }
        Self::new(lo, coeffs)
    }

    /// Max coefficient magnitude, for relative comparisons.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0_f64, f64::max)
    }
}

/// Sector label: angular degree l and radial index a with l <= a.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorIndex {
    pub l: usize,
    pub a: usize,
}

impl SectorIndex {
    pub fn new(a: usize, l: usize) -> Result<Self> {
        if l > a {
            return Err(Error::InvalidArgument(format!(
                "sector index needs l <= a, got a = {a}, l = {l}"
            )));
        }
        Ok(Self { l, a })
    }
}

/// The eigenprofile f_{a,l}(r) = L_{a-l}^{m-2+2l}(4r) r^l e^{-2r},
/// represented exactly.
pub fn make_fal(a: usize, l: usize, params: ModelParams) -> Result<RadialQuasiPolynomial> {
    SectorIndex::new(a, l)?;
    let lag = laguerre_coeffs(a - l, (params.m() - 2 + 2 * l) as f64);
    let mut coeffs = Vec::with_capacity(lag.coeffs().len());
    let mut four_pow = 1.0;
    for &c in lag.coeffs() {
        coeffs.push(Complex64::new(c * four_pow, 0.0));
        four_pow *= 4.0;
    }
    RadialQuasiPolynomial::new(l as i32, coeffs)
}

/// Squared norm of f_{a,l} in L^2(r^{m-2} dr):
/// Gamma(m-1+a+l) / (4^{m-1+2l} Gamma(a-l+1)).
pub fn fal_norm_sq(a: usize, l: usize, params: ModelParams) -> f64 {
    let m = params.m();
    gamma((m - 1 + a + l) as f64) / (4f64.powi((m - 1 + 2 * l) as i32) * gamma((a - l + 1) as f64))
}

/// The semigroup eigenvalue on the (a, l) sector: e^{-(a + (m-1)/2) t}.
pub fn semigroup_eigenvalue(a: usize, params: ModelParams, t: &ComplexTime) -> Complex64 {
    (-(a as f64 + params.half_shift()) * t.get()).exp()
}

/// Radial kernel K_l(r, r'; t), evaluated through the entire tilde-Bessel
/// form so the removable (r r')^{-(m-2)/2} singularity never appears:
///
/// K_l = 2^{m-1+2l} (r r')^l sinh(t/2)^{-(m-1+2l)}
///       e^{-2(r+r') coth(t/2)} I~_{m-2+2l}(4 sqrt(r r') / sinh(t/2)).
///
/// Assembled in log form: the analytic bound guarantees the combined
/// exponent has non-positive real part, so no intermediate can overflow.
pub fn radial_kernel(
    r: f64,
    rp: f64,
    t: &ComplexTime,
    l: usize,
    params: ModelParams,
    cfg: &SpecFunConfig,
) -> Result<Complex64> {
    if r < 0.0 || rp < 0.0 {
        return Err(Error::Domain(format!("radial arguments must be >= 0, got ({r}, {rp})")));
    }
    let order = params.sector_order(l);
    let power = (params.m() - 1 + 2 * l) as f64;
    let tc = t.get();
    let sh = (tc / 2.0).sinh();
    let ch = (tc / 2.0).cosh();
    let coth = ch / sh;
    let z = 4.0 * (r * rp).sqrt() / sh;
    let scaled = bessel_i_tilde_scaled(order, z, cfg)?;
    let mut exponent = -2.0 * (r + rp) * coth + z.re.abs();
    exponent += power * (std::f64::consts::LN_2 - sh.ln());
    if l > 0 {
        if r * rp == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        exponent += l as f64 * (r * rp).ln();
    }
    Ok(exponent.exp() * scaled)
}

/// Pointwise upper bound for |K_l(r, r'; t)|:
/// C (r r')^l e^{-2 alpha (1-|beta|) (r+r')} / |sinh(t/2)|^{m-1+2l},
/// with C calibrated from the global bound on the scaled tilde-Bessel
/// (its value at 0) with a safety factor.
pub fn kernel_upper_bound(r: f64, rp: f64, t: &ComplexTime, l: usize, params: ModelParams) -> f64 {
    let order = params.sector_order(l);
    let power = (params.m() - 1 + 2 * l) as f64;
    let c = 3.0 / gamma(order + 1.0); // 2 * sup |I~ e^{-|Re|}| * 1.5
    let sh_abs = (t.get() / 2.0).sinh().norm();
    let mut ln_val = c.ln() + power * (std::f64::consts::LN_2 - sh_abs.ln())
        - 2.0 * t.alpha() * (1.0 - t.beta().abs()) * (r + rp);
    if l > 0 {
        if r * rp == 0.0 {
            return 0.0;
        }
        ln_val += l as f64 * (r * rp).ln();
    }
    ln_val.exp()
}

/// Input profile for the radial operators: either an exact
/// quasi-polynomial (certified e^{-2r} decay) or an arbitrary sampled
/// profile with a caller-certified exponential decay rate.
pub enum RadialProfile<'a> {
    QuasiPolynomial(&'a RadialQuasiPolynomial),
    Sampled { eval: &'a dyn Fn(f64) -> Complex64, decay_rate: f64 },
}

impl RadialProfile<'_> {
    fn decay_rate(&self) -> f64 {
        match self {
            RadialProfile::QuasiPolynomial(_) => 2.0,
            RadialProfile::Sampled { decay_rate, .. } => *decay_rate,
        }
    }

    fn eval(&self, r: f64) -> Complex64 {
        match self {
            RadialProfile::QuasiPolynomial(q) => q.eval(r),
            RadialProfile::Sampled { eval, .. } => eval(r),
        }
    }
}

/// Default output grid: geometric on [1e-3, 20], 256 points.
pub fn default_radial_grid() -> Vec<f64> {
    geometric_grid(1e-3, 20.0, 256)
}

pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = (hi / lo).powf(1.0 / (n as f64 - 1.0));
    (0..n).map(|i| lo * ratio.powi(i as i32)).collect()
}

/// Applies the radial semigroup operator at time t on the degree-l sector:
/// (T f)(r) = int_0^inf K_l(r, r'; t) f(r') r'^{m-2} dr', evaluated on the
/// caller's output grid.
///
/// On the unitary axis (Re t = 0) only quasi-polynomial inputs are
/// accepted; the integral does not converge absolutely for generic L^2
/// samples there.
pub fn apply_radial_semigroup(
    f: &RadialProfile,
    t: &ComplexTime,
    l: usize,
    params: ModelParams,
    quad: &QuadratureRule,
    out_grid: &[f64],
    cfg: &SpecFunConfig,
) -> Result<Vec<Complex64>> {
    if t.is_unitary_axis() {
        if let RadialProfile::Sampled { .. } = f {
            return Err(Error::Domain(
                "sampled profiles are not accepted on the unitary axis; \
                 decay there must be certified (use a quasi-polynomial)"
                    .into(),
            ));
        }
    }
    let expected_alpha = params.m() as f64 - 2.0;
    if (quad.param() - expected_alpha).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "quadrature rule was built for exponent {} but the model needs {expected_alpha}",
            quad.param()
        )));
    }
    // envelope: e^{-decay r'} from the input and e^{-2 alpha(t) r'} from
    // the kernel
    let damping = f.decay_rate() + 2.0 * t.alpha();
    let (nodes, weights) = quadrature::radial_weights(quad, damping)?;
    let samples: Vec<Complex64> = nodes.iter().map(|&rp| f.eval(rp)).collect();
    for (&rp, v) in nodes.iter().zip(&samples) {
        if !v.is_finite() {
            return Err(Error::BadNode { node: rp });
        }
    }
    let mut out = Vec::with_capacity(out_grid.len());
    for &r in out_grid {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&rp, &u), &fv) in nodes.iter().zip(&weights).zip(&samples) {
            if u == 0.0 {
                continue;
            }
            acc += u * radial_kernel(r, rp, t, l, params, cfg)? * fv;
        }
        if !acc.is_finite() {
            return Err(Error::BadNode { node: r });
        }
        out.push(acc);
    }
    Ok(out)
}

/// Both sides of Weber's product identity
/// int_0^inf e^{-rho x^2} J_nu(a x) J_nu(b x) x dx
///   = e^{-(a^2+b^2)/(4 rho)} I_nu(a b / (2 rho)) / (2 rho),
/// the left side by quadrature (substituting u = x^2), the right in closed
/// form.
pub fn weber_check(
    rho: f64,
    a: f64,
    b: f64,
    nu: u32,
    quad: &QuadratureRule,
    cfg: &SpecFunConfig,
) -> Result<(f64, f64)> {
    if !(rho > 0.0 && a > 0.0 && b > 0.0) {
        return Err(Error::InvalidArgument("Weber parameters must be positive".into()));
    }
    if (quad.param()).abs() > 1e-12 {
        return Err(Error::InvalidArgument(
            "Weber check needs a Gauss-Laguerre rule with exponent 0".into(),
        ));
    }
    let (nodes, weights) = quadrature::radial_weights(quad, rho)?;
    let mut lhs = 0.0;
    for (&u, &w) in nodes.iter().zip(&weights) {
        let x = u.sqrt();
        lhs += 0.5 * w * (-rho * u).exp() * bessel_j(nu as f64, a * x, cfg)? * bessel_j(nu as f64, b * x, cfg)?;
    }
    let rhs = (-(a * a + b * b) / (4.0 * rho)).exp() * bessel_i(nu as f64, a * b / (2.0 * rho), cfg)?
        / (2.0 * rho);
    Ok((lhs, rhs))
}

/// The contraction family T_s on L^2((0, inf), dx) with the Gaussian
/// Bessel kernel
/// A(x, y; s) = sqrt(xy) e^{-(x^2+y^2) coth(s)/2} I_nu(x y / sinh s) / sinh s,
/// applied to a sampled profile on the caller's output grid.
pub fn dirac_operator(
    h: &dyn Fn(f64) -> Complex64,
    s: Complex64,
    nu: u32,
    quad: &QuadratureRule,
    out_grid: &[f64],
    cfg: &SpecFunConfig,
) -> Result<Vec<Complex64>> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("the contraction family needs Re s > 0, got {s}")));
    }
    if (quad.param() + 0.5).abs() > 1e-12 {
        return Err(Error::InvalidArgument(
            "the Gaussian-kernel operator needs a Gauss-Laguerre rule with exponent -1/2".into(),
        ));
    }
    let sh = s.sinh();
    let coth = s.cosh() / sh;
    // substitution u = y^2: dy = du / (2 sqrt(u)); Gaussian envelope rate
    let damping = coth.re / 2.0;
    let (nodes, weights) = quadrature::radial_weights(quad, damping)?;
    let samples: Vec<Complex64> = nodes.iter().map(|&u| h(u.sqrt())).collect();
    let mut out = Vec::with_capacity(out_grid.len());
    for &x in out_grid {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&u, &w), &hv) in nodes.iter().zip(&weights).zip(&samples) {
            if w == 0.0 {
                continue;
            }
            let y = u.sqrt();
            let z = x * y / sh;
            let scaled = bessel_i_tilde_scaled(nu as f64, z, cfg)?;
            // A(x,y;s) dy = sqrt(xy) e^{...} I_nu(z)/sinh s * du/(2 sqrt u);
            // the u^{-1/2} Jacobian lives in the quadrature weight
            let exponent = -(x * x + u) * coth / 2.0 + z.re.abs()
                + (nu as f64) * (z / 2.0).ln()
                - sh.ln()
                + 0.5 * (x * y).ln();
            acc += 0.5 * w * exponent.exp() * scaled * hv;
        }
        if !acc.is_finite() {
            return Err(Error::BadNode { node: x });
        }
        out.push(acc);
    }
    Ok(out)
}
