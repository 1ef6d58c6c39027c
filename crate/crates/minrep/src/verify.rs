//! Identity-verification suites with machine-readable reports.
//!
//! Every analytic identity the kernels satisfy is re-checked numerically
//! at desk scale: eigenprofile relations, kernel composition, the sphere
//! reduction, expansion formulas, inversion order and Plancherel,
//! factorization round trips, the contraction family, and the special
//! function identities. Each suite runs its cases concurrently and reports
//! them in a fixed order with pinned tolerances.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::group;
use crate::inversion::{self, Decay};
use crate::kernel::{self, SpatialPoint, ZonalProfile};
use crate::quadrature::{self, gauss_jacobi_general, gauss_jacobi_rule, gauss_laguerre_rule};
use crate::radial::{self, ComplexTime, ModelParams, RadialProfile};
use crate::specfun::{
    self, bessel_i, bessel_i_tilde_scaled, bessel_j_tilde, gamma, gegenbauer_tilde, laguerre,
    SpecFunConfig,
};

/// Pinned tolerances, one per verified identity family.
pub mod tolerances {
    /// Eigenprofile relation, relative grid norm.
    pub const EIGEN_REL: f64 = 1e-6;
    /// Operator-norm contraction overshoot.
    pub const CONTRACTION_REL: f64 = 1e-4;
    /// Weber product identity, relative.
    pub const WEBER_REL: f64 = 1e-8;
    /// Kernel-level composition law, relative.
    pub const SEMIGROUP_KERNEL_REL: f64 = 1e-6;
    /// Sphere reduction vs radial kernel, relative.
    pub const REDUCTION_REL: f64 = 1e-6;
    /// Kernel expansion truncated at degree 40 vs the closed kernel.
    pub const EXPANSION_FULL_REL: f64 = 1e-8;
    /// Oscillatory specialization of the expansion.
    pub const EXPANSION_BESSEL_REL: f64 = 1e-7;
    /// Radial inversion squared vs the signed identity.
    pub const INVERSION_ORDER_REL: f64 = 1e-6;
    /// Radial inversion norm preservation.
    pub const INVERSION_PLANCHEREL_REL: f64 = 1e-5;
    /// Hankel transform: involution and norm preservation.
    pub const HANKEL_REL: f64 = 1e-6;
    /// Factorization reconstruction, absolute on matrix entries.
    pub const BRUHAT_RECON_ABS: f64 = 1e-10;
    /// Exact sector algebra, relative on coefficients.
    pub const SECTOR_EXACT_REL: f64 = 1e-12;
    /// Orthogonality norms (Laguerre, Gegenbauer, radial profiles).
    pub const ORTHOGONALITY_REL: f64 = 1e-9;
    /// Bilinear generating function for Laguerre polynomials.
    pub const HILLE_HARDY_REL: f64 = 1e-9;
    /// Gegenbauer-Bessel product integral.
    pub const BESSEL_GEGENBAUER_REL: f64 = 1e-8;
    /// Gegenbauer moment integral.
    pub const GEGENBAUER_MOMENT_REL: f64 = 1e-8;
    /// Overshoot of the scaled Bessel bound.
    pub const BESSEL_BOUND_OVERSHOOT: f64 = 1e-12;
    /// Contraction-family composition.
    pub const DIRAC_SEMIGROUP_REL: f64 = 1e-7;
    /// Strict decrease factor for the identity approximation.
    pub const DIRAC_MONOTONE_RATIO: f64 = 1.0;
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub id: String,
    /// Which acceptance criterion the case backs.
    pub criterion: usize,
    pub parameters: String,
    pub measured_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
    pub wall_time_s: f64,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Runtime options: a dimension filter, a tolerance scale, and a
/// quadrature-order override.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub m: Option<usize>,
    pub tol_factor: f64,
    pub quad_n: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { m: None, tol_factor: 1.0, quad_n: None }
    }
}

pub const SUITES: &[&str] =
    &["specfun", "eigen", "weber", "reduction", "inversion", "bruhat", "dirac", "expansion"];

/// Runs one named suite ("all" runs every suite back to back).
pub fn run_suite(name: &str, opts: &VerifyOptions) -> crate::Result<Vec<VerificationReport>> {
    let reports = match name {
        "all" => SUITES
            .iter()
            .map(|s| run_single(s, opts))
            .collect::<crate::Result<Vec<_>>>()?,
        _ => vec![run_single(name, opts)?],
    };
    Ok(reports)
}

fn run_single(name: &str, opts: &VerifyOptions) -> crate::Result<VerificationReport> {
    let cases = match name {
        "specfun" => specfun_cases(opts),
        "eigen" => eigen_cases(opts),
        "weber" => weber_cases(opts),
        "reduction" => reduction_cases(opts),
        "inversion" => inversion_cases(opts),
        "bruhat" => bruhat_cases(opts),
        "dirac" => dirac_cases(opts),
        "expansion" => expansion_cases(opts),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{other}'; expected one of all, {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(execute(name, cases, opts))
}

type CaseFn = Box<dyn Fn() -> Result<f64, Error> + Send + Sync>;

struct CaseSpec {
    id: String,
    criterion: usize,
    parameters: String,
    tolerance: f64,
    run: CaseFn,
}

fn execute(suite: &str, cases: Vec<CaseSpec>, opts: &VerifyOptions) -> VerificationReport {
    let start = std::time::Instant::now();
    let results: Vec<CaseResult> = cases
        .par_iter()
        .map(|case| {
            let tolerance = case.tolerance * opts.tol_factor;
            let (measured, params) = match (case.run)() {
                Ok(v) => (v, case.parameters.clone()),
                Err(e) => (f64::INFINITY, format!("{} [error: {e}]", case.parameters)),
            };
            CaseResult {
                id: case.id.clone(),
                criterion: case.criterion,
                parameters: params,
                measured_error: measured,
                tolerance,
                pass: measured <= tolerance,
            }
        })
        .collect();
    let passed = results.iter().filter(|c| c.pass).count();
    VerificationReport {
        suite: suite.to_string(),
        cases: results,
        passed,
        failed: cases.len() - passed,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}

fn dims(opts: &VerifyOptions, all: &[usize]) -> Vec<usize> {
    match opts.m {
        Some(m) => all.iter().copied().filter(|&v| v == m).collect(),
        None => all.to_vec(),
    }
}

fn rel_vec_error(got: &[Complex64], want: &[Complex64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (g, w) in got.iter().zip(want) {
        num += (g - w).norm_sqr();
        den += w.norm_sqr();
    }
    (num / den.max(1e-300)).sqrt()
}

// ---------------------------------------------------------------------
// eigen: criteria 1 (eigenprofile identity) and 8 (exact sector algebra)
// ---------------------------------------------------------------------

fn eigen_cases(opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    let quad_n = opts.quad_n.unwrap_or(200);
    let times = [(0.5, 0.0), (1.0, 0.0), (0.3, 0.9), (0.0, std::f64::consts::PI)];
    for m in dims(opts, &[3, 4, 5]) {
        for l in 0..=2usize {
            for a in l..=l + 3 {
                for (k, &(re, im)) in times.iter().enumerate() {
                    let id = format!("eigen/m{m}l{l}a{a}t{k}");
                    cases.push(CaseSpec {
                        id,
                        criterion: 1,
                        parameters: format!("m={m} l={l} a={a} t={re}+{im}i n={quad_n}"),
                        tolerance: tolerances::EIGEN_REL,
                        run: Box::new(move || {
                            let p = ModelParams::new(m)?;
                            let cfg = SpecFunConfig::default();
                            let t = ComplexTime::from_parts(re, im)?;
                            let f = radial::make_fal(a, l, p)?;
                            let quad = gauss_laguerre_rule(quad_n, m as f64 - 2.0)?;
                            let grid = radial::default_radial_grid();
                            let got = radial::apply_radial_semigroup(
                                &RadialProfile::QuasiPolynomial(&f),
                                &t,
                                l,
                                p,
                                &quad,
                                &grid,
                                &cfg,
                            )?;
                            let ev = radial::semigroup_eigenvalue(a, p, &t);
                            let want: Vec<Complex64> =
                                grid.iter().map(|&r| ev * f.eval(r)).collect();
                            Ok(rel_vec_error(&got, &want))
                        }),
                    });
                }
            }
        }
    }
    // contraction of the operator norm on the eigenprofile span
    for m in dims(opts, &[3, 4, 5]) {
        let id = format!("eigen/contraction-m{m}");
        cases.push(CaseSpec {
            id,
            criterion: 1,
            parameters: format!("m={m} t=0.4 random span"),
            tolerance: tolerances::CONTRACTION_REL,
            run: Box::new(move || {
                let p = ModelParams::new(m)?;
                let cfg = SpecFunConfig::default();
                let t = ComplexTime::from_parts(0.4, 0.0)?;
                // deterministic pseudo-random combination on the l = 0 tower
                let coeffs = [0.83, -0.41, 0.22, 0.57];
                let mut f = radial::RadialQuasiPolynomial::zero();
                let mut norm_sq = 0.0;
                for (a, &c) in coeffs.iter().enumerate() {
                    f = f.add(&radial::make_fal(a, 0, p)?.scale(Complex64::new(c, 0.0)));
                    norm_sq += c * c * radial::fal_norm_sq(a, 0, p);
                }
                let quad = gauss_laguerre_rule(200, m as f64 - 2.0)?;
                // output at nodes matched to the squared decay e^{-4r}
                let out_rule = gauss_laguerre_rule(160, m as f64 - 2.0)?;
                let (nodes, weights) = quadrature::radial_weights(&out_rule, 4.0)?;
                let out = radial::apply_radial_semigroup(
                    &RadialProfile::QuasiPolynomial(&f),
                    &t,
                    0,
                    p,
                    &quad,
                    &nodes,
                    &cfg,
                )?;
                let out_norm = nodes
                    .iter()
                    .zip(&weights)
                    .zip(&out)
                    .map(|((_, &w), v)| w * v.norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                let bound = (-p.half_shift() * 0.4).exp() * norm_sq.sqrt();
                Ok((out_norm / bound - 1.0).max(0.0))
            }),
        });
    }
    // criterion 8: exact spectral eigenvalue and sl2 brackets
    for m in dims(opts, &[3, 4, 5]) {
        for l in 0..=2usize {
            for a in l..=l + 3 {
                let id = format!("sector/m{m}l{l}a{a}");
                cases.push(CaseSpec {
                    id,
                    criterion: 8,
                    parameters: format!("m={m} l={l} a={a} exact coefficients"),
                    tolerance: tolerances::SECTOR_EXACT_REL,
                    run: Box::new(move || {
                        let p = ModelParams::new(m)?;
                        let f = radial::make_fal(a, l, p)?;
                        let df = group::apply_sl2_operator(group::Sl2Generator::D, l, &f, p)?;
                        let want = f.scale(Complex64::new(-(a as f64 + p.half_shift()), 0.0));
                        let diff = df.add(&want.scale(Complex64::new(-1.0, 0.0)));
                        Ok(diff.max_coeff() / want.max_coeff())
                    }),
                });
            }
        }
    }
    for m in dims(opts, &[3, 5]) {
        let id = format!("sector/brackets-m{m}");
        cases.push(CaseSpec {
            id,
            criterion: 8,
            parameters: format!("m={m} sl2 relations on (a,l)=(2,1)"),
            tolerance: tolerances::SECTOR_EXACT_REL,
            run: Box::new(move || {
                use group::Sl2Generator as G;
                let p = ModelParams::new(m)?;
                let l = 1usize;
                let f = radial::make_fal(2, l, p)?;
                let ap = |g, q: &radial::RadialQuasiPolynomial| group::apply_sl2_operator(g, l, q, p);
                let bracket = |x, y, q: &radial::RadialQuasiPolynomial| -> Result<_, Error> {
                    let xy = ap(x, &ap(y, q)?)?;
                    let yx = ap(y, &ap(x, q)?)?;
                    Ok(xy.add(&yx.scale(Complex64::new(-1.0, 0.0))))
                };
                let mut worst: f64 = 0.0;
                let he = bracket(G::HTilde, G::ETilde, &f)?;
                let want = ap(G::ETilde, &f)?.scale(Complex64::new(2.0, 0.0));
                worst = worst
                    .max(he.add(&want.scale(Complex64::new(-1.0, 0.0))).max_coeff() / want.max_coeff());
                let hf = bracket(G::HTilde, G::FTilde, &f)?;
                let want = ap(G::FTilde, &f)?.scale(Complex64::new(-2.0, 0.0));
                worst = worst
                    .max(hf.add(&want.scale(Complex64::new(-1.0, 0.0))).max_coeff() / want.max_coeff());
                let ef = bracket(G::ETilde, G::FTilde, &f)?;
                let want = ap(G::HTilde, &f)?;
                worst = worst
                    .max(ef.add(&want.scale(Complex64::new(-1.0, 0.0))).max_coeff() / want.max_coeff());
                Ok(worst)
            }),
        });
    }
    cases
}

// ---------------------------------------------------------------------
// weber: criteria 2 (product identity) and 3 (kernel composition)
// ---------------------------------------------------------------------

fn weber_cases(opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    let quad_n = opts.quad_n.unwrap_or(160);
    let grid: [(f64, f64, f64); 4] =
        [(1.0, 1.0, 1.0), (0.5, 2.0, 3.0), (2.0, 0.7, 1.3), (1.5, 2.5, 0.6)];
    for nu in 1u32..=3 {
        for (k, &(rho, a, b)) in grid.iter().enumerate() {
            let id = format!("weber/nu{nu}p{k}");
            cases.push(CaseSpec {
                id,
                criterion: 2,
                parameters: format!("rho={rho} a={a} b={b} nu={nu} n={quad_n}"),
                tolerance: tolerances::WEBER_REL,
                run: Box::new(move || {
                    let cfg = SpecFunConfig::default();
                    let quad = gauss_laguerre_rule(quad_n, 0.0)?;
                    let (lhs, rhs) = radial::weber_check(rho, a, b, nu, &quad, &cfg)?;
                    Ok(((lhs - rhs) / rhs).abs())
                }),
            });
        }
    }
    // kernel-level composition law
    for m in dims(opts, &[3]) {
        for l in 0..=1usize {
            for (k, &(t1, t2)) in [(0.4, 0.7), (0.2, 1.1)].iter().enumerate() {
                let id = format!("compose/m{m}l{l}t{k}");
                cases.push(CaseSpec {
                    id,
                    criterion: 3,
                    parameters: format!("m={m} l={l} t1={t1} t2={t2} 4x4 grid"),
                    tolerance: tolerances::SEMIGROUP_KERNEL_REL,
                    run: Box::new(move || {
                        let p = ModelParams::new(m)?;
                        let cfg = SpecFunConfig::default();
                        let ta = ComplexTime::from_parts(t1, 0.0)?;
                        let tb = ComplexTime::from_parts(t2, 0.0)?;
                        let tc = ComplexTime::from_parts(t1 + t2, 0.0)?;
                        let damping = 2.0 * (ta.alpha() + tb.alpha());
                        let rule = gauss_laguerre_rule(200, m as f64 - 2.0)?;
                        let (nodes, weights) = quadrature::radial_weights(&rule, damping)?;
                        let rs = [0.4, 0.9, 1.6, 2.5];
                        let mut worst: f64 = 0.0;
                        for &r in &rs {
                            for &rp in &rs {
                                let mut acc = Complex64::new(0.0, 0.0);
                                for (&s, &w) in nodes.iter().zip(&weights) {
                                    if w == 0.0 {
                                        continue;
                                    }
                                    acc += w
                                        * radial::radial_kernel(r, s, &ta, l, p, &cfg)?
                                        * radial::radial_kernel(s, rp, &tb, l, p, &cfg)?;
                                }
                                let want = radial::radial_kernel(r, rp, &tc, l, p, &cfg)?;
                                worst = worst.max((acc - want).norm() / want.norm());
                            }
                        }
                        Ok(worst)
                    }),
                });
            }
        }
    }
    cases
}

// ---------------------------------------------------------------------
// reduction: criterion 4
// ---------------------------------------------------------------------

fn reduction_cases(opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    let times = [(0.5, 0.0), (1.0, 0.0), (0.3, 0.9), (0.5, 0.5), (0.0, std::f64::consts::PI)];
    for m in dims(opts, &[3, 5]) {
        for l in 0..=3usize {
            for (k, &(re, im)) in times.iter().enumerate() {
                let id = format!("reduction/m{m}l{l}t{k}");
                cases.push(CaseSpec {
                    id,
                    criterion: 4,
                    parameters: format!("m={m} l={l} t={re}+{im}i"),
                    tolerance: tolerances::REDUCTION_REL,
                    run: Box::new(move || {
                        let p = ModelParams::new(m)?;
                        let cfg = SpecFunConfig::default();
                        let t = ComplexTime::from_parts(re, im)?;
                        let quad = gauss_jacobi_rule(96, (m as f64 - 2.0) / 2.0)?;
                        let mut worst: f64 = 0.0;
                        for &(r, rp) in &[(1.0, 0.7), (0.4, 1.8), (2.2, 2.2)] {
                            let got = kernel::angular_reduce(r, rp, &t, l, p, &quad, &cfg)?;
                            let want = radial::radial_kernel(r, rp, &t, l, p, &cfg)?;
                            worst = worst.max((got - want).norm() / want.norm());
                        }
                        Ok(worst)
                    }),
                });
            }
        }
    }
    cases
}

// ---------------------------------------------------------------------
// expansion: criterion 5
// ---------------------------------------------------------------------

fn expansion_cases(opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    for m in dims(opts, &[3, 4, 5]) {
        for (k, &(re, im)) in [(0.5, 0.0), (1.0, 0.0), (0.5, 0.5)].iter().enumerate() {
            let id = format!("expansion/m{m}t{k}");
            cases.push(CaseSpec {
                id,
                criterion: 5,
                parameters: format!("m={m} t={re}+{im}i L=40"),
                tolerance: tolerances::EXPANSION_FULL_REL,
                run: Box::new(move || {
                    let p = ModelParams::new(m)?;
                    let cfg = SpecFunConfig::default();
                    let t = ComplexTime::from_parts(re, im)?;
                    let mut worst: f64 = 0.0;
                    let pairs = [
                        (vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]),
                        (vec![0.5, 0.5, 0.0], vec![0.5, -0.3, 0.8]),
                        (vec![2.0, 0.0, 0.5], vec![1.5, 0.2, 0.1]),
                    ];
                    for (xc, yc) in pairs {
                        let mut xc = xc.clone();
                        let mut yc = yc.clone();
                        xc.resize(m, 0.1);
                        yc.resize(m, 0.2);
                        let x = SpatialPoint::new(xc)?;
                        let y = SpatialPoint::new(yc)?;
                        let want = kernel::full_kernel(&x, &y, &t, p, &cfg)?;
                        let got = kernel::expansion_partial_sum(&x, &y, &t, 40, p, &cfg)?;
                        worst = worst.max((got - want).norm() / want.norm());
                    }
                    Ok(worst)
                }),
            });
        }
        // oscillatory specialization at the boundary point
        let id = format!("expansion/bessel-m{m}");
        cases.push(CaseSpec {
            id,
            criterion: 5,
            parameters: format!("m={m} z in {{4,16}} theta in {{0.6,1.8}} L=60"),
            tolerance: tolerances::EXPANSION_BESSEL_REL,
            run: Box::new(move || {
                let cfg = SpecFunConfig::default();
                let nu = (m as f64 - 2.0) / 2.0;
                let mut worst: f64 = 0.0;
                for &z in &[4.0f64, 16.0] {
                    for &theta in &[0.6f64, 1.8] {
                        let lhs = bessel_j_tilde(
                            nu - 0.5,
                            Complex64::new(z.sqrt() * (theta / 2.0).cos(), 0.0),
                            &cfg,
                        )?;
                        let mut rhs = Complex64::new(0.0, 0.0);
                        for l in 0..=60usize {
                            let jt = bessel_j_tilde(
                                2.0 * nu + 2.0 * l as f64,
                                Complex64::new(z.sqrt(), 0.0),
                                &cfg,
                            )?;
                            rhs += (nu + l as f64)
                                * (-z / 4.0).powi(l as i32)
                                * jt
                                * gegenbauer_tilde(l, nu, theta.cos())?;
                        }
                        rhs *= 2f64.powf(2.0 * nu) / std::f64::consts::PI.sqrt();
                        worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1e-6));
                    }
                }
                Ok(worst)
            }),
        });
    }
    cases
}

// ---------------------------------------------------------------------
// inversion: criterion 6
// ---------------------------------------------------------------------

fn inversion_cases(opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    let quad_n = opts.quad_n.unwrap_or(400);
    for m in dims(opts, &[3, 4, 5]) {
        for l in 0..=2usize {
            let id = format!("inversion/order-m{m}l{l}");
            cases.push(CaseSpec {
                id,
                criterion: 6,
                parameters: format!("m={m} l={l} span a<=l+3 n={quad_n}"),
                tolerance: tolerances::INVERSION_ORDER_REL,
                run: Box::new(move || {
                    let p = ModelParams::new(m)?;
                    let cfg = SpecFunConfig::default();
                    let quad = gauss_laguerre_rule(quad_n, m as f64 - 2.0)?;
                    let mut f = radial::RadialQuasiPolynomial::zero();
                    for (a, &c) in (l..=l + 3).zip([1.0, -0.6, 0.4, 0.2].iter()) {
                        f = f.add(&radial::make_fal(a, l, p)?.scale(Complex64::new(c, 0.0)));
                    }
                    // T^2 via the transform evaluated on its own nodes
                    let (nodes, weights) = quadrature::radial_weights(&quad, 2.0)?;
                    let stage1 = inversion::apply_inversion_radial(&f, l, p, &quad, &nodes, &cfg)?;
                    let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
                    let grid = radial::geometric_grid(0.2, 5.0, 16);
                    let mut worst: f64 = 0.0;
                    for &r in &grid {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for ((&rp, &u), &v) in nodes.iter().zip(&weights).zip(&stage1) {
                            if u == 0.0 {
                                continue;
                            }
                            acc += u * inversion::radial_inversion_kernel(r, rp, l, p, &cfg)? * v;
                        }
                        let want = sign * f.eval(r);
                        worst = worst.max((acc - want).norm() / want.norm().max(1e-8));
                    }
                    Ok(worst)
                }),
            });
            // Plancherel on the same span
            let id = format!("inversion/plancherel-m{m}l{l}");
            cases.push(CaseSpec {
                id,
                criterion: 6,
                parameters: format!("m={m} l={l} f = f_{{l,l}} + f_{{l+2,l}}"),
                tolerance: tolerances::INVERSION_PLANCHEREL_REL,
                run: Box::new(move || {
                    let p = ModelParams::new(m)?;
                    let cfg = SpecFunConfig::default();
                    let quad = gauss_laguerre_rule(quad_n, m as f64 - 2.0)?;
                    let f = radial::make_fal(l, l, p)?.add(&radial::make_fal(l + 2, l, p)?);
                    let norm_f =
                        (radial::fal_norm_sq(l, l, p) + radial::fal_norm_sq(l + 2, l, p)).sqrt();
                    let (nodes, weights) = quadrature::radial_weights(&quad, 4.0)?;
                    let tf = inversion::apply_inversion_radial(&f, l, p, &quad, &nodes, &cfg)?;
                    let norm_tf = nodes
                        .iter()
                        .zip(&weights)
                        .zip(&tf)
                        .map(|((_, &u), v)| u * v.norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    Ok(((norm_tf - norm_f) / norm_f).abs())
                }),
            });
        }
        // phase consistency with the semigroup boundary value
        let id = format!("inversion/phase-m{m}");
        cases.push(CaseSpec {
            id,
            criterion: 6,
            parameters: format!("m={m} kernel at the boundary point"),
            tolerance: tolerances::INVERSION_ORDER_REL,
            run: Box::new(move || {
                let p = ModelParams::new(m)?;
                let cfg = SpecFunConfig::default();
                let t = ComplexTime::inversion_point();
                let mut worst: f64 = 0.0;
                for l in 0..=2usize {
                    for &(r, rp) in &[(0.6, 1.2), (1.8, 0.4)] {
                        let a = inversion::radial_inversion_kernel(r, rp, l, p, &cfg)?;
                        let b = radial::radial_kernel(r, rp, &t, l, p, &cfg)?;
                        worst = worst.max((a - b).norm() / b.norm().max(1e-30));
                    }
                }
                Ok(worst)
            }),
        });
    }
    // classical Hankel transform: involution and norm preservation
    for nu in 1u32..=3 {
        let id = format!("hankel/involution-nu{nu}");
        cases.push(CaseSpec {
            id,
            criterion: 6,
            parameters: format!("nu={nu} Gaussian profile family"),
            tolerance: tolerances::HANKEL_REL,
            run: Box::new(move || {
                let cfg = SpecFunConfig::default();
                let quad2 = gauss_laguerre_rule(200, nu as f64)?;
                let quad1 = gauss_laguerre_rule(800, nu as f64)?;
                let h = move |y: f64| {
                    Complex64::new(
                        y.powf(nu as f64 + 0.5) * (1.0 - 0.4 * y * y) * (-y * y / 2.0).exp(),
                        0.0,
                    )
                };
                let (unodes, _) = quadrature::radial_weights(&quad2, 0.35)?;
                let ys: Vec<f64> = unodes.iter().map(|&u| u.sqrt()).collect();
                let stage1 =
                    inversion::hankel_transform(&h, Decay::Gaussian { rate: 0.5 }, nu, &quad1, &ys, &cfg)?;
                let grid = radial::geometric_grid(0.1, 5.0, 40);
                let stage1_fn = move |y: f64| {
                    let idx = ys
                        .iter()
                        .position(|&v| (v - y).abs() <= 1e-12 * v.max(1.0))
                        .expect("sampled off the prepared nodes");
                    stage1[idx]
                };
                let twice = inversion::hankel_transform(
                    &stage1_fn,
                    Decay::Gaussian { rate: 0.5 },
                    nu,
                    &quad2,
                    &grid,
                    &cfg,
                )?;
                let want: Vec<Complex64> = grid.iter().map(|&x| h(x)).collect();
                Ok(rel_vec_error(&twice, &want))
            }),
        });
        let id = format!("hankel/plancherel-nu{nu}");
        cases.push(CaseSpec {
            id,
            criterion: 6,
            parameters: format!("nu={nu} norm preservation"),
            tolerance: tolerances::HANKEL_REL,
            run: Box::new(move || {
                let cfg = SpecFunConfig::default();
                let quad = gauss_laguerre_rule(700, nu as f64)?;
                let h = move |y: f64| {
                    Complex64::new(y.powf(nu as f64 + 0.5) * (2.0 - y * y) * (-y * y / 2.0).exp(), 0.0)
                };
                let norm_rule = gauss_laguerre_rule(80, -0.5)?;
                let (unodes, uweights) = quadrature::radial_weights(&norm_rule, 1.0)?;
                let xs: Vec<f64> = unodes.iter().map(|&u| u.sqrt()).collect();
                let norm_h: f64 = unodes
                    .iter()
                    .zip(&uweights)
                    .map(|(&u, &w)| 0.5 * w * h(u.sqrt()).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                let th = inversion::hankel_transform(
                    &h,
                    Decay::Gaussian { rate: 0.5 },
                    nu,
                    &quad,
                    &xs,
                    &cfg,
                )?;
                let norm_th: f64 = uweights
                    .iter()
                    .zip(&th)
                    .map(|(&w, v)| 0.5 * w * v.norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                Ok(((norm_th - norm_h) / norm_h).abs())
            }),
        });
    }
    cases
}

// ---------------------------------------------------------------------
// bruhat: criterion 7
// ---------------------------------------------------------------------

fn bruhat_cases(opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    for m in dims(opts, &[3, 5]) {
        // ten chunks of one hundred elements each
        for chunk in 0..10usize {
            let id = format!("bruhat/random-m{m}c{chunk}");
            cases.push(CaseSpec {
                id,
                criterion: 7,
                parameters: format!("m={m} 100 random elements, chunk {chunk}"),
                tolerance: tolerances::BRUHAT_RECON_ABS,
                run: Box::new(move || {
                    let p = ModelParams::new(m)?;
                    let mut state = 0x9e3779b97f4a7c15u64 ^ (chunk as u64) << 8 ^ (m as u64);
                    let mut rand = move || {
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        (state >> 11) as f64 / (1u64 << 53) as f64
                    };
                    let mut worst: f64 = 0.0;
                    for _ in 0..100 {
                        let g = loop {
                            let mut g = group::LorentzMatrix::identity(p);
                            let count = 2 + (rand() * 5.0) as usize;
                            for _ in 0..count {
                                let f = match (rand() * 5.0) as usize {
                                    0 => {
                                        let b: Vec<f64> =
                                            (0..=m).map(|_| 2.0 * rand() - 1.0).collect();
                                        group::make_nbar(&b, p)?
                                    }
                                    1 => group::exp_e(2.0 * rand() - 1.0, p),
                                    2 => group::spatial_rotation(1, 2, 6.0 * rand() - 3.0, p)?,
                                    3 => group::boost(
                                        1 + ((rand() * m as f64) as usize) % m,
                                        2.0 * rand() - 1.0,
                                        p,
                                    )?,
                                    _ => group::inversion_element(p),
                                };
                                g = g.compose(&f);
                            }
                            let probe = g.matrix().column(0)[0] + g.matrix().column(0)[m + 2]
                                - g.matrix().column(m + 2)[0]
                                - g.matrix().column(m + 2)[m + 2];
                            let scale = g.matrix().amax().max(1.0);
                            if probe.abs() > 0.05 * scale {
                                break g;
                            }
                        };
                        match group::bruhat_factor(&g, p) {
                            Ok(f) => {
                                worst = worst.max(f.reconstruction_error(&g, p)?);
                            }
                            Err(Error::InParabolic) => {
                                return Err(Error::Domain(
                                    "well-conditioned element landed in the parabolic branch".into(),
                                ))
                            }
                            Err(e) => return Err(e),
                        }
                    }
                    Ok(worst)
                }),
            });
        }
        // parabolic detection
        let id = format!("bruhat/parabolic-m{m}");
        cases.push(CaseSpec {
            id,
            criterion: 7,
            parameters: format!("m={m} dilations and translations are flagged"),
            tolerance: 0.0,
            run: Box::new(move || {
                let p = ModelParams::new(m)?;
                let probes = [
                    group::exp_e(0.8, p),
                    group::make_nbar(&vec![0.3; m + 1], p)?,
                    group::spatial_rotation(1, 2, 0.5, p)?,
                ];
                for g in &probes {
                    match group::bruhat_factor(g, p) {
                        Err(Error::InParabolic) => {}
                        Ok(_) => return Ok(f64::INFINITY),
                        Err(e) => return Err(e),
                    }
                    // and the parabolic factorization itself round-trips
                    let f = group::parabolic_factor(g, p)?;
                    let rec = group::make_nbar(&f.b, p)?
                        .compose(&group::exp_e(f.t, p))
                        .compose(&f.m_plus.scale(f.delta));
                    let err = (rec.matrix() - g.matrix()).amax();
                    if err > tolerances::BRUHAT_RECON_ABS {
                        return Ok(err);
                    }
                }
                Ok(0.0)
            }),
        });
    }
    cases
}

// ---------------------------------------------------------------------
// dirac: criterion 10
// ---------------------------------------------------------------------

fn dirac_cases(opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    let quad_n = opts.quad_n.unwrap_or(220);
    for (pidx, moment) in [0.0f64, 1.0].iter().enumerate() {
        let moment = *moment;
        let id = format!("dirac/monotone-p{pidx}");
        cases.push(CaseSpec {
            id,
            criterion: 10,
            parameters: format!("profile {pidx}, s in {{0.2, 0.1, 0.05}}"),
            tolerance: tolerances::DIRAC_MONOTONE_RATIO,
            run: Box::new(move || {
                let nu = 2u32;
                let cfg = SpecFunConfig::default();
                let quad = gauss_laguerre_rule(quad_n, -0.5)?;
                let h = move |x: f64| {
                    Complex64::new(
                        x.powf(nu as f64 + 0.5) * (1.0 + moment * x * x) * (-x * x / 2.0).exp(),
                        0.0,
                    )
                };
                let grid = radial::geometric_grid(0.1, 6.0, 60);
                let mut prev = f64::INFINITY;
                let mut worst_ratio: f64 = 0.0;
                for s in [0.2, 0.1, 0.05] {
                    let out = radial::dirac_operator(
                        &h,
                        Complex64::new(s, 0.0),
                        nu,
                        &quad,
                        &grid,
                        &cfg,
                    )?;
                    let mut diff = 0.0;
                    for (&x, o) in grid.iter().zip(&out) {
                        diff += (o - h(x)).norm_sqr();
                    }
                    let diff = diff.sqrt();
                    if prev.is_finite() {
                        worst_ratio = worst_ratio.max(diff / prev);
                    }
                    prev = diff;
                }
                Ok(worst_ratio)
            }),
        });
    }
    let id = "dirac/semigroup".to_string();
    cases.push(CaseSpec {
        id,
        criterion: 10,
        parameters: "nu=2 s1=0.25 s2=0.4".to_string(),
        tolerance: tolerances::DIRAC_SEMIGROUP_REL,
        run: Box::new(move || {
            let nu = 2u32;
            let cfg = SpecFunConfig::default();
            let quad = gauss_laguerre_rule(quad_n, -0.5)?;
            let h = |x: f64| Complex64::new(x.powf(2.5) * (-x * x / 2.0).exp(), 0.0);
            let (s1, s2) = (Complex64::new(0.25, 0.0), Complex64::new(0.4, 0.0));
            let grid = radial::geometric_grid(0.1, 6.0, 60);
            let once = radial::dirac_operator(&h, s1 + s2, nu, &quad, &grid, &cfg)?;
            let inner_nodes: Vec<f64> = {
                let (nodes, _) =
                    quadrature::radial_weights(&quad, (s2.cosh() / s2.sinh()).re / 2.0)?;
                nodes.iter().map(|&u| u.sqrt()).collect()
            };
            let stage1 = radial::dirac_operator(&h, s1, nu, &quad, &inner_nodes, &cfg)?;
            let stage1_fn = move |x: f64| {
                let idx = inner_nodes
                    .iter()
                    .position(|&n| (n - x).abs() <= 1e-12 * n.max(1.0))
                    .expect("sampled off the prepared nodes");
                stage1[idx]
            };
            let twice = radial::dirac_operator(&stage1_fn, s2, nu, &quad, &grid, &cfg)?;
            Ok(rel_vec_error(&twice, &once))
        }),
    });
    cases
}

// ---------------------------------------------------------------------
// specfun: criterion 9
// ---------------------------------------------------------------------

fn specfun_cases(_opts: &VerifyOptions) -> Vec<CaseSpec> {
    let mut cases = Vec::new();

    cases.push(CaseSpec {
        id: "specfun/laguerre-orthogonality".to_string(),
        criterion: 9,
        parameters: "alpha in 0..=3, m,n <= 6".to_string(),
        tolerance: tolerances::ORTHOGONALITY_REL,
        run: Box::new(|| {
            let mut worst: f64 = 0.0;
            for alpha_i in 0..=3usize {
                let alpha = alpha_i as f64;
                let rule = gauss_laguerre_rule(32, alpha)?;
                for mm in 0..=6usize {
                    for nn in 0..=6usize {
                        let got = rule
                            .integrate_real(|x| laguerre(mm, alpha, x) * laguerre(nn, alpha, x));
                        let want = if mm == nn {
                            gamma(alpha + nn as f64 + 1.0) / gamma(nn as f64 + 1.0)
                        } else {
                            0.0
                        };
                        let scale = gamma(alpha + nn as f64 + 1.0) / gamma(nn as f64 + 1.0);
                        worst = worst.max((got - want).abs() / scale);
                    }
                }
            }
            Ok(worst)
        }),
    });

    cases.push(CaseSpec {
        id: "specfun/gegenbauer-norms".to_string(),
        criterion: 9,
        parameters: "nu in {1/2, 1, 3/2}, l <= 6".to_string(),
        tolerance: tolerances::ORTHOGONALITY_REL,
        run: Box::new(|| {
            let mut worst: f64 = 0.0;
            for &nu in &[0.5f64, 1.0, 1.5] {
                let rule = gauss_jacobi_rule(32, nu)?;
                for l in 0..=6usize {
                    let got = rule.integrate_real(|x| {
                        let c = gegenbauer_tilde(l, nu, x).unwrap();
                        c * c
                    });
                    let want = 2f64.powf(1.0 - 2.0 * nu) * std::f64::consts::PI
                        * gamma(2.0 * nu + l as f64)
                        / (gamma(l as f64 + 1.0) * (l as f64 + nu));
                    worst = worst.max(((got - want) / want).abs());
                }
            }
            Ok(worst)
        }),
    });

    cases.push(CaseSpec {
        id: "specfun/radial-profile-norms".to_string(),
        criterion: 9,
        parameters: "m in {3,4,5}, l <= 2, a <= l+3".to_string(),
        tolerance: tolerances::ORTHOGONALITY_REL,
        run: Box::new(|| {
            let mut worst: f64 = 0.0;
            for m in [3usize, 4, 5] {
                let p = ModelParams::new(m)?;
                for l in 0..=2usize {
                    for a in l..=l + 3 {
                        let f = radial::make_fal(a, l, p)?;
                        let got = quadrature::integrate_radial(
                            |r| {
                                let v = f.eval(r);
                                v * v
                            },
                            m,
                            4.0,
                            48,
                        )?;
                        let want = radial::fal_norm_sq(a, l, p);
                        worst = worst.max((got.re - want).abs() / want);
                        // one off-diagonal pair per profile
                        let g = radial::make_fal(a + 1, l, p)?;
                        let cross = quadrature::integrate_radial(
                            |r| f.eval(r) * g.eval(r),
                            m,
                            4.0,
                            48,
                        )?;
                        worst = worst.max(cross.norm() / want);
                    }
                }
            }
            Ok(worst)
        }),
    });

    cases.push(CaseSpec {
        id: "specfun/hille-hardy".to_string(),
        criterion: 9,
        parameters: "alpha in {1,2,3}, x,y in (0,8], |w| <= 0.5".to_string(),
        tolerance: tolerances::HILLE_HARDY_REL,
        run: Box::new(|| {
            let cfg = SpecFunConfig::default();
            let mut worst: f64 = 0.0;
            for alpha_i in 1..=3usize {
                let alpha = alpha_i as f64;
                for &(x, y) in &[(0.5f64, 1.0f64), (2.0, 3.0), (5.0, 8.0)] {
                    for &w in &[-0.5f64, 0.3, 0.5] {
                        // truncation: |term_n| <= G(n+a+1)/(n! G(a+1)^2) e^{(x+y)/2} |w|^n,
                        // summed until the geometric tail bound drops below 1e-12
                        let mut lhs = 0.0;
                        let mut n = 0usize;
                        loop {
                            let term = gamma(n as f64 + 1.0) / gamma(n as f64 + alpha + 1.0)
                                * laguerre(n, alpha, x)
                                * laguerre(n, alpha, y)
                                * w.powi(n as i32);
                            lhs += term;
                            let bound = gamma(n as f64 + alpha + 2.0)
                                / (gamma(n as f64 + 2.0) * gamma(alpha + 1.0).powi(2))
                                * ((x + y) / 2.0).exp()
                                * w.abs().powi(n as i32 + 1)
                                / (1.0 - w.abs());
                            if bound < 1e-12 {
                                break;
                            }
                            n += 1;
                            if n > 4000 {
                                return Err(Error::Overflow {
                                    context: "bilinear sum truncation".into(),
                                });
                            }
                        }
                        // closed side through the entire Bessel forms
                        let arg = 2.0 * (x * y * w.abs()).sqrt() / (1.0 - w);
                        let bess = if w > 0.0 {
                            bessel_i_tilde_scaled(alpha, Complex64::new(arg, 0.0), &cfg)?
                                * arg.abs().exp()
                        } else {
                            bessel_j_tilde(alpha, Complex64::new(arg, 0.0), &cfg)?
                        };
                        let rhs = (1.0 - w).powf(-alpha - 1.0)
                            * (-(x + y) * w / (1.0 - w)).exp()
                            * bess.re;
                        worst = worst.max(((lhs - rhs) / rhs).abs());
                    }
                }
            }
            Ok(worst)
        }),
    });

    cases.push(CaseSpec {
        id: "specfun/bessel-gegenbauer-integral".to_string(),
        criterion: 9,
        parameters: "nu in {0, 1/2, 1}, l <= 3, alpha in {0.5, 1, 2}".to_string(),
        tolerance: tolerances::BESSEL_GEGENBAUER_REL,
        run: Box::new(|| {
            let cfg = SpecFunConfig::default();
            let mut worst: f64 = 0.0;
            for &nu in &[0.0f64, 0.5, 1.0] {
                let rule = gauss_jacobi_rule(64, nu + 0.5)?;
                for l in 0..=3usize {
                    for &alpha in &[0.5f64, 1.0, 2.0] {
                        // int_0^pi I_nu(a sqrt(1+cos)) C~_l^{nu+1/2}(cos)
                        //   (1+cos)^{-nu/2} sin^{2nu+1} dtheta
                        // = 2^{3/2} sqrt(pi) G(2nu+l+1) / (a^{nu+1} l!)
                        //   I_{2nu+2l+1}(sqrt2 a)
                        let got = rule.integrate(|x| {
                            let w = alpha * (1.0 + x).max(0.0).sqrt();
                            let it = specfun::bessel_i_tilde(nu, Complex64::new(w, 0.0), &cfg)
                                .unwrap();
                            // I_nu(w) (1+x)^{-nu/2} = (alpha/2)^nu I~_nu(w)
                            (alpha / 2.0).powf(nu)
                                * it
                                * gegenbauer_tilde(l, nu + 0.5, x).unwrap()
                        });
                        let want = 2f64.powf(1.5) * std::f64::consts::PI.sqrt()
                            * gamma(2.0 * nu + l as f64 + 1.0)
                            / (alpha.powf(nu + 1.0) * gamma(l as f64 + 1.0))
                            * bessel_i(
                                2.0 * nu + 2.0 * l as f64 + 1.0,
                                std::f64::consts::SQRT_2 * alpha,
                                &cfg,
                            )?;
                        worst = worst.max((got.re - want).abs() / want.abs());
                    }
                }
            }
            Ok(worst)
        }),
    });

    cases.push(CaseSpec {
        id: "specfun/gegenbauer-moment".to_string(),
        criterion: 9,
        parameters: "beta in {0,1,2}, nu in {1/2,1}, n <= 4".to_string(),
        tolerance: tolerances::GEGENBAUER_MOMENT_REL,
        run: Box::new(|| {
            // reciprocal Gamma that is zero at the poles
            let rec_gamma = |x: f64| {
                if x <= 0.0 && x == x.floor() {
                    0.0
                } else {
                    1.0 / gamma(x)
                }
            };
            let mut worst: f64 = 0.0;
            for beta_i in 0..=2usize {
                let beta = beta_i as f64;
                for &nu in &[0.5f64, 1.0] {
                    let rule = gauss_jacobi_general(24, nu - 0.5, beta)?;
                    for n in 0..=4usize {
                        let got =
                            rule.integrate_real(|x| gegenbauer_tilde(n, nu, x).unwrap());
                        let want = 2f64.powf(beta - nu + 1.5)
                            * std::f64::consts::PI.sqrt()
                            * gamma(beta + 1.0)
                            * gamma(2.0 * nu + n as f64)
                            * gamma(beta - nu + 1.5)
                            * rec_gamma(beta - nu - n as f64 + 1.5)
                            * rec_gamma(beta + nu + n as f64 + 1.5)
                            / gamma(n as f64 + 1.0);
                        worst = worst.max((got - want).abs() / want.abs().max(1.0));
                    }
                }
            }
            Ok(worst)
        }),
    });

    cases.push(CaseSpec {
        id: "specfun/bessel-bound".to_string(),
        criterion: 9,
        parameters: "nu in {-1/2..5/2}, |z| <= 30 grid".to_string(),
        tolerance: tolerances::BESSEL_BOUND_OVERSHOOT,
        run: Box::new(|| {
            let cfg = SpecFunConfig::default();
            let mut worst: f64 = 0.0;
            for &nu in &[-0.5f64, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5] {
                let c = 1.0 / gamma(nu + 1.0);
                for i in 0..=24 {
                    for j in 0..=24 {
                        let z = Complex64::new(i as f64 * 1.25, j as f64 * 1.25);
                        if z.norm() > 30.0 {
                            continue;
                        }
                        let s = bessel_i_tilde_scaled(nu, z, &cfg)?;
                        worst = worst.max(s.norm() / c - 1.0);
                    }
                }
            }
            Ok(worst.max(0.0))
        }),
    });

    cases
}

// ---------------------------------------------------------------------
// extra pieces used by the reduction suite through the kernel module
// ---------------------------------------------------------------------

/// Zonal spectrum sanity used by the CLI reduction suite: the constant
/// profile reproduces the sphere volume.
pub fn sphere_volume_check(m: usize) -> crate::Result<f64> {
    let p = ModelParams::new(m)?;
    let quad = gauss_jacobi_rule(64, (m as f64 - 2.0) / 2.0)?;
    let one = |_s: f64| Complex64::new(1.0, 0.0);
    let got = kernel::clm_spectrum(&ZonalProfile { h: &one }, 0, p, &quad)?;
    let want = 2.0 * std::f64::consts::PI.powf(m as f64 / 2.0) / gamma(m as f64 / 2.0);
    Ok((got.re - want).abs() / want)
}
