//! Matrix-level machinery for the conformal group of the Minkowski space
//! R^{m,1}: the Lie-algebra generators, the closed-form exponentials of the
//! abelian subgroups, the inversion element, and the generic factorization
//! g = nbar_b e^{tE} (delta m_+) w0 nbar_a that reduces the whole group to
//! parabolic multipliers plus one inversion integral.

mod action;
mod sl2;

pub use action::{parabolic_action, parabolic_factor, pi_apply, ConeFunction, ParabolicFactors};
pub use sl2::{apply_sl2_operator, Sl2Generator};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::radial::ModelParams;

pub const METRIC_TOLERANCE: f64 = 1e-10;
pub const PARABOLIC_TOLERANCE: f64 = 1e-12;

/// An element of O(m+1, 2): an (m+3) x (m+3) real matrix preserving
/// x_0^2 + ... + x_m^2 - x_{m+1}^2 - x_{m+2}^2.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMatrix {
    mat: DMatrix<f64>,
    m: usize,
}

/// diag(1, ..., 1, -1, -1) for signature (m+1, 2).
pub fn metric(m: usize) -> DMatrix<f64> {
    let n = m + 3;
    DMatrix::from_fn(n, n, |i, j| {
        if i != j {
            0.0
        } else if i > m {
            -1.0
        } else {
            1.0
        }
    })
}

impl LorentzMatrix {
    pub fn new(mat: DMatrix<f64>, params: ModelParams) -> Result<Self> {
        let m = params.m();
        let n = m + 3;
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::InvalidArgument(format!(
                "matrix must be {n} x {n} for m = {m}, got {} x {}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let candidate = Self { mat, m };
        let defect = candidate.metric_defect();
        if defect > METRIC_TOLERANCE {
            return Err(Error::Domain(format!(
                "matrix does not preserve the (m+1,2) form: defect {defect:.3e}"
            )));
        }
        Ok(candidate)
    }

    pub fn identity(params: ModelParams) -> Self {
        let n = params.m() + 3;
        Self { mat: DMatrix::identity(n, n), m: params.m() }
    }

    /// max |g^T J g - J| entry.
    pub fn metric_defect(&self) -> f64 {
        let j = metric(self.m);
        let probe = self.mat.transpose() * &j * &self.mat - &j;
        probe.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs()))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn compose(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix { mat: &self.mat * &other.mat, m: self.m }
    }

    /// Inverse through the metric: g^{-1} = J g^T J.
    pub fn inverse(&self) -> LorentzMatrix {
        let j = metric(self.m);
        LorentzMatrix { mat: &j * self.mat.transpose() * &j, m: self.m }
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.mat * v
    }

    pub fn scale(&self, factor: f64) -> LorentzMatrix {
        LorentzMatrix { mat: &self.mat * factor, m: self.m }
    }

    /// Whether the element fixes e_0 and e_{m+2}, i.e. lies in the
    /// stabilizer copy of O(m, 1).
    pub fn fixes_endpoints(&self, tol: f64) -> bool {
        let n = self.m + 3;
        let e0 = DVector::from_fn(n, |i, _| if i == 0 { 1.0 } else { 0.0 });
        let elast = DVector::from_fn(n, |i, _| if i == n - 1 { 1.0 } else { 0.0 });
        (self.apply(&e0) - &e0).amax() <= tol && (self.apply(&elast) - &elast).amax() <= tol
    }

    /// Whether the element additionally fixes e_{m+1}: a purely spatial
    /// rotation, the only kind the zonal grids can absorb.
    pub fn is_spatial(&self, tol: f64) -> bool {
        let n = self.m + 3;
        let emid = DVector::from_fn(n, |i, _| if i == n - 2 { 1.0 } else { 0.0 });
        self.fixes_endpoints(tol) && (self.apply(&emid) - &emid).amax() <= tol
    }
}

/// The Lie algebra generators as raw matrices.
pub struct Generators {
    /// Nbar_j, j = 1..=m+1 (abelian)
    pub nbar: Vec<DMatrix<f64>>,
    /// N_j, j = 1..=m+1 (abelian)
    pub n: Vec<DMatrix<f64>>,
    /// E = E_{0,m+2} + E_{m+2,0}
    pub e: DMatrix<f64>,
    /// The real rotation generator E_{m+2,m+1} - E_{m+1,m+2}; the
    /// imaginary-time rotation e^{i theta Z} corresponds to
    /// exp(theta * z_rot), with theta = pi giving the inversion element.
    pub z_rot: DMatrix<f64>,
    /// w0 = diag(I_{m+1}, -I_2)
    pub w0: LorentzMatrix,
}

fn epsilon(j: usize, m: usize) -> f64 {
    if j <= m {
        1.0
    } else {
        -1.0
    }
}

/// The generators; the inversion element is only a group matrix for m odd.
pub fn make_generators(params: ModelParams) -> Result<Generators> {
    let m = params.m();
    if m % 2 == 0 {
        return Err(Error::UnsupportedDimension(
            "the inversion element is only realized as a matrix for odd m".into(),
        ));
    }
    let n = m + 3;
    let mut nbar = Vec::with_capacity(m + 1);
    let mut ngen = Vec::with_capacity(m + 1);
    for j in 1..=m + 1 {
        let eps = epsilon(j, m);
        let mut nb = DMatrix::zeros(n, n);
        nb[(j, 0)] = 1.0;
        nb[(j, n - 1)] = 1.0;
        nb[(0, j)] = -eps;
        nb[(n - 1, j)] = eps;
        nbar.push(nb);
        let mut nn = DMatrix::zeros(n, n);
        nn[(j, 0)] = 1.0;
        nn[(j, n - 1)] = -1.0;
        nn[(0, j)] = -eps;
        nn[(n - 1, j)] = -eps;
        ngen.push(nn);
    }
    let mut e = DMatrix::zeros(n, n);
    e[(0, n - 1)] = 1.0;
    e[(n - 1, 0)] = 1.0;
    let mut z_rot = DMatrix::zeros(n, n);
    z_rot[(n - 1, n - 2)] = 1.0;
    z_rot[(n - 2, n - 1)] = -1.0;
    let w0 = inversion_element(params);
    Ok(Generators { nbar, n: ngen, e, z_rot, w0 })
}

/// w0 = diag(I_{m+1}, -I_2).
pub fn inversion_element(params: ModelParams) -> LorentzMatrix {
    let m = params.m();
    let n = m + 3;
    let mat = DMatrix::from_fn(n, n, |i, j| {
        if i != j {
            0.0
        } else if i > m {
            -1.0
        } else {
            1.0
        }
    });
    LorentzMatrix { mat, m }
}

/// nbar_b = exp(sum b_j Nbar_j) = I + B + B^2/2 (B is 2-step nilpotent).
pub fn make_nbar(b: &[f64], params: ModelParams) -> Result<LorentzMatrix> {
    let m = params.m();
    if b.len() != m + 1 {
        return Err(Error::InvalidArgument(format!(
            "translation parameter must have {} components, got {}",
            m + 1,
            b.len()
        )));
    }
    let n = m + 3;
    let mut big_b = DMatrix::zeros(n, n);
    for (idx, &bj) in b.iter().enumerate() {
        let j = idx + 1;
        let eps = epsilon(j, m);
        big_b[(j, 0)] += bj;
        big_b[(j, n - 1)] += bj;
        big_b[(0, j)] -= eps * bj;
        big_b[(n - 1, j)] += eps * bj;
    }
    let sq = &big_b * &big_b;
    let mat = DMatrix::identity(n, n) + &big_b + sq * 0.5;
    Ok(LorentzMatrix { mat, m })
}

/// n_a = exp(sum a_j N_j), the opposite translations.
pub fn make_n(a: &[f64], params: ModelParams) -> Result<LorentzMatrix> {
    let m = params.m();
    if a.len() != m + 1 {
        return Err(Error::InvalidArgument(format!(
            "translation parameter must have {} components, got {}",
            m + 1,
            a.len()
        )));
    }
    let n = m + 3;
    let mut big_b = DMatrix::zeros(n, n);
    for (idx, &aj) in a.iter().enumerate() {
        let j = idx + 1;
        let eps = epsilon(j, m);
        big_b[(j, 0)] += aj;
        big_b[(j, n - 1)] -= aj;
        big_b[(0, j)] -= eps * aj;
        big_b[(n - 1, j)] -= eps * aj;
    }
    let sq = &big_b * &big_b;
    let mat = DMatrix::identity(n, n) + &big_b + sq * 0.5;
    Ok(LorentzMatrix { mat, m })
}

/// e^{tE}: hyperbolic rotation in the (e_0, e_{m+2}) plane.
pub fn exp_e(t: f64, params: ModelParams) -> LorentzMatrix {
    let m = params.m();
    let n = m + 3;
    let mut mat = DMatrix::identity(n, n);
    mat[(0, 0)] = t.cosh();
    mat[(0, n - 1)] = t.sinh();
    mat[(n - 1, 0)] = t.sinh();
    mat[(n - 1, n - 1)] = t.cosh();
    LorentzMatrix { mat, m }
}

/// exp(theta (E_{m+2,m+1} - E_{m+1,m+2})): the compact rotation whose
/// theta = pi point is the inversion element.
pub fn rotation_phase(theta: f64, params: ModelParams) -> LorentzMatrix {
    let m = params.m();
    let n = m + 3;
    let mut mat = DMatrix::identity(n, n);
    mat[(n - 2, n - 2)] = theta.cos();
    mat[(n - 2, n - 1)] = -theta.sin();
    mat[(n - 1, n - 2)] = theta.sin();
    mat[(n - 1, n - 1)] = theta.cos();
    LorentzMatrix { mat, m }
}

/// A spatial rotation in the (e_i, e_j) plane, 1 <= i < j <= m: an element
/// of the O(m) part of the stabilizer.
pub fn spatial_rotation(i: usize, j: usize, theta: f64, params: ModelParams) -> Result<LorentzMatrix> {
    let m = params.m();
    if !(1 <= i && i < j && j <= m) {
        return Err(Error::InvalidArgument(format!(
            "spatial rotation plane must satisfy 1 <= i < j <= {m}, got ({i}, {j})"
        )));
    }
    let n = m + 3;
    let mut mat = DMatrix::identity(n, n);
    mat[(i, i)] = theta.cos();
    mat[(i, j)] = -theta.sin();
    mat[(j, i)] = theta.sin();
    mat[(j, j)] = theta.cos();
    Ok(LorentzMatrix { mat, m })
}

/// A boost in the (e_j, e_{m+1}) plane, 1 <= j <= m: the non-compact part
/// of the stabilizer O(m, 1).
pub fn boost(j: usize, rapidity: f64, params: ModelParams) -> Result<LorentzMatrix> {
    let m = params.m();
    if !(1 <= j && j <= m) {
        return Err(Error::InvalidArgument(format!(
            "boost axis must satisfy 1 <= j <= {m}, got {j}"
        )));
    }
    let n = m + 3;
    let mid = n - 2;
    let mut mat = DMatrix::identity(n, n);
    mat[(j, j)] = rapidity.cosh();
    mat[(j, mid)] = rapidity.sinh();
    mat[(mid, j)] = rapidity.sinh();
    mat[(mid, mid)] = rapidity.cosh();
    Ok(LorentzMatrix { mat, m })
}

/// The factors of the generic decomposition
/// g = nbar_b e^{tE} (delta m_plus) w0 nbar_a.
#[derive(Debug, Clone)]
pub struct BruhatFactors {
    pub b: Vec<f64>,
    pub t: f64,
    pub delta: f64,
    pub m_plus: LorentzMatrix,
    pub a: Vec<f64>,
}

impl BruhatFactors {
    pub fn reconstruct(&self, params: ModelParams) -> Result<LorentzMatrix> {
        let nbar_b = make_nbar(&self.b, params)?;
        let nbar_a = make_nbar(&self.a, params)?;
        let w0 = inversion_element(params);
        Ok(nbar_b
            .compose(&exp_e(self.t, params))
            .compose(&self.m_plus.scale(self.delta))
            .compose(&w0)
            .compose(&nbar_a))
    }

    pub fn reconstruction_error(&self, g: &LorentzMatrix, params: ModelParams) -> Result<f64> {
        let rec = self.reconstruct(params)?;
        Ok((rec.matrix() - g.matrix()).amax())
    }
}

fn basis_difference(m: usize) -> DVector<f64> {
    let n = m + 3;
    DVector::from_fn(n, |i, _| {
        if i == 0 {
            1.0
        } else if i == n - 1 {
            -1.0
        } else {
            0.0
        }
    })
}

/// Factors a generic group element. Elements of the parabolic subgroup
/// (detected by x_0 + x_{m+2} = 0) are reported as `Error::InParabolic`;
/// they decompose with `parabolic_factor` instead.
pub fn bruhat_factor(g: &LorentzMatrix, params: ModelParams) -> Result<BruhatFactors> {
    let m = params.m();
    if g.m() != m {
        return Err(Error::InvalidArgument("element dimension does not match the model".into()));
    }
    let n = m + 3;
    let diff = basis_difference(m);
    let x = g.apply(&diff);
    let y = g.inverse().apply(&diff);
    let s = x[0] + x[n - 1];
    if s.abs() < PARABOLIC_TOLERANCE {
        return Err(Error::InParabolic);
    }
    let s_y = y[0] + y[n - 1];
    let b: Vec<f64> = (1..=m + 1).map(|j| x[j] / s).collect();
    let a: Vec<f64> = (1..=m + 1).map(|j| -y[j] / s_y).collect();
    let delta = s.signum();
    let t = (s.abs() / 2.0).ln();
    let w0 = inversion_element(params);
    let neg_b: Vec<f64> = b.iter().map(|v| -v).collect();
    let neg_a: Vec<f64> = a.iter().map(|v| -v).collect();
    let m_plus = exp_e(-t, params)
        .compose(&make_nbar(&neg_b, params)?)
        .compose(g)
        .compose(&make_nbar(&neg_a, params)?)
        .compose(&w0)
        .scale(delta);
    if !m_plus.fixes_endpoints(METRIC_TOLERANCE * 100.0) {
        return Err(Error::Domain(
            "factorization produced a stabilizer part that moves the endpoints".into(),
        ));
    }
    Ok(BruhatFactors { b, t, delta, m_plus, a })
}
